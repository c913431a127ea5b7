import random

import pytest
from hypothesis import given

from conftest import series, series_pair
from oracles import list_sq, list_sq_inverse
from stiefelspan.series import NonUnitError, TruncatedSeries, TruncationError, invert, parse_series, power
from stiefelspan.steenrod import (
    SteenrodOperator,
    _sq_direct,
    _sq_inverse_direct,
    _sq_inverse_split,
    _sq_split,
    sq_inverse,
    sq_total,
    wu_from_sw,
)


def S(text, n):
    return parse_series(text, n)


def test_sq_total_examples():
    assert sq_total(S("t", 4)) == S("t + t^2", 4)
    assert sq_total(S("1 + t^2", 6)) == S("1 + t^2 + t^4", 6)
    assert sq_total(TruncatedSeries.one(5)) == TruncatedSeries.one(5)


def test_sq_inverse_examples():
    assert sq_inverse(power(S("1 + t", 6), 6)) == S("1 + t^2", 6)
    assert sq_inverse(S("1 + t", 3)) == S("1 + t + t^2", 3)
    assert sq_total(S("1 + t + t^2", 3)) == S("1 + t", 3)
    assert sq_inverse(TruncatedSeries.one(4)) == TruncatedSeries.one(4)


def test_wu_from_sw_examples():
    assert wu_from_sw(power(S("1 + t", 6), 6)) == S("1 + t^2", 6)
    assert wu_from_sw(TruncatedSeries.one(3)) == TruncatedSeries.one(3)
    with pytest.raises(NonUnitError):
        wu_from_sw(S("t", 3))


def test_wu_from_sw_matches_closed_form_to_512():
    from oracles import wu_closed_form_list

    for n in range(2, 513):
        w = power(TruncatedSeries(n, 0b11 & ((1 << n) - 1)), n)
        assert list(wu_from_sw(w).coefficients) == wu_closed_form_list(n), n


def test_operator_checks_truncation():
    op = SteenrodOperator(5)
    assert op(S("t", 5)) == S("t + t^2", 5)
    assert op.inverse(S("t + t^2", 5)) == S("t", 5)
    with pytest.raises(TruncationError):
        op(S("t", 4))


@given(series())
def test_sq_matches_monomial_rule(f):
    assert list(sq_total(f).coefficients) == list_sq(list(f.coefficients))


@given(series())
def test_sq_inverse_matches_forward_substitution_oracle(f):
    assert list(sq_inverse(f).coefficients) == list_sq_inverse(list(f.coefficients))


@given(series_pair(2))
def test_sq_is_ring_endomorphism(fg):
    f, g = fg
    assert sq_total(f * g) == sq_total(f) * sq_total(g)
    assert sq_total(f + g) == sq_total(f) + sq_total(g)


@given(series())
def test_sq_inverse_is_two_sided(f):
    assert sq_inverse(sq_total(f)) == f
    assert sq_total(sq_inverse(f)) == f


@given(series_pair(2, unit=True))
def test_wu_is_multiplicative(ws):
    w1, w2 = ws
    assert wu_from_sw(w1 * w2) == wu_from_sw(w1) * wu_from_sw(w2)


@given(series(unit=True))
def test_wu_commutes_with_inversion(w):
    assert wu_from_sw(invert(w)) == invert(wu_from_sw(w))


@pytest.mark.parametrize("n", [4097, 9000, 20011])
def test_split_kernels_match_direct(n):
    x = random.Random(n).getrandbits(n)
    assert _sq_split(x, n) == _sq_direct(x, n)
    assert _sq_inverse_split(x, n) == _sq_inverse_direct(x, n)
