"""Exact GF(2) characteristic-class computations and span bounds for projective Stiefel manifolds."""

from .bounds import (
    Clause,
    KOracle,
    KOracleEntry,
    SpanReport,
    browder_dupont_flags,
    james_thomas,
    k_bracket,
    k_oracle,
    span_report,
    theorem_a_clause,
    trivial_lower,
)
from .projective import (
    ChiResult,
    ProjSpaceClasses,
    RouteDisagreementError,
    chi,
    condition_s,
    projective_space_classes,
    radon_hurwitz,
    span_projective,
    sw_hopf_multiple,
    wu_tangent_closed_form,
)
from .series import (
    NonUnitError,
    TruncatedSeries,
    TruncationError,
    add,
    binomial_parity,
    invert,
    mul,
    parse_series,
    power,
)
from .steenrod import SteenrodOperator, sq_inverse, sq_total, wu_from_sw
from .stiefel import (
    CohomologyModel,
    ManifoldDescriptor,
    cohomology_model,
    dimension,
    semicharacteristic,
    sw_tangent,
)

__version__ = "0.1.0"
