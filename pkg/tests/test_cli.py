import csv
import io
import json
import subprocess
import sys

import pytest

from stiefelspan.cli import FORMAT_ENV, PROVENANCE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--format", "json")
    assert code == 0
    return [json.loads(line) for line in text.splitlines()]


def values(record):
    return {k: v["value"] for k, v in record["results"].items()}


class TestChi:
    def test_odd_table(self):
        code, text = run("chi", "3..19", "--odd-only", "--format", "text")
        assert code == 0
        n_row, chi_row = text.splitlines()
        assert [c.strip() for c in n_row.split("|")[1:]] == [str(n) for n in range(3, 20, 2)]
        assert [int(c) for c in chi_row.split("|")[1:]] == [1, 0, 0, 0, 1, 0, 0, 0, 0]

    def test_odd_only_json(self):
        recs = run_json("chi", "3..19", "--odd-only")
        assert [r["inputs"]["n"] for r in recs] == list(range(3, 20, 2))
        assert [values(r)["chi"] for r in recs] == [1, 0, 0, 0, 1, 0, 0, 0, 0]
        assert all(values(r)["published"] == values(r)["chi"] for r in recs)
        assert recs[0]["results"]["published"]["provenance"] == "paper-table"

    def test_single_values(self):
        assert values(run_json("chi", "4..4")[0])["chi"] == 0
        assert values(run_json("chi", "3..3")[0])["chi"] == 1
        assert values(run_json("chi", "7")[0])["chi"] == 0

    @pytest.mark.parametrize("bad", ["3..", "x..5", "9..3", "1..5", f"2..{2**20 + 1}"])
    def test_malformed_interval(self, bad):
        with pytest.raises(SystemExit) as exc:
            run("chi", bad)
        assert exc.value.code == 2

    def test_parallel_matches_serial(self):
        _, serial = run("chi", "2..200", "--format", "json")
        _, parallel = run("chi", "2..200", "--format", "json", "--jobs", "2")
        assert serial == parallel

    def test_long_text_table_wraps(self):
        code, text = run("chi", "3..101", "--odd-only", "--format", "text")
        assert code == 0
        lines = text.splitlines()
        assert len(lines) == 2 * 4  # 50 columns in blocks of 16
        assert lines[0].split("|")[1].strip() == "3"


class TestSpanReport:
    def test_14_4(self):
        (rec,) = run_json("span-report", "14", "4")
        v = values(rec)
        assert v["certified_lower"] == 38 and v["theorem_a_clause"] == "a"
        assert rec["results"]["certified_lower"]["provenance"] == "oracle"

    def test_11_2(self):
        (rec,) = run_json("span-report", "11", "2")
        v = values(rec)
        assert v["theorem_a_clause"] == "not-covered"
        assert v["certified_lower"] == 1 and v["lower_source"] == "trivial"
        assert v["k_bracket"] == [9, 13]

    def test_9_8_note(self):
        code, text = run("span-report", "9", "8", "--format", "text")
        assert code == 0
        assert "parallelizable" in text and "36" in text

    def test_5_2_exact(self):
        v = values(run_json("span-report", "5", "2")[0])
        assert v["certified_lower"] == v["sw_upper"] == v["span_exact"] == 5

    def test_x_height_forwarded(self):
        (rec,) = run_json("span-report", "14", "4", "--x-height", "14")
        assert rec["inputs"]["x_height"] == 14
        assert values(rec)["sw_upper"] == 38

    @pytest.mark.parametrize("args", [("5", "5"), ("5", "1"), ("5", "0")])
    def test_invalid_pairs(self, args, capsys):
        code, _ = run("span-report", *args)
        assert code == 2
        assert "error" in capsys.readouterr().err


class TestVerify:
    def test_all_suites(self):
        code, text = run("verify-paper", "--format", "text")
        assert code == 0
        assert text.splitlines()[-1] == "6 suites passed"

    def test_single_suite(self):
        code, text = run("verify-paper", "--suite", "chi-table", "--format", "json")
        summary = json.loads(text)
        assert code == 0
        assert [s["name"] for s in summary["suites"]] == ["chi-table"]

    def test_json_summary(self):
        code, text = run("verify-paper", "--format", "json")
        summary = json.loads(text)
        assert code == 0 and summary["passed"] and summary["suites_passed"] == 6
        assert summary["first_failure"] is None
        assert {s["name"] for s in summary["suites"]} == {
            "chi-table", "even-chi", "semichar", "lucas-stable-span", "oracle-bracket", "p5-witness",
        }

    def test_failure_exit_and_first_failure(self, tmp_path):
        sparse = tmp_path / "k.txt"
        sparse.write_text("14 4 38 only one entry\n", encoding="utf-8")
        code, text = run("verify-paper", "--suite", "p5-witness", "--suite", "lucas-stable-span",
                         "--oracle-file", str(sparse), "--format", "json")
        summary = json.loads(text)
        assert code == 1
        assert summary["first_failure"] == "lucas-stable-span"

    def test_unknown_suite(self):
        with pytest.raises(SystemExit) as exc:
            run("verify-paper", "--suite", "nope")
        assert exc.value.code == 2


class TestOutputFormats:
    COMMANDS = [
        ("chi", "2..30"),
        ("span-report", "13", "2"),
        ("span-report", "58", "51"),
        ("cohomology", "6"),
        ("semichar", "7", "2"),
        ("wu", "6"),
        ("rho", "16"),
    ]

    @pytest.mark.parametrize("cmd", COMMANDS)
    def test_json_round_trip_bytes(self, cmd):
        _, text = run(*cmd, "--format", "json")
        for line in text.splitlines():
            assert json.dumps(json.loads(line), ensure_ascii=False, separators=(",", ":")) == line

    @pytest.mark.parametrize("cmd", COMMANDS)
    def test_csv_and_json_agree(self, cmd):
        _, js = run(*cmd, "--format", "json")
        _, cs = run(*cmd, "--format", "csv")
        from_json = set()
        for line in js.splitlines():
            rec = json.loads(line)
            inputs = ";".join(f"{k}={v}" for k, v in rec["inputs"].items())
            for key, res in rec["results"].items():
                from_json.add((rec["command"], inputs, key, json.dumps(res["value"], separators=(",", ":")),
                               res["provenance"]))
        rows = list(csv.reader(io.StringIO(cs)))
        assert rows[0] == ["command", "inputs", "key", "value", "provenance"]
        assert {tuple(r) for r in rows[1:]} == from_json

    @pytest.mark.parametrize("cmd", COMMANDS)
    def test_every_result_tagged(self, cmd):
        for rec in run_json(*cmd):
            for res in rec["results"].values():
                assert set(res) == {"value", "provenance"}
                assert res["provenance"] in PROVENANCE

    def test_env_default_format(self, monkeypatch):
        monkeypatch.setenv(FORMAT_ENV, "json")
        code, text = run("rho", "16")
        assert code == 0 and json.loads(text)["results"]["rho"]["value"] == 9
        monkeypatch.setenv(FORMAT_ENV, "yaml")
        with pytest.raises(SystemExit):
            run("rho", "16")

    def test_flag_beats_env(self, monkeypatch):
        monkeypatch.setenv(FORMAT_ENV, "json")
        _, text = run("rho", "16", "--format", "text")
        assert text.startswith("rho n=16")


def test_thin_commands():
    v = values(run_json("cohomology", "6")[0])
    assert v["betti"] == [1, 1, 1, 1, 2, 2, 1, 1, 1, 1]
    assert values(run_json("semichar", "9", "3")[0])["semichar"] == 0
    (rec,) = run_json("semichar", "9", "3")
    assert rec["results"]["semichar"]["provenance"] == "theorem-asserted"
    v = values(run_json("wu", "6")[0])
    assert (v["wu_tangent"], v["wu_normal"]) == ("1 + t^2", "1 + t^2 + t^4")
    assert values(run_json("rho", "12")[0]) == {"rho": 4, "span_projective": 3}


def test_rejected_semichar_is_usage_error():
    code, _ = run("semichar", "9", "4")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stiefelspan", "chi", "11..11", "--format", "json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["results"]["chi"]["value"] == 1
