import csv
import io
import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from idealtetra import cli
from idealtetra import tetra as tt
from idealtetra.errors import DomainError

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, name",
    [
        (("volume", "--rst", "0.2,0.35,0.45"), "volume_rst.json"),
        (("volume", "--seidel", "0,0.5", "--format", "csv"), "volume_seidel_corner.csv"),
        (("convert", "--rst", "0.5,0.25,0.25", "--format", "csv"), "convert_rst.csv"),
        (("sweep", "--fixed", "omega=0.4375", "--samples", "11"), "sweep_omega.csv"),
        (("sweep", "--fixed", "alpha=-0.0185185185185185", "--samples", "5", "--format", "json"), "sweep_alpha.json"),
        (("extremal", "--grid", "50"), "extremal_50.json"),
    ],
)
def test_golden(capsys, argv, name):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_deterministic(capsys):
    first = run(capsys, "verify", "roundtrip", "--seed", "7")
    second = run(capsys, "verify", "roundtrip", "--seed", "7")
    assert first == second and first[0] == 0


def test_volume_regular(capsys):
    code, out, _ = run(capsys, "volume", "--rst", "0.3333333333,0.3333333333,0.3333333334")
    assert code == 0
    (rec,) = json.loads(out)
    assert rec["volume"] == pytest.approx(1.0149416064, abs=1e-9)


def test_volume_corner_is_zero(capsys):
    code, out, _ = run(capsys, "volume", "--seidel", "0,0.5")
    (rec,) = json.loads(out)
    assert code == 0 and rec["volume"] == 0.0 and rec["theta1"] is None


def test_vertices_match_rst(capsys):
    T = tt.synthesize((1 / 3, 1 / 3, 1 / 3))
    flat = ",".join(repr(float(x)) for v in T for x in v)
    _, out_v, _ = run(capsys, "volume", "--vertices", flat)
    _, out_r, _ = run(capsys, "volume", "--rst", f"{1/3!r},{1/3!r},{1/3!r}")
    (a,), (b,) = json.loads(out_v), json.loads(out_r)
    for key in cli.RECORD_FIELDS:
        assert a[key] == pytest.approx(b[key], abs=1e-9)


def test_csv_header_and_rows(capsys):
    _, out, _ = run(capsys, "sweep", "--fixed", "omega=0.45", "--samples", "7")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == list(cli.SWEEP_FIELDS)
    assert len(rows) == 8
    vols = [float(r[2]) for r in rows[1:]]
    assert all(a > b for a, b in zip(vols, vols[1:]))


def test_sweep_endpoints(capsys):
    _, out, _ = run(capsys, "sweep", "--fixed", "omega=0.4375", "--samples", "3", "--format", "json")
    rows = json.loads(out)
    assert rows[0]["alpha"] == pytest.approx((14 - 5 * math.sqrt(10)) / 432, abs=1e-14)
    assert rows[-1]["alpha"] == 0.0
    _, out, _ = run(capsys, "sweep", "--fixed", f"alpha={-1/54!r}", "--samples", "3", "--format", "json")
    rows = json.loads(out)
    assert rows[0]["omega"] == pytest.approx((6 - math.sqrt(3)) / 12, abs=1e-12)
    assert rows[-1]["omega"] == pytest.approx(0.375, abs=1e-12)


def test_fractions_match_decimals(capsys):
    _, frac, _ = run(capsys, "sweep", "--fixed", "omega=7/16", "--samples", "11")
    assert frac == (GOLDEN / "sweep_omega.csv").read_text()
    _, a, _ = run(capsys, "volume", "--rst", "1/3,1/3,1/3")
    assert json.loads(a)[0]["volume"] == pytest.approx(1.01494160640965, abs=1e-14)


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (("sweep", "--fixed", "omega=0.6"), "misses S"),
        (("sweep", "--fixed", "alpha=0.01"), "misses S"),
        (("sweep", "--fixed", "beta=0.01"), "--fixed"),
        (("sweep", "--fixed", "omega=0.4", "--samples", "1"), "--samples"),
        (("volume", "--seidel", "-0.05,0.34"), "not in S"),
        (("volume", "--rst", "0.2,0.2,0.2"), "sum to 1"),
        (("volume", "--rst", "0.1,0.2,0.7"), "triangle inequality"),
        (("volume", "--rst", "0.1,0.2"), "expects 3"),
        (("volume", "--rst", "a,b,c"), "fractions"),
        (("volume", "--rst", "1/0,0,0"), "fractions"),
        (("volume", "--vertices", "1,1,0,0,1,1,0,0,1,-1,0,0,1,0,1,0"), "coinciding"),
        (("volume", "--vertices", "1,0,0,0,1,1,0,0,1,-1,0,0,1,0,1,0"), "not an ideal point"),
    ],
)
def test_domain_errors_exit_2(capsys, argv, fragment):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert fragment in err


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["volume"])
    assert exc.value.code == 2


def test_numerical_failure_exit_1(capsys, monkeypatch):
    from idealtetra.errors import ToleranceUnreachable

    def boom(*a, **k):
        raise ToleranceUnreachable("forced")

    monkeypatch.setattr(cli.sd, "volume", boom)
    code, _, err = run(capsys, "volume", "--rst", "0.2,0.35,0.45")
    assert code == 1 and "forced" in err


def test_verify_failure_exit_1(capsys, monkeypatch):
    rep = cli.vf.SuiteReport("fake")
    rep.add("always fails", 1, 1.0, 0.5)
    monkeypatch.setattr(cli.vf, "run", lambda suite, seed: [rep])
    code, out, _ = run(capsys, "verify", "hodge")
    assert code == 1 and out.startswith("FAIL")


def test_verify_extremal_reports_distance(capsys):
    code, out, _ = run(capsys, "verify", "extremal")
    assert code == 0
    assert "argmin distance to centre" in out


def test_verify_monotonicity_reports_margins(capsys):
    code, out, _ = run(capsys, "verify", "monotonicity", "--seed", "3")
    assert code == 0
    assert "min step" in out and "min value" in out


@pytest.mark.parametrize(
    "value, classify, arith",
    [
        (None, 1e-9, 1e-12),
        ("1e-7", 1e-7, 1e-12),
        ("classify=1e-8,arith=1e-10", 1e-8, 1e-10),
        ("arith=1e-11", 1e-9, 1e-11),
    ],
)
def test_tolerance_env(value, classify, arith):
    tol = cli.Tolerances.from_env(value)
    assert (tol.classify, tol.arith) == (classify, arith)


@pytest.mark.parametrize("value", ["bogus", "-1", "speed=3", "classify=0"])
def test_tolerance_env_rejects(value):
    with pytest.raises(DomainError):
        cli.Tolerances.from_env(value)


def test_tol_flag_loosens_classification(capsys):
    # a slightly non-null vertex passes only with a looser tolerance
    T = tt.synthesize((0.2, 0.35, 0.45))
    verts = [list(v) for v in T]
    verts[0][0] *= 1 + 1e-6
    flat = ",".join(repr(float(x)) for v in verts for x in v)
    assert run(capsys, "volume", "--vertices", flat)[0] == 2
    assert run(capsys, "volume", "--vertices", flat, "--tol", "1e-5")[0] == 0


@pytest.mark.parametrize("x, want", [(0.1, 0.1), (1 / 3, 0.333333333333333), (-0.0, 0.0), (math.nan, None), (7, 7)])
def test_format_number(x, want):
    assert cli.format_number(x) == want


def test_module_entry_point():
    env = dict(os.environ, IDEALTETRA_PURE="1")
    out = subprocess.run(
        [sys.executable, "-m", "idealtetra", "volume", "--seidel", "0,0.5", "--format", "csv"],
        capture_output=True, text=True, env=env,
    )
    assert out.returncode == 0
    assert out.stdout == (GOLDEN / "volume_seidel_corner.csv").read_text()
