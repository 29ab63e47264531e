import json

import pytest

from photonloc import read_field
from photonloc.cli import RunConfig, UsageError, main


def _report(path):
    return json.loads((path / "report.json").read_text())


def test_verify_quad_passes(tmp_path, capsys):
    assert main(["verify", "quad", "--out", str(tmp_path)]) == 0
    rep = _report(tmp_path)
    names = [c["name"] for c in rep["checks"]]
    for key in ("a1", "a2", "a3"):
        entry = next(c for c in rep["checks"] if c["name"].startswith(f"convolution {key} "))
        assert entry["pass"] and entry["measured"] <= 1e-4
    assert all({"name", "measured", "expected", "tolerance", "pass"} <= set(c) for c in rep["checks"])
    assert len(names) == len(set(names))
    n = len(rep["checks"])
    assert f"{n}/{n} checks passed" in capsys.readouterr().out


def test_unreachable_tolerance_fails(tmp_path, capsys):
    assert main(["verify", "quad", "--rel-tol", "1e-12", "--out", str(tmp_path)]) == 1
    assert "FAIL" in capsys.readouterr().out
    assert not _report(tmp_path)["passed"]


def test_reports_are_deterministic(tmp_path):
    main(["verify", "quad", "--seed", "3", "--out", str(tmp_path / "a")])
    main(["verify", "quad", "--seed", "3", "--out", str(tmp_path / "b")])
    a = (tmp_path / "a" / "report.json").read_text().replace(str(tmp_path / "a"), "")
    b = (tmp_path / "b" / "report.json").read_text().replace(str(tmp_path / "b"), "")
    assert a == b


@pytest.mark.parametrize("argv", [
    ["verify", "nonsense"],
    ["demo", "nonsense"],
    ["launch", "quad"],
    ["verify"],
    ["verify", "helicity", "--n", "7"],
    ["demo", "diffuse", "--l", "-1"],
    ["demo", "destroy", "--t", "0,a"],
    ["demo", "destroy", "--t", "0.2,0.1"],
    ["demo", "footprint", "--R", "5"],
    ["demo", "footprint", "--order", "3"],
])
def test_usage_errors_exit_2(tmp_path, argv):
    assert main(argv + ["--out", str(tmp_path)]) == 2


def test_help_exits_0(capsys):
    assert main(["--help"]) == 0
    assert "verify" in capsys.readouterr().out


def test_config_validation_before_compute():
    with pytest.raises(UsageError, match="stencil margin"):
        RunConfig("demo", "footprint", n=128, L=32.0, R=1.0).resolved()
    cfg = RunConfig("demo", "coherent").resolved()
    assert (cfg.n, cfg.L, cfg.order) == (128, 5.0, 8)


def test_demo_diffuse(tmp_path):
    assert main(["demo", "diffuse", "--l", "0.5", "--n", "128", "--L", "32", "--out", str(tmp_path)]) == 0
    for name in ("psi_D", "chi_psi_D"):
        fit = json.loads((tmp_path / f"tail_fit_{name}.json").read_text())
        assert fit["model"] == "sqrt_exp"
        assert abs(fit["p_or_l"] - 0.5) <= 0.02 * 0.5
        assert (tmp_path / f"{name}_tail.csv").read_text().startswith("r,amplitude")


def test_demo_footprint_coarse_grid(tmp_path):
    # order 4 cannot fit its stencil margin inside R=1 at dx=0.25; order 2 can
    assert main(["demo", "footprint", "--R", "1", "--n", "128", "--L", "32", "--out", str(tmp_path)]) == 2
    code = main(["demo", "footprint", "--R", "1", "--n", "128", "--L", "32", "--order", "2", "--out", str(tmp_path)])
    rep = _report(tmp_path)
    checks = {c["name"]: c for c in rep["checks"]}
    assert checks["magnetic localization: b_fp exterior leakage"]["measured"] <= 1e-10
    assert checks["magnetic localization: e_fp exterior leakage"]["measured"] >= 1e-2
    assert code == (0 if rep["passed"] else 1)
    assert read_field(tmp_path / "b_fp.bbf1").grid.n == 128
    assert (tmp_path / "e_fp_profile.csv").exists() and (tmp_path / "tail_fit.json").exists()


def test_demo_destroy(tmp_path):
    assert main(["demo", "destroy", "--R", "1", "--t", "0,0.05,0.1", "--out", str(tmp_path)]) == 0
    leak = json.loads((tmp_path / "leakage.json").read_text())
    values = [e["leakage"] for e in leak]
    assert values[0] <= 1e-10 and all(b > a for a, b in zip(values, values[1:]))
    assert [e["t"] for e in leak] == [0.0, 0.05, 0.1]
