"""``photonloc <verify|demo> <name>``: verification suites and demo pipelines.

Exit status is 0 when every check passes, 1 when any check fails and 2 for
usage errors (unknown names, invalid flags, infeasible grid settings).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .fieldio import write_field
from .lattice import DEFAULT_ORDER, Grid
from .localization.tails import TailFit
from .localization.wavefunction import stencil_margin
from .suites import SUITES, run_suite

DEMOS = ("footprint", "diffuse", "destroy", "coherent")
ORDERS = (0, 2, 4, 6, 8)

# per-target defaults for flags left unset
_DEFAULTS = {
    ("verify", "quad"): {},
    ("verify", "helicity"): {"n": 64, "L": 16.0},
    ("verify", "evolution"): {"n": 64, "L": 16.0, "t": (0.3, 1.1)},
    ("verify", "cook"): {"n": 128, "L": 24.0},
    ("demo", "footprint"): {"n": 128, "L": 8.0, "R": 1.0},
    ("demo", "destroy"): {"n": 128, "L": 8.0, "R": 1.0, "t": (0.0, 0.05, 0.1, 0.2)},
    ("demo", "coherent"): {"n": 128, "L": 5.0, "R": 1.0, "t": (0.0, 1.0, 1.5), "order": 8},
    ("demo", "diffuse"): {"l": 0.5, "n": 128, "L": 32.0},
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    name: str
    n: int | None = None
    L: float | None = None
    R: float | None = None
    l: float | None = None
    t: tuple | None = None
    seed: int = 0
    rel_tol: float | None = None
    out: str = "photonloc-out"
    order: int | None = None

    def resolved(self) -> "RunConfig":
        """Fill unset flags from the target's defaults, then validate."""
        d = _DEFAULTS[(self.command, self.name)]
        cfg = RunConfig(**{k: getattr(self, k) for k in ("command", "name", "seed", "rel_tol", "out")})
        for key in ("n", "L", "R", "l", "t", "order"):
            val = getattr(self, key)
            setattr(cfg, key, val if val is not None else d.get(key))
        if cfg.order is None:
            cfg.order = DEFAULT_ORDER
        cfg.validate()
        return cfg

    def grid(self) -> Grid:
        return Grid(self.n, self.L, self.order)

    def validate(self):
        if self.n is not None and (self.n < 8 or self.n % 2):
            raise UsageError(f"--n must be an even integer >= 8, got {self.n}")
        for key in ("L", "R", "l"):
            v = getattr(self, key)
            if v is not None and not v > 0:
                raise UsageError(f"--{key} must be positive, got {v}")
        if self.rel_tol is not None and not self.rel_tol > 0:
            raise UsageError("--rel-tol must be positive")
        if self.order not in ORDERS:
            raise UsageError(f"--order must be one of {ORDERS}")
        if self.t is not None and any(x < 0 for x in self.t):
            raise UsageError("--t values must be non-negative")
        if self.command == "demo" and self.name in ("footprint", "destroy", "coherent"):
            g = self.grid()
            if self.R > g.trusted_radius:
                raise UsageError(f"--R {self.R} exceeds the trusted radius L/4 = {g.trusted_radius:g}")
            if self.name != "coherent" and 2 * self.R / g.dx < 8:
                raise UsageError("region too large for grid (fewer than 8 points across R)")
            if self.R - stencil_margin(g) < 2 * g.dx:
                raise UsageError(
                    f"--R {self.R} leaves no room for the order-{self.order} stencil margin "
                    f"{stencil_margin(g):g} at dx={g.dx:g}; use a finer grid or a lower --order")
        if self.name in ("destroy", "coherent") and self.t and self.t != tuple(sorted(self.t)):
            raise UsageError("--t values must be increasing")
        if self.name == "coherent":
            g = self.grid()
            if self.R + max(self.t) > g.L / 2:
                raise UsageError("R + c t_max must not exceed half the box length")


def _float_list(text: str) -> tuple:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="photonloc", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=("verify", "demo"))
    p.add_argument("name", help=f"verify: {', '.join(SUITES)}; demo: {', '.join(DEMOS)}")
    p.add_argument("--n", type=int, help="lattice points per axis")
    p.add_argument("--L", type=float, help="box length")
    p.add_argument("--R", type=float, help="region radius")
    p.add_argument("--l", type=float, help="diffuse length scale")
    p.add_argument("--t", type=_float_list, help="comma-separated times")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rel-tol", dest="rel_tol", type=float, help="override check tolerances")
    p.add_argument("--out", default="photonloc-out", help="output directory")
    p.add_argument("--order", type=int, help="finite-difference order (0 = spectral)")
    return p


# ---------------------------------------------------------------------------


def _plain(x):
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, TailFit):
        return x.to_dict()
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def _write_json(path: Path, obj):
    path.write_text(json.dumps(obj, indent=2, default=_plain) + "\n")


def _verify(cfg: RunConfig) -> dict:
    kw = {"rel_tol": cfg.rel_tol, "seed": cfg.seed}
    if cfg.name in ("helicity", "evolution", "cook"):
        kw.update(n=cfg.n, L=cfg.L)
    if cfg.name == "evolution" and cfg.t:
        kw["t_values"] = cfg.t
    return {"checks": run_suite(cfg.name, **kw)}


def _demo(cfg: RunConfig, out: Path) -> dict:
    from .localization import demos

    if cfg.name == "footprint":
        res = demos.footprint_demo(cfg.grid(), cfg.R)
        res["profile"].to_csv(out / "e_fp_profile.csv")
        res["far_profile"].to_csv(out / "e_fp_tail.csv")
        res["tail_fit"].to_json(out / "tail_fit.json")
        extra = {"tail_fit": res["tail_fit"], "support": res["support"],
                 "lattice_vs_continuum_shape": res["lattice_vs_continuum_shape"]}
    elif cfg.name == "destroy":
        res = demos.destroy_demo(cfg.grid(), cfg.R, cfg.t)
        _write_json(out / "leakage.json", res["report"])
        extra = {"leakage": res["report"]}
    elif cfg.name == "coherent":
        res = demos.coherent_demo(cfg.grid(), cfg.R, cfg.t)
        _write_json(out / "leakage.json", [{"t": e["t"], "leakage": e["leakage"]} for e in res["report"]])
        extra = {"leakage": res["report"]}
    else:
        res = demos.diffuse_demo(cfg.l, cfg.grid())
        for name, fit in res["fits"].items():
            fit.to_json(out / f"tail_fit_{name}.json")
        for name, prof in res["tail_profiles"].items():
            prof.to_csv(out / f"{name}_tail.csv")
        for name, prof in res["profiles"].items():
            prof.to_csv(out / f"{name}_profile.csv")
        extra = {"fits": res["fits"], "grid_check": res.get("grid_check", "done")}
    for name, f in res.get("fields", {}).items():
        write_field(out / f"{name}.bbf1", f)
    return {"checks": res["checks"], **extra}


def run(cfg: RunConfig) -> int:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    body = _verify(cfg) if cfg.command == "verify" else _demo(cfg, out)
    checks = body["checks"]
    passed = all(c["pass"] for c in checks)
    config = asdict(cfg)
    _write_json(out / "report.json", {"command": cfg.command, "name": cfg.name, "config": config,
                                      "passed": passed, **body})
    for c in checks:
        print(f"{'PASS' if c['pass'] else 'FAIL'}  {c['name']}: measured {_fmt(c['measured'])}, expected {c['expected']}")
    n_ok = sum(c["pass"] for c in checks)
    print(f"{cfg.command} {cfg.name}: {n_ok}/{len(checks)} checks passed; report in {out / 'report.json'}")
    return 0 if passed else 1


def _fmt(x):
    if isinstance(x, float):
        return f"{x:.4g}"
    if isinstance(x, list):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return str(x)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    valid = SUITES if args.command == "verify" else DEMOS
    try:
        if args.name not in valid:
            raise UsageError(f"unknown {args.command} target {args.name!r}; choose from {', '.join(valid)}")
        cfg = RunConfig(**{k: v for k, v in vars(args).items()}).resolved()
    except UsageError as e:
        print(f"photonloc: error: {e}", file=sys.stderr)
        return 2
    try:
        return run(cfg)
    except ValueError as e:
        # preconditions that only show up once the grid exists
        print(f"photonloc: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
