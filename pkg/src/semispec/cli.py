"""Command line driver: deterministic CSV/JSON artifacts for every experiment.

Exit codes: 0 success, 2 configuration error, 3 numeric failure.  Every run
writes a ``manifest.json`` (echoed config, tool version, wall time,
per-stage timings) next to its data artifacts.  Data artifacts themselves
are byte-identical across reruns with the same configuration.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, fields
from fractions import Fraction

import numpy as np

from . import __version__
from . import bohr_sommerfeld as bs
from . import experiments, floquet, hill
from .potential import (DegenerateWellError, Potential, builtin,
                        load_potential_file, locate_minimum)
from .spectra import _fmt as f17
from .spectra import merge

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    potential: str | None = None
    well: str | None = None
    kinetic: str = "continuous"
    mode: str = "pd"
    den: int | None = None
    q_range: str | None = None
    h_list: str | None = None
    h: str | None = None
    n1: int | None = None
    n2: int | None = None
    n_k: int = 16
    min_tol: float = 1e-9
    hill_tol: float = 1e-10
    gap_tol: float | None = None
    out_dir: str = "."
    workers: int = 0  # 0 -> SEMISPEC_WORKERS or 1
    seed: int = 0
    verify_bloch: bool = False

    def __post_init__(self):
        for name in ("min_tol", "hill_tol"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.gap_tol is not None and self.gap_tol <= 0:
            raise ConfigError("gap_tol must be positive")
        if self.workers == 0:
            self.workers = int(os.environ.get("SEMISPEC_WORKERS", "1"))
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")


_CONFIG_TYPES = {
    "potential": str, "well": str, "kinetic": str, "mode": str,
    "den": int, "q_range": str, "h_list": str, "h": str,
    "n1": int, "n2": int, "n_k": int,
    "min_tol": float, "hill_tol": float, "gap_tol": float,
    "out_dir": str, "workers": int, "seed": int,
    "verify_bloch": lambda s: s.lower() in ("1", "true", "yes"),
}


def load_config_file(path: str) -> dict:
    """Flat ``key = value`` configuration; unknown keys are hard errors."""
    out: dict = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in _CONFIG_TYPES:
                raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
            try:
                out[key] = _CONFIG_TYPES[key](value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key}") from exc
    return out


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if getattr(args, "config", None):
        values.update(load_config_file(args.config))
    for f in fields(RunConfig):
        cli_val = getattr(args, f.name, None)
        if cli_val is not None:
            values[f.name] = cli_val
    return RunConfig(**values)


def parse_rational(text: str) -> floquet.ReducedRational:
    try:
        if "/" in text:
            p, q = text.split("/", 1)
            frac = Fraction(int(p), int(q))
        else:
            frac = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational {text!r}") from exc
    if frac <= 0:
        raise ConfigError(f"h must be positive, got {text!r}")
    return floquet.ReducedRational(frac.numerator, frac.denominator)


def resolve_h_values(cfg: RunConfig, default_q_range: str | None = None
                     ) -> list[floquet.ReducedRational]:
    """h-selection: denominator sweep, explicit list, or q-range."""
    chosen = [x for x in (cfg.den, cfg.q_range, cfg.h_list) if x is not None]
    if len(chosen) > 1:
        raise ConfigError("give only one of --den / --q-range / --h-list")
    if cfg.den is not None:
        if cfg.den < 1:
            raise ConfigError("--den must be >= 1")
        out, seen = [], set()
        for p in range(1, cfg.den + 1):
            g = math.gcd(p, cfg.den)
            h = floquet.ReducedRational(p // g, cfg.den // g)
            if (h.p, h.q) not in seen:
                seen.add((h.p, h.q))
                out.append(h)
        return out
    q_range = cfg.q_range if cfg.q_range is not None else (
        default_q_range if cfg.h_list is None else None)
    if q_range is not None:
        try:
            lo_s, hi_s = q_range.split(":", 1)
            lo, hi = int(lo_s), int(hi_s)
        except ValueError as exc:
            raise ConfigError(f"bad q-range {q_range!r}; expected LO:HI") from exc
        if lo < 1 or hi < lo:
            raise ConfigError(f"empty or invalid q-range {q_range!r}")
        return [floquet.ReducedRational(1, q) for q in range(lo, hi + 1)]
    if cfg.h_list is not None:
        items = [s for s in cfg.h_list.split(",") if s.strip()]
        if not items:
            raise ConfigError("empty h list")
        return [parse_rational(s.strip()) for s in items]
    raise ConfigError("no h selection; give --den, --q-range, or --h-list")


def resolve_potential(cfg: RunConfig) -> Potential:
    if not cfg.potential:
        raise ConfigError("a potential is required (--potential NAME|FILE)")
    name = cfg.potential
    if name.lower() in ("v1", "v2", "v3", "v4", "zero", "v0"):
        return builtin(name)
    if not os.path.exists(name):
        raise ConfigError(f"potential file not found: {name}")
    try:
        return load_potential_file(name)
    except ValueError as exc:
        raise ConfigError(f"bad potential file {name}: {exc}") from exc


def _json_bytes(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _fit_dict(fit: experiments.FitResult) -> dict:
    return {"slope": fit.slope, "intercept": fit.intercept,
            "r2": fit.r2, "points_used": fit.points_used}


def _digest(rows) -> str:
    payload = "\n".join(",".join(f17(v) for v in row) for row in rows)
    return hashlib.sha256(payload.encode()).hexdigest()


# ---------------------------------------------------------------------------
# subcommands: each builds {filename: text} and returns per-stage timings


def _cmd_butterfly(cfg: RunConfig) -> dict[str, str]:
    pot = resolve_potential(cfg)
    if cfg.den is None:
        raise ConfigError("butterfly needs --den N")
    modes = ("pd", "sigma") if cfg.mode == "both" else (cfg.mode,)
    if any(m not in ("pd", "sigma") for m in modes):
        raise ConfigError(f"bad mode {cfg.mode!r}")
    artifacts: dict[str, str] = {}
    for mode in modes:
        long_rows: list[str] = []
        band_rows: list[str] = []
        for p in range(1, cfg.den + 1):
            g = math.gcd(p, cfg.den)
            h = floquet.ReducedRational(p // g, cfg.den // g)
            try:
                if mode == "pd":
                    t1s, eigs = floquet.eig_grid_pd(pot, h, 0.0, cfg.n1)
                    n1 = t1s.size
                    for i, t1 in enumerate(t1s):
                        for k in range(h.q):
                            long_rows.append(",".join(
                                [str(h.p), str(h.q), f17(h.value), f17(t1),
                                 f17(0.0), str(k), f17(eigs[i, k])]))
                    gap = cfg.gap_tol or floquet.default_gap_tol(pot, n1)
                    sample = floquet.spec_pd(pot, h, 0.0, cfg.n1)
                else:
                    t1s, t2s, eg = floquet.eig_grid_sigma(pot, h, cfg.n1, cfg.n2)
                    for i, t1 in enumerate(t1s):
                        for j, t2 in enumerate(t2s):
                            for k in range(h.q):
                                long_rows.append(",".join(
                                    [str(h.p), str(h.q), f17(h.value), f17(t1),
                                     f17(t2), str(k), f17(eg[i, j, k])]))
                    gap = cfg.gap_tol or floquet.default_gap_tol(
                        pot, t1s.size, t2s.size)
                    sample = floquet.sigma_h(pot, h, cfg.n1, cfg.n2)
                for lo, hi in merge(sample, gap).intervals:
                    band_rows.append(",".join(
                        [str(h.p), str(h.q), f17(h.value), f17(lo), f17(hi)]))
            except Exception as exc:
                raise RuntimeError(
                    f"butterfly failed at p={h.p}, q={h.q}, mode={mode}: {exc}"
                ) from exc
        header = "p,q,h,theta1,theta2,k,lambda"
        artifacts[f"butterfly_{mode}.csv"] = "\n".join([header] + long_rows) + "\n"
        artifacts[f"butterfly_{mode}_bands.csv"] = "\n".join(
            ["p,q,h,band_lo,band_hi"] + band_rows) + "\n"
    return artifacts


def _cmd_compare(cfg: RunConfig) -> dict[str, str]:
    pot = resolve_potential(cfg)
    hs = resolve_h_values(cfg, default_q_range="8:128")
    if cfg.verify_bloch:
        for h in (min(hs, key=lambda r: r.value), max(hs, key=lambda r: r.value)):
            hill.verify_bloch_minimum(pot, h.value, hill.KINETIC_CONTINUOUS,
                                      cfg.n_k)
    records = experiments.compare(pot, hs, cfg.min_tol, cfg.hill_tol,
                                  cfg.workers)
    rows = ["p,q,h,min_pd,min_sigma,min_pc,d,D"]
    for r in records:
        rows.append(",".join([str(r.p), str(r.q), f17(r.h), f17(r.min_pd),
                              f17(r.min_sigma), f17(r.min_pc), f17(r.d),
                              f17(r.big_d)]))
    fits: dict = {}
    for label, vals in (("d", [(r.h, abs(r.d - 1.0)) for r in records
                               if r.error is None]),
                        ("D", [(r.h, abs(r.big_d - 1.0)) for r in records
                               if r.error is None])):
        try:
            fit = experiments.loglog_fit([v[0] for v in vals],
                                         [v[1] for v in vals])
            fits[label] = _fit_dict(fit)
            fits[label]["inputs_digest"] = _digest(vals)
        except ValueError as exc:
            fits[label] = {"error": str(exc)}
    return {"compare.csv": "\n".join(rows) + "\n", "fits.json": _json_bytes(fits)}


def _well_from_config(cfg: RunConfig) -> tuple[str, bs.TaylorWell]:
    if cfg.well is not None:
        try:
            coeffs = [float(s) for s in cfg.well.split(",")]
        except ValueError as exc:
            raise ConfigError(f"bad --well {cfg.well!r}") from exc
        if len(coeffs) != 4:
            raise ConfigError("--well needs exactly four numbers a0,a1,a2,a3")
        return "well", bs.TaylorWell(*coeffs)
    pot = resolve_potential(cfg)
    return pot.name, bs.TaylorWell.from_well_data(locate_minimum(pot))


def _cmd_bs(cfg: RunConfig) -> dict[str, str]:
    kinetics = (bs.CONTINUOUS, bs.DISCRETE) if cfg.kinetic == "both" \
        else (cfg.kinetic,)
    if any(k not in (bs.CONTINUOUS, bs.DISCRETE) for k in kinetics):
        raise ConfigError(f"bad kinetic {cfg.kinetic!r}")
    name, well = _well_from_config(cfg)
    rows = ["potential,kinetic,a0,a1,a2,a3,alpha1,alpha2"]
    h_rows = ["potential,kinetic,h,e0,d_leading"]
    for kin in kinetics:
        a1, a2 = bs.alphas(well, kin)
        rows.append(",".join([name, kin, f17(well.a0), f17(well.a1),
                              f17(well.a2), f17(well.a3), f17(a1), f17(a2)]))
        if cfg.h is not None:
            for s in cfg.h.split(","):
                hv = float(Fraction(s.strip()) if "/" in s else Fraction(s.strip()))
                h_rows.append(",".join([name, kin, f17(hv),
                                        f17(bs.e0(well, kin, hv)),
                                        f17(bs.d_leading(well.a0, hv))]))
    out = {"bs.csv": "\n".join(rows) + "\n"}
    if cfg.h is not None:
        out["bs_h.csv"] = "\n".join(h_rows) + "\n"
    return out


def _cmd_disc(cfg: RunConfig) -> dict[str, str]:
    pot = resolve_potential(cfg)
    if cfg.h is None:
        raise ConfigError("disc needs --h (1/2 or 1)")
    report = experiments.discontinuity_report(pot, parse_rational(cfg.h))
    payload = {
        "potential": report.potential, "p": report.p, "q": report.q,
        "pd_bands": [list(b) for b in report.pd_bands],
        "sigma_bands": [list(b) for b in report.sigma_bands],
        "expected_pd": [list(b) for b in report.expected_pd],
        "expected_sigma": [list(b) for b in report.expected_sigma],
        "min_pd": report.min_pd, "min_sigma": report.min_sigma,
        "expected_min_pd": report.expected_min_pd,
        "expected_min_sigma": report.expected_min_sigma,
        "gap": report.gap, "max_error": report.max_error,
        "passed": report.passed,
    }
    if not report.passed:
        raise RuntimeError(
            f"discontinuity oracle failed: max error {report.max_error:.3e}")
    return {"disc.json": _json_bytes(payload)}


def _cmd_hausdorff(cfg: RunConfig) -> dict[str, str]:
    pot = resolve_potential(cfg)
    if cfg.den is None:
        raise ConfigError("hausdorff needs --den Q")
    rep = experiments.hoelder_check(pot, cfg.den, cfg.n1, cfg.n2, cfg.workers)
    rows = ["p,r"] + [f"{p + 1},{f17(r)}" for p, r in enumerate(rep.r)]
    summary = {"q": rep.q, "r_max": rep.r_max, "r_median": rep.r_median,
               "flagged": rep.flagged}
    return {"hoelder.csv": "\n".join(rows) + "\n",
            "hoelder.json": _json_bytes(summary)}


def _cmd_scaling(cfg: RunConfig) -> dict[str, str]:
    pot = resolve_potential(cfg)
    hs = [h.value for h in resolve_h_values(cfg, default_q_range="10:100")]
    if cfg.verify_bloch:
        for h in (min(hs), max(hs)):
            hill.verify_bloch_minimum(pot, h, cfg.kinetic, cfg.n_k)
    rows = experiments.scaling_curve(pot, cfg.kinetic, hs, cfg.hill_tol,
                                     cfg.workers)
    csv = ["potential,kinetic,h,N_final,min_eig"]
    for h, val, n in rows:
        csv.append(",".join([pot.name, cfg.kinetic, f17(h), str(n), f17(val)]))
    fit = experiments.loglog_fit([r[0] for r in rows], [r[1] for r in rows])
    fits = {"scaling": _fit_dict(fit)}
    fits["scaling"]["inputs_digest"] = _digest([(r[0], r[1]) for r in rows])
    return {"scaling.csv": "\n".join(csv) + "\n", "fits.json": _json_bytes(fits)}


def _cmd_bs_vs_spec(cfg: RunConfig) -> dict[str, str]:
    pot = resolve_potential(cfg)
    hs = resolve_h_values(cfg, default_q_range="50:100")
    if cfg.kinetic not in (bs.CONTINUOUS, bs.DISCRETE):
        raise ConfigError(f"bad kinetic {cfg.kinetic!r}")
    if cfg.verify_bloch:
        vals = [h.value for h in hs]
        hill.verify_bloch_minimum(pot, min(vals), cfg.kinetic, cfg.n_k)
        hill.verify_bloch_minimum(pot, max(vals), cfg.kinetic, cfg.n_k)
    rows = experiments.bs_vs_spec(pot, cfg.kinetic, hs,
                                  min_tol=cfg.min_tol, workers=cfg.workers)
    csv = ["potential,kinetic,h,e_spec,e_bs,diff"]
    for r in rows:
        csv.append(",".join([pot.name, cfg.kinetic, f17(r.h), f17(r.e_spec),
                             f17(r.e_bs), f17(r.diff)]))
    return {"bs_vs_spec.csv": "\n".join(csv) + "\n"}


def _cmd_props(cfg: RunConfig) -> dict[str, str]:
    """Seeded randomized spot-checks of the core structural properties."""
    rng = np.random.default_rng(cfg.seed)
    pots = [builtin(n) for n in ("v1", "v2", "v3")]
    checks: dict[str, bool] = {}

    def rand_h() -> floquet.ReducedRational:
        q = int(rng.integers(1, 9))
        choices = [p for p in range(1, q + 1) if math.gcd(p, q) == 1]
        return floquet.ReducedRational(int(rng.choice(choices)), q)

    ok_herm = ok_reflect = ok_shift = True
    for _ in range(20):
        pot = pots[int(rng.integers(len(pots)))]
        h = rand_h()
        t1, t2 = rng.uniform(0, 2 * math.pi, 2)
        m = floquet.build_m(pot, h, t1, t2)
        ok_herm &= bool(np.array_equal(m, m.conj().T))
        ev = floquet.eig_hermitian(m)
        ev_r = floquet.eig_hermitian(floquet.build_m(pot, h, -t1, t2))
        ok_reflect &= bool(np.max(np.abs(ev - ev_r)) < 1e-10)
        shift = 2 * math.pi * h.p / h.q
        ev_s1 = floquet.eig_hermitian(floquet.build_m(pot, h, t1 + shift, t2))
        ev_s2 = floquet.eig_hermitian(floquet.build_m(pot, h, t1, t2 + shift))
        ok_shift &= bool(np.max(np.abs(ev - ev_s1)) < 1e-10
                         and np.max(np.abs(ev - ev_s2)) < 1e-10)
    checks["hermiticity"] = ok_herm
    checks["theta1_reflection"] = ok_reflect
    checks["shift_covariance"] = ok_shift

    ok_mono = True
    for _ in range(4):
        pot = pots[int(rng.integers(len(pots)))]
        h = rand_h()
        ms = floquet.min_spec(pot, h, "sigma", 1e-8)
        mp = floquet.min_spec(pot, h, "pd", 1e-8)
        ok_mono &= ms <= mp + 1e-8
    checks["hull_below_fiber"] = ok_mono

    from .spectra import hausdorff
    ok_metric = True
    for _ in range(20):
        a = np.sort(rng.uniform(-5, 5, int(rng.integers(1, 40))))
        b = np.sort(rng.uniform(-5, 5, int(rng.integers(1, 40))))
        c = np.sort(rng.uniform(-5, 5, int(rng.integers(1, 40))))
        dab, dba = hausdorff(a, b), hausdorff(b, a)
        ok_metric &= abs(dab - dba) < 1e-12
        ok_metric &= hausdorff(a, a) == 0.0
        ok_metric &= dab <= hausdorff(a, c) + hausdorff(c, b) + 1e-12
    checks["hausdorff_metric"] = ok_metric

    if not all(checks.values()):
        failed = [k for k, v in checks.items() if not v]
        raise RuntimeError(f"property checks failed: {', '.join(failed)}")
    return {"props.json": _json_bytes({"seed": cfg.seed, "checks": checks})}


_SUBCOMMANDS = {
    "butterfly": _cmd_butterfly,
    "compare": _cmd_compare,
    "bs": _cmd_bs,
    "disc": _cmd_disc,
    "hausdorff": _cmd_hausdorff,
    "scaling": _cmd_scaling,
    "bs-vs-spec": _cmd_bs_vs_spec,
    "props": _cmd_props,
}

_COLUMN_DOCS = {
    "butterfly": (
        "butterfly_<mode>.csv: p,q (reduced h=p/q), h, theta1, theta2, "
        "k (eigenvalue index), lambda (eigenvalue). "
        "butterfly_<mode>_bands.csv: p,q,h,band_lo,band_hi (merged bands)."),
    "compare": (
        "compare.csv: p,q,h, min_pd (min Spec P_d), min_sigma (min hull), "
        "min_pc (min continuous), d (=min_pd/min_pc), D (=min_sigma/min_pc). "
        "fits.json: log-log fits of |d-1| and |D-1| vs h."),
    "bs": (
        "bs.csv: potential,kinetic,a0,a1,a2,a3,alpha1,alpha2. "
        "bs_h.csv (with --h): potential,kinetic,h,e0,d_leading."),
    "disc": "disc.json: computed vs closed-form bands and minima at h in {1/2, 1}.",
    "hausdorff": (
        "hoelder.csv: p, r (= Hausdorff(Sigma_{p/q}, Sigma_{(p+1)/q}) / sqrt(1/q)). "
        "hoelder.json: q, r_max, r_median, flagged."),
    "scaling": (
        "scaling.csv: potential,kinetic,h,N_final (Galerkin modes),min_eig. "
        "fits.json: log-log slope of min_eig vs h."),
    "bs-vs-spec": (
        "bs_vs_spec.csv: potential,kinetic,h, e_spec (spectral bottom), "
        "e_bs (two-term quantized energy), diff (=|e_spec-e_bs|)."),
    "props": "props.json: seeded structural property check results.",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semispec",
        description="Discrete vs continuous periodic Schrodinger spectra "
                    "in the semiclassical limit.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in _COLUMN_DOCS.items():
        p = sub.add_parser(name, description=doc,
                           help=doc.split(":")[0].replace("_", " "))
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--potential", help="builtin name (v1..v4) or file path")
        p.add_argument("--well", help="a0,a1,a2,a3 Taylor data (bs only)")
        p.add_argument("--kinetic", choices=["continuous", "discrete", "both"])
        p.add_argument("--mode", choices=["pd", "sigma", "both"])
        p.add_argument("--den", type=int, help="denominator sweep h=p/DEN")
        p.add_argument("--q-range", dest="q_range", help="LO:HI -> h=1/q")
        p.add_argument("--h-list", dest="h_list", help="comma list of rationals")
        p.add_argument("--h", help="single h (rational or decimal)")
        p.add_argument("--n1", type=int, help="theta1 grid size")
        p.add_argument("--n2", type=int, help="theta2 grid size")
        p.add_argument("--n-k", dest="n_k", type=int, help="Bloch sweep grid")
        p.add_argument("--min-tol", dest="min_tol", type=float)
        p.add_argument("--hill-tol", dest="hill_tol", type=float)
        p.add_argument("--gap-tol", dest="gap_tol", type=float)
        p.add_argument("--out-dir", dest="out_dir")
        p.add_argument("--workers", type=int,
                       help="worker count (default: SEMISPEC_WORKERS or 1)")
        p.add_argument("--seed", type=int, help="seed for props")
        p.add_argument("--verify-bloch", dest="verify_bloch",
                       action="store_const", const=True,
                       help="fail if any Bloch phase beats kappa=0")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t_start = time.perf_counter()
    try:
        cfg = resolve_config(args)
        runner = _SUBCOMMANDS[args.command]
    except ConfigError as exc:
        print(f"semispec: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    stages: dict[str, float] = {}
    try:
        t0 = time.perf_counter()
        artifacts = runner(cfg)
        stages["compute"] = time.perf_counter() - t0
    except (ConfigError, experiments.NotAnOracleError) as exc:
        print(f"semispec: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DegenerateWellError as exc:
        print(f"semispec: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (RuntimeError, ValueError, FloatingPointError) as exc:
        print(f"semispec: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    t0 = time.perf_counter()
    os.makedirs(cfg.out_dir, exist_ok=True)
    for fname, text in artifacts.items():
        with open(os.path.join(cfg.out_dir, fname), "w", encoding="utf-8",
                  newline="\n") as fh:
            fh.write(text)
    stages["write"] = time.perf_counter() - t0
    manifest = {
        "tool": "semispec",
        "version": __version__,
        "subcommand": args.command,
        "config": asdict(cfg),
        "artifacts": sorted(artifacts),
        "wall_time_s": time.perf_counter() - t_start,
        "stages": stages,
    }
    with open(os.path.join(cfg.out_dir, "manifest.json"), "w",
              encoding="utf-8", newline="\n") as fh:
        fh.write(_json_bytes(manifest))
    for fname in sorted(artifacts):
        print(f"wrote {os.path.join(cfg.out_dir, fname)}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
