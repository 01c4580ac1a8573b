"""Experiment drivers: ratio tables, rate fits, quantization checks.

Everything here composes the floquet / hill / bohr_sommerfeld modules into
the quantities studied numerically: the ratios d(h) and D(h), log-log
convergence fits, scaling exponents of the bottom of the spectrum,
Hausdorff continuity statistics, and closed-form discontinuity oracles at
h = 1/2 and h = 1.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import bohr_sommerfeld as bs
from . import floquet, hill
from .potential import Potential, locate_minimum
from .spectra import hausdorff, merge_intervals


class NotAnOracleError(ValueError):
    """No closed-form oracle is available for this (potential, h) pair."""


@dataclass(frozen=True)
class ComparisonRecord:
    """One row of the d(h) / D(h) experiment."""

    p: int
    q: int
    h: float
    min_pd: float
    min_sigma: float
    min_pc: float
    d: float
    big_d: float
    error: str | None = None


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r2: float
    points_used: int


def parallel_map(fn, items, workers: int = 1):
    """Order-preserving map, threaded when workers > 1.

    The eigensolvers release the GIL, so threads give real speedup while
    keeping results keyed by input order (deterministic reduction).
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def compare(pot: Potential, h_list, min_tol: float = 1e-9,
            hill_tol: float = 1e-10, workers: int = 1) -> list[ComparisonRecord]:
    """d(h) and D(h) records for a list of rational h (deduplicated).

    Failed sub-computations flag the record instead of dropping it.
    """
    hs: list[floquet.ReducedRational] = []
    seen = set()
    for h in h_list:
        if not isinstance(h, floquet.ReducedRational):
            raise TypeError("h_list entries must be ReducedRational")
        if h.value > 2.0:
            raise ValueError(f"h = {h} exceeds 2")
        if (h.p, h.q) not in seen:
            seen.add((h.p, h.q))
            hs.append(h)
    if not hs:
        raise ValueError("empty h list")

    def one(h: floquet.ReducedRational) -> ComparisonRecord:
        try:
            min_pd = floquet.min_spec(pot, h, "pd", min_tol)
            min_sigma = floquet.min_spec(pot, h, "sigma", min_tol)
            min_pc = hill.min_spec_pc(pot, h.value, hill.KINETIC_CONTINUOUS,
                                      hill_tol)
            if min_pc <= 0.0:
                return ComparisonRecord(h.p, h.q, h.value, min_pd, min_sigma,
                                        min_pc, math.nan, math.nan,
                                        error="min_pc not positive")
            return ComparisonRecord(h.p, h.q, h.value, min_pd, min_sigma,
                                    min_pc, min_pd / min_pc, min_sigma / min_pc)
        except Exception as exc:  # noqa: BLE001 - flagged, not dropped
            return ComparisonRecord(h.p, h.q, h.value, math.nan, math.nan,
                                    math.nan, math.nan, math.nan,
                                    error=f"{type(exc).__name__}: {exc}")

    return parallel_map(one, hs, workers)


def loglog_fit(xs, ys) -> FitResult:
    """Least-squares line through (log x, log y)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 3:
        raise ValueError("need at least 3 points")
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("log-log fit needs strictly positive data")
    lx, ly = np.log(xs), np.log(ys)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    return FitResult(float(slope), float(intercept), r2, int(xs.size))


def scaling_curve(pot: Potential, kinetic: str = hill.KINETIC_CONTINUOUS,
                  h_list=None, tol: float = 1e-10, workers: int = 1):
    """[(h, min_spec_pc, N_final)] over an h sweep (default 15 points in [0.01, 0.1])."""
    if h_list is None:
        h_list = np.geomspace(0.01, 0.1, 15)

    def one(h: float):
        val, n = hill.min_spec_pc(pot, float(h), kinetic, tol, return_n=True)
        return float(h), val, n

    return parallel_map(one, [float(h) for h in h_list], workers)


def scaling_exponent(pot: Potential, kinetic: str = hill.KINETIC_CONTINUOUS,
                     h_list=None, tol: float = 1e-10,
                     workers: int = 1) -> FitResult:
    """Fitted slope of log min_spec_pc against log h."""
    rows = scaling_curve(pot, kinetic, h_list, tol, workers)
    return loglog_fit([r[0] for r in rows], [r[1] for r in rows])


@dataclass(frozen=True)
class BSComparisonRow:
    h: float
    e_spec: float
    e_bs: float
    diff: float


def bs_vs_spec(pot: Potential, kinetic: str = bs.CONTINUOUS, h_list=(0.02, 0.01),
               spec_tol: float = 1e-12, min_tol: float = 1e-10,
               workers: int = 1) -> list[BSComparisonRow]:
    """Spectral bottom vs two-term quantized energy over an h sweep.

    The spectral side is the plane-wave minimum for the continuous symbol
    and the Floquet minimum of Spec(P_d(h)) for the discrete one (so
    discrete h values must be rational).
    """
    well = bs.TaylorWell.from_well_data(locate_minimum(pot))

    def one(h) -> BSComparisonRow:
        if kinetic == bs.CONTINUOUS:
            hv = h.value if isinstance(h, floquet.ReducedRational) else float(h)
            e_spec = hill.min_spec_pc(pot, hv, hill.KINETIC_CONTINUOUS, spec_tol)
        else:
            if not isinstance(h, floquet.ReducedRational):
                raise TypeError("discrete comparison needs rational h")
            hv = h.value
            e_spec = floquet.min_spec(pot, h, "pd", min_tol)
        e_bs = bs.e0(well, kinetic, hv)
        return BSComparisonRow(hv, e_spec, e_bs, abs(e_spec - e_bs))

    return parallel_map(one, list(h_list), workers)


@dataclass(frozen=True)
class HoelderReport:
    """Hausdorff increments of Sigma_h between neighbouring p/q, scaled by sqrt(1/q)."""

    q: int
    r: tuple[float, ...]
    r_max: float
    r_median: float
    flagged: bool


def hoelder_check(pot: Potential, q: int, n1: int | None = None,
                  n2: int | None = None, workers: int = 1) -> HoelderReport:
    """Empirical boundedness statistic for the 1/2-Hoelder continuity of Sigma_h."""
    if q < 2:
        raise ValueError("q must be >= 2")

    def sample(p: int):
        g = math.gcd(p, q)
        return floquet.sigma_h(pot, floquet.ReducedRational(p // g, q // g),
                               n1, n2)

    sigmas = parallel_map(sample, range(1, q + 1), workers)
    scale = math.sqrt(1.0 / q)
    r = tuple(hausdorff(sigmas[i], sigmas[i + 1]) / scale for i in range(q - 1))
    r_max = max(r)
    r_median = float(np.median(np.asarray(r)))
    flagged = r_max > 10.0 * r_median if r_median > 0 else False
    return HoelderReport(q=q, r=r, r_max=r_max, r_median=r_median, flagged=flagged)


_SQRT5 = math.sqrt(5.0)

# closed forms for the band structure at h = 1 and h = 1/2
_ORACLES = {
    ("v1", (1, 1)): {
        "pd": ((2.0, 6.0),),
        "sigma": ((0.0, 6.0),),
        "min_pd": 2.0,
        "min_sigma": 0.0,
    },
    ("v1", (1, 2)): {
        "pd": ((3.0 - _SQRT5, 2.0), (4.0, 3.0 + _SQRT5)),
        "sigma": ((3.0 - _SQRT5, 3.0 + _SQRT5),),
        "min_pd": 3.0 - _SQRT5,
        "min_sigma": 3.0 - _SQRT5,
    },
    ("v2", (1, 1)): {
        "pd": ((1.0, 5.0),),
        "sigma": ((0.0, 5.0),),
        "min_pd": 1.0,
        "min_sigma": 0.0,
    },
    ("v2", (1, 2)): {
        "pd": ((1.0, 5.0),),
        "sigma": ((0.0, 5.0),),
        "min_pd": 1.0,
        "min_sigma": 0.0,
    },
}


@dataclass(frozen=True)
class DiscontinuityReport:
    potential: str
    p: int
    q: int
    pd_bands: tuple[tuple[float, float], ...]
    sigma_bands: tuple[tuple[float, float], ...]
    expected_pd: tuple[tuple[float, float], ...]
    expected_sigma: tuple[tuple[float, float], ...]
    min_pd: float
    min_sigma: float
    expected_min_pd: float
    expected_min_sigma: float
    max_error: float
    passed: bool

    @property
    def gap(self) -> float:
        """Jump min Spec(P_d) - min Sigma_h revealed at this rational h."""
        return self.min_pd - self.min_sigma


def discontinuity_report(pot: Potential, h: floquet.ReducedRational,
                         tol: float = 1e-6) -> DiscontinuityReport:
    """Compare refined band endpoints and minima against the closed forms."""
    key = (pot.name, (h.p, h.q))
    if key not in _ORACLES:
        raise NotAnOracleError(
            f"no closed-form oracle for potential {pot.name!r} at h = {h}"
        )
    oracle = _ORACLES[key]
    pd_bands = merge_intervals(floquet.band_edges(pot, h, "pd"), gap_tol=1e-9)
    sigma_bands = merge_intervals(floquet.band_edges(pot, h, "sigma"), gap_tol=1e-9)
    min_pd = floquet.min_spec(pot, h, "pd", tol=1e-10)
    min_sigma = floquet.min_spec(pot, h, "sigma", tol=1e-10)

    errs = [abs(min_pd - oracle["min_pd"]), abs(min_sigma - oracle["min_sigma"])]
    for got, want in ((pd_bands, oracle["pd"]), (sigma_bands, oracle["sigma"])):
        if len(got) != len(want):
            errs.append(math.inf)
            continue
        for (glo, ghi), (wlo, whi) in zip(got, want):
            errs.extend([abs(glo - wlo), abs(ghi - whi)])
    max_error = max(errs)
    return DiscontinuityReport(
        potential=pot.name, p=h.p, q=h.q,
        pd_bands=pd_bands, sigma_bands=sigma_bands,
        expected_pd=oracle["pd"], expected_sigma=oracle["sigma"],
        min_pd=min_pd, min_sigma=min_sigma,
        expected_min_pd=oracle["min_pd"], expected_min_sigma=oracle["min_sigma"],
        max_error=max_error, passed=bool(max_error <= tol),
    )


__all__ = [
    "ComparisonRecord",
    "FitResult",
    "BSComparisonRow",
    "HoelderReport",
    "DiscontinuityReport",
    "NotAnOracleError",
    "parallel_map",
    "compare",
    "loglog_fit",
    "scaling_curve",
    "scaling_exponent",
    "bs_vs_spec",
    "hoelder_check",
    "discontinuity_report",
]
