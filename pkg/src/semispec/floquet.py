"""Bloch-Floquet reduction of the discrete operator at rational h = p/q.

For h = p/q in lowest terms the discrete Schrodinger operator decomposes
into q x q Hermitian fibers

    M(theta1, theta2) = 2 I - e^{-i theta1} K* - e^{i theta1} K + diag(V_j),
    V_j = V(j p / q + theta2 / (2 pi)),   j = 0..q-1,

with K the cyclic shift.  Unions of fiber spectra over theta grids give
Spec(P_d(h)) (theta2 = 0) and the hull spectrum Sigma_h (both thetas);
their minima are refined below grid resolution by golden-section search.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .potential import Potential
from .spectra import SampleMeta, SpectrumSample

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ReducedRational:
    """h = p/q in lowest terms, p >= 1, q >= 1."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("denominator must be >= 1")
        if self.p < 1:
            raise ValueError("numerator must be >= 1")
        g = math.gcd(self.p, self.q)
        if g > 1:
            warnings.warn(
                f"{self.p}/{self.q} is not in lowest terms; reducing to "
                f"{self.p // g}/{self.q // g}",
                stacklevel=2,
            )
            object.__setattr__(self, "p", self.p // g)
            object.__setattr__(self, "q", self.q // g)

    @property
    def value(self) -> float:
        return self.p / self.q

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def _diagonal(pot: Potential, h: ReducedRational, theta2: float) -> np.ndarray:
    x = np.arange(h.q) * (h.p / h.q) + theta2 / _TWO_PI
    return np.atleast_1d(pot.eval(x))


def build_m(pot: Potential, h: ReducedRational, theta1: float,
            theta2: float = 0.0) -> np.ndarray:
    """The q x q fiber matrix M(theta1, theta2); exactly Hermitian."""
    q = h.q
    idx = np.arange(q)
    m = np.zeros((q, q), dtype=complex)
    m[idx, idx] = 2.0 + _diagonal(pot, h, theta2)
    hop = -np.exp(1j * theta1)
    m[idx, (idx + 1) % q] += hop
    m[(idx + 1) % q, idx] += np.conj(hop)
    return m


def eig_hermitian(m: np.ndarray) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending."""
    m = np.asarray(m)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return np.linalg.eigvalsh(m)


def _eig_stack(pot: Potential, h: ReducedRational, theta1s: np.ndarray,
               theta2: float, chunk: int = 0) -> np.ndarray:
    """Eigenvalues of M(theta1, theta2) for a vector of theta1; shape (n, q)."""
    q = h.q
    n = theta1s.size
    if chunk <= 0:
        chunk = max(1, (1 << 22) // (q * q))
    idx = np.arange(q)
    diag = 2.0 + _diagonal(pot, h, theta2)
    out = np.empty((n, q))
    for start in range(0, n, chunk):
        t = theta1s[start:start + chunk]
        ms = np.zeros((t.size, q, q), dtype=complex)
        ms[:, idx, idx] = diag
        hop = -np.exp(1j * t)
        ms[:, idx, (idx + 1) % q] += hop[:, None]
        ms[:, (idx + 1) % q, idx] += np.conj(hop)[:, None]
        out[start:start + chunk] = np.linalg.eigvalsh(ms)
    return out


def default_n1(q: int) -> int:
    return max(64, 8 * q)


def default_n2(q: int) -> int:
    return 32


def lipschitz_bounds(pot: Potential) -> tuple[float, float]:
    """(L1, L2): eigenvalue Lipschitz constants in theta1 and theta2.

    By Weyl perturbation eigenvalues move at most ||dM||: the hopping term
    gives L1 = 2 and the diagonal gives L2 = sum_beta 2 pi |beta| |w_beta|.
    """
    l2 = sum(_TWO_PI * abs(b) * abs(w) for b, w in pot.coeffs.items())
    return 2.0, l2


def default_gap_tol(pot: Potential, n1: int, n2: int | None = None) -> float:
    """Merging tolerance matched to the theta-grid resolution."""
    l1, l2 = lipschitz_bounds(pot)
    g = 2.0 * l1 * _TWO_PI / n1
    if n2 is not None:
        g += 2.0 * l2 * _TWO_PI / n2
    return max(g, 1e-12)


def eig_grid_pd(pot: Potential, h: ReducedRational, theta2: float = 0.0,
                n1: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(theta1 grid, eigenvalue array of shape (n1, q)) for fixed theta2."""
    if n1 is None:
        n1 = default_n1(h.q)
    if n1 < 2:
        raise ValueError("n1 must be >= 2")
    theta1s = _TWO_PI * np.arange(n1) / n1
    return theta1s, _eig_stack(pot, h, theta1s, theta2)


def spec_pd(pot: Potential, h: ReducedRational, theta2: float = 0.0,
            n1: int | None = None) -> SpectrumSample:
    """Sampled Spec(P_d(h, theta2/2pi)): union of fiber spectra over theta1."""
    theta1s, eigs = eig_grid_pd(pot, h, theta2, n1)
    meta = SampleMeta(p=h.p, q=h.q, n1=theta1s.size, n2=None, theta2=theta2)
    return SpectrumSample(values=np.sort(eigs.ravel()), meta=meta)


def eig_grid_sigma(pot: Potential, h: ReducedRational, n1: int | None = None,
                   n2: int | None = None):
    """(theta1 grid, theta2 grid, eigenvalues (n1, n2, q)) over the torus.

    theta2 runs over one period 2 pi / q only: conjugation by the cyclic
    shift K makes fiber spectra 2 pi p / q-periodic in theta2, and with
    gcd(p, q) = 1 those shifts generate all multiples of 2 pi / q.
    """
    q = h.q
    if n1 is None:
        n1 = default_n1(q)
    if n2 is None:
        n2 = default_n2(q)
    if n1 < 2 or n2 < 2:
        raise ValueError("n1 and n2 must be >= 2")
    theta1s = _TWO_PI * np.arange(n1) / n1
    theta2s = (_TWO_PI / q) * np.arange(n2) / n2
    eigs = np.empty((n1, n2, q))
    for j, t2 in enumerate(theta2s):
        eigs[:, j, :] = _eig_stack(pot, h, theta1s, float(t2))
    return theta1s, theta2s, eigs


def sigma_h(pot: Potential, h: ReducedRational, n1: int | None = None,
            n2: int | None = None) -> SpectrumSample:
    """Sampled hull spectrum Sigma_h: union over the (theta1, theta2) grid."""
    theta1s, theta2s, eigs = eig_grid_sigma(pot, h, n1, n2)
    meta = SampleMeta(p=h.p, q=h.q, n1=theta1s.size, n2=theta2s.size, theta2=None)
    return SpectrumSample(values=np.sort(eigs.ravel()), meta=meta)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_min(f, a: float, b: float, xtol: float = 1e-11,
                max_iter: int = 200) -> tuple[float, float]:
    """Golden-section minimum of f on [a, b]; returns (x, f(x))."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a < xtol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    if fc < fd:
        return c, fc
    return d, fd


def _refine_1d(f, xs: np.ndarray, vals: np.ndarray, xtol: float = 1e-11):
    """Golden-refine the grid argmin of f; xs must be an ascending grid."""
    i = int(np.argmin(vals))
    spacing = xs[1] - xs[0] if xs.size > 1 else 1.0
    x, fx = _golden_min(f, xs[i] - spacing, xs[i] + spacing, xtol=xtol)
    if vals[i] < fx:
        return float(xs[i]), float(vals[i])
    return float(x), float(fx)


def min_spec(pot: Potential, h: ReducedRational, mode: str = "pd",
             tol: float = 1e-8) -> float:
    """Minimum of Spec(P_d(h)) (mode 'pd') or of Sigma_h (mode 'sigma').

    A coarse grid over the symmetry-reduced theta domain is refined by
    golden-section search in each theta coordinate until the lowest
    eigenvalue changes by less than tol.  The theta1 domain shrinks to
    [0, pi/q] (realness symmetry plus the 2 pi p / q shift covariance);
    theta2 keeps a full period 2 pi / q since asymmetric potentials have
    no theta2 reflection symmetry.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    q = h.q
    if mode == "pd":
        def f(t1: float) -> float:
            return float(np.linalg.eigvalsh(build_m(pot, h, t1, 0.0))[0])

        n = 17
        xs = np.linspace(0.0, math.pi / q, n)
        vals = _eig_stack(pot, h, xs, 0.0)[:, 0]
        _, best = _refine_1d(f, xs, vals)
        return best
    if mode != "sigma":
        raise ValueError(f"unknown mode {mode!r}")

    def f2(t1: float, t2: float) -> float:
        return float(np.linalg.eigvalsh(build_m(pot, h, t1, t2))[0])

    n1c, n2c = 13, 25
    t1s = np.linspace(0.0, math.pi / q, n1c)
    t2s = (_TWO_PI / q) * np.arange(n2c) / n2c
    grid = np.empty((n1c, n2c))
    for j, t2 in enumerate(t2s):
        grid[:, j] = _eig_stack(pot, h, t1s, float(t2))[:, 0]
    i, j = np.unravel_index(np.argmin(grid), grid.shape)
    x1, x2 = float(t1s[i]), float(t2s[j])
    best = float(grid[i, j])
    s1 = float(t1s[1] - t1s[0])
    s2 = float(t2s[1] - t2s[0])
    for _ in range(12):
        x1, b1 = _golden_min(lambda t: f2(t, x2), x1 - s1, x1 + s1)
        x2, b2 = _golden_min(lambda t: f2(x1, t), x2 - s2, x2 + s2)
        improved = best - min(b1, b2)
        best = min(best, b1, b2)
        s1 *= 0.5
        s2 *= 0.5
        if improved < tol:
            break
    return best


def band_edges(pot: Potential, h: ReducedRational, mode: str = "pd",
               theta2: float = 0.0, n_coarse: int = 64,
               xtol: float = 1e-11) -> list[tuple[float, float]]:
    """Refined [min, max] of each sorted-index band function over theta.

    Bands are the ranges of the k-th sorted eigenvalue; each extremum is
    polished by golden-section search below grid resolution.
    """
    q = h.q
    if mode == "pd":
        xs = np.linspace(0.0, _TWO_PI / q, n_coarse)
        eigs = _eig_stack(pot, h, xs, theta2)
        out = []
        for k in range(q):
            def fk(t: float, k=k) -> float:
                return float(np.linalg.eigvalsh(build_m(pot, h, t, theta2))[k])

            _, lo = _refine_1d(fk, xs, eigs[:, k], xtol=xtol)
            _, hi_neg = _refine_1d(lambda t, k=k: -fk(t, k), xs, -eigs[:, k], xtol=xtol)
            out.append((lo, -hi_neg))
        return out
    if mode != "sigma":
        raise ValueError(f"unknown mode {mode!r}")
    n2c = max(16, n_coarse // 2)
    t1s = np.linspace(0.0, _TWO_PI / q, n_coarse)
    t2s = np.linspace(0.0, _TWO_PI / q, n2c)
    eigs = np.empty((n_coarse, n2c, q))
    for j, t2 in enumerate(t2s):
        eigs[:, j, :] = _eig_stack(pot, h, t1s, float(t2))
    s1 = float(t1s[1] - t1s[0])
    s2 = float(t2s[1] - t2s[0])
    out = []
    for k in range(q):
        def fk(t1: float, t2: float, k=k) -> float:
            return float(np.linalg.eigvalsh(build_m(pot, h, t1, t2))[k])

        lo = _extremize_2d(fk, eigs[:, :, k], t1s, t2s, s1, s2)
        hi = -_extremize_2d(lambda a, b, k=k: -fk(a, b, k), -eigs[:, :, k],
                            t1s, t2s, s1, s2)
        out.append((lo, hi))
    return out


def _extremize_2d(f, grid, t1s, t2s, s1, s2, rounds: int = 8) -> float:
    i, j = np.unravel_index(np.argmin(grid), grid.shape)
    x1, x2 = float(t1s[i]), float(t2s[j])
    best = float(grid[i, j])
    for _ in range(rounds):
        x1, b1 = _golden_min(lambda t: f(t, x2), x1 - s1, x1 + s1)
        x2, b2 = _golden_min(lambda t: f(x1, t), x2 - s2, x2 + s2)
        new = min(b1, b2)
        if best - new < 1e-13:
            best = min(best, new)
            break
        best = min(best, new)
        s1 *= 0.5
        s2 *= 0.5
    return best


@dataclass(frozen=True)
class ButterflyRecord:
    h: ReducedRational
    pd: SpectrumSample | None
    sigma: SpectrumSample | None


def _reduced(p: int, q: int) -> ReducedRational:
    g = math.gcd(p, q)
    return ReducedRational(p // g, q // g)


def butterfly(pot: Potential, denominator: int | None = None,
              q_max: int | None = None, mode: str = "pd",
              n1: int | None = None, n2: int | None = None):
    """Stream butterfly columns (h, spectra) in deterministic order.

    Either a fixed-denominator sweep h = p/den, p = 1..den (reducible p
    are reduced silently), or all reduced p/q with q <= q_max in (q, p)
    order.  mode is 'pd', 'sigma', or 'both'.
    """
    if (denominator is None) == (q_max is None):
        raise ValueError("specify exactly one of denominator / q_max")
    if mode not in ("pd", "sigma", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    if denominator is not None:
        if denominator < 1:
            raise ValueError("denominator must be >= 1")
        hs = [_reduced(p, denominator) for p in range(1, denominator + 1)]
    else:
        if q_max < 1:
            raise ValueError("q_max must be >= 1")
        hs = [ReducedRational(p, q) for q in range(1, q_max + 1)
              for p in range(1, q + 1) if math.gcd(p, q) == 1]
    for h in hs:
        pd = spec_pd(pot, h, 0.0, n1) if mode in ("pd", "both") else None
        sig = sigma_h(pot, h, n1, n2) if mode in ("sigma", "both") else None
        yield ButterflyRecord(h=h, pd=pd, sigma=sig)


__all__ = [
    "ReducedRational",
    "ButterflyRecord",
    "build_m",
    "eig_hermitian",
    "eig_grid_pd",
    "eig_grid_sigma",
    "spec_pd",
    "sigma_h",
    "min_spec",
    "band_edges",
    "butterfly",
    "lipschitz_bounds",
    "default_gap_tol",
    "default_n1",
    "default_n2",
]
