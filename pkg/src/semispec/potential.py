"""Real 1-periodic potentials represented by finite Fourier data.

The convention throughout the package is

    V(x) = sum_beta w_beta exp(2*pi*i*beta*x),

with integer frequencies beta and complex amplitudes w_beta satisfying the
realness constraint w_{-beta} = conj(w_beta).  Derivatives are evaluated
analytically from the same data, so trigonometric polynomials are exact up
to round-off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class DataCorruptionError(ValueError):
    """Coefficient data violates the realness constraint."""


class TruncationFailureError(RuntimeError):
    """Fourier coefficients did not converge below the requested tolerance."""


class DegenerateWellError(RuntimeError):
    """The located minimum has no usable quadratic term."""


_REALNESS_TOL = 1e-10
_MAX_DERIVATIVE_ORDER = 8
_DEGENERATE_A0 = 1e-8


@dataclass(frozen=True)
class Potential:
    """A real 1-periodic potential given by a finite Fourier coefficient map."""

    name: str
    coeffs: dict[int, complex]
    truncation_tol: float = 1e-14

    def __post_init__(self):
        for beta, w in self.coeffs.items():
            mirror = self.coeffs.get(-beta)
            if mirror is None or abs(mirror - w.conjugate()) > _REALNESS_TOL:
                raise DataCorruptionError(
                    f"potential {self.name!r}: coefficient at beta={beta} has no "
                    f"conjugate partner at -beta (realness violated)"
                )

    @property
    def bandwidth(self) -> int:
        """Largest stored |beta| (0 for the zero potential)."""
        return max((abs(b) for b in self.coeffs), default=0)

    def eval(self, x, order: int = 0):
        """Evaluate the order-th derivative of V at x (scalar or array).

        Derivative of each mode is w_beta * (2*pi*i*beta)^order * e^{2*pi*i*beta*x}.
        The imaginary residue is checked against 1e-10 (relative to the
        derivative's natural scale) and discarded.
        """
        if order < 0 or order > _MAX_DERIVATIVE_ORDER:
            raise ValueError(f"derivative order {order} outside 0..{_MAX_DERIVATIVE_ORDER}")
        x = np.asarray(x, dtype=float)
        total = np.zeros(x.shape, dtype=complex)
        scale = 1.0
        for beta, w in self.coeffs.items():
            factor = (2j * math.pi * beta) ** order if order else 1.0
            total += w * factor * np.exp(2j * math.pi * beta * x)
            scale += abs(w) * (2.0 * math.pi * abs(beta)) ** order
        residue = float(np.max(np.abs(total.imag), initial=0.0))
        if residue > _REALNESS_TOL * scale:
            raise DataCorruptionError(
                f"potential {self.name!r}: imaginary residue {residue:.3e} "
                f"exceeds {_REALNESS_TOL * scale:.3e} at order {order}"
            )
        out = total.real
        return float(out) if out.ndim == 0 else out

    def __call__(self, x):
        return self.eval(x, 0)


@dataclass(frozen=True)
class WellData:
    """Taylor data of a potential at its global minimum.

    a[j] is the coefficient of t^(j+2) in V(x0 + t) - v_min, i.e.
    a[j] = V^(j+2)(x0) / (j+2)!.
    """

    x0: float
    v_min: float
    a: tuple[float, float, float, float]
    degenerate: bool = field(default=False)

    @property
    def a0(self) -> float:
        return self.a[0]


def fourier_coefficients(f, tol: float = 1e-14, n0: int = 64,
                         n_max: int = 2 ** 20) -> dict[int, complex]:
    """Fourier coefficients of a smooth 1-periodic real function.

    Uses a uniform-grid FFT whose size is doubled until the top quarter of
    the frequency band falls below tol (no aliasing left at that tolerance).
    Amplitudes below tol are dropped and Hermitian symmetry is enforced by
    averaging w_beta with conj(w_{-beta}).
    """
    n = n0
    while True:
        x = np.arange(n) / n
        vals = np.asarray(f(x), dtype=float)
        c = np.fft.fft(vals) / n
        freq = np.fft.fftfreq(n, d=1.0 / n).astype(int)
        tail = np.abs(c[(np.abs(freq) >= n // 4)])
        if tail.size and tail.max() < tol:
            break
        if n >= n_max:
            raise TruncationFailureError(
                f"no convergence at {n} nodes; tail mass {tail.max():.3e} >= {tol:.1e}"
            )
        n *= 2
    raw = {int(b): complex(v) for b, v in zip(freq, c)}
    out: dict[int, complex] = {}
    for beta, v in raw.items():
        w = 0.5 * (v + raw.get(-beta, 0.0).conjugate())
        if abs(w) >= tol:
            out[beta] = w
    # averaging can leave a lone member of a +-beta pair right at the cutoff
    for beta in list(out):
        out.setdefault(-beta, out[beta].conjugate())
    return out


def _v4_pointwise(x):
    x = np.asarray(x, dtype=float)
    s2 = np.sin(2.0 * math.pi * x) ** 2
    with np.errstate(divide="ignore"):
        expo = np.where(s2 > 0.0, -1.0 / np.where(s2 > 0.0, s2, 1.0), -np.inf)
    return np.exp(expo)


_BUILTIN_CACHE: dict[str, Potential] = {}


def builtin(name: str) -> Potential:
    """One of the four reference potentials v1..v4.

    v1 = 1 + cos(2 pi x)                       (non-degenerate well)
    v2 = cos^4(2 pi x)                         (quartic-degenerate wells)
    v3 = sin(4 pi x)/2 - cos(2 pi x) + 3*sqrt(3)/4   (asymmetric well)
    v4 = exp(-1/sin^2(2 pi x))                 (flat, non-analytic wells)
    """
    key = name.lower()
    if key in _BUILTIN_CACHE:
        return _BUILTIN_CACHE[key]
    if key == "v1":
        pot = Potential("v1", {0: 1.0 + 0j, 1: 0.5 + 0j, -1: 0.5 + 0j})
    elif key == "v2":
        pot = Potential("v2", {0: 0.375 + 0j, 2: 0.25 + 0j, -2: 0.25 + 0j,
                               4: 0.0625 + 0j, -4: 0.0625 + 0j})
    elif key == "v3":
        pot = Potential("v3", {0: 0.75 * math.sqrt(3.0) + 0j,
                               1: -0.5 + 0j, -1: -0.5 + 0j,
                               2: -0.25j, -2: 0.25j})
    elif key == "v4":
        # 1e-16 keeps the truncated tail's second derivative well below the
        # 1e-8 well-degeneracy threshold (the flat minima must classify as
        # degenerate despite truncation wiggle)
        pot = Potential("v4", fourier_coefficients(_v4_pointwise, tol=1e-16),
                        truncation_tol=1e-16)
    elif key in ("zero", "v0"):
        pot = Potential("zero", {})
    else:
        raise KeyError(f"unknown builtin potential {name!r}")
    _BUILTIN_CACHE[key] = pot
    return pot


def _newton_refine(pot: Potential, x0: float, step: float,
                   grad_tol: float = 1e-13, max_iter: int = 60) -> float | None:
    """Safeguarded Newton on V' inside [x0 - step, x0 + step]."""
    lo, hi = x0 - step, x0 + step
    x = x0
    for _ in range(max_iter):
        g = pot.eval(x, 1)
        if abs(g) < grad_tol:
            return x
        curv = pot.eval(x, 2)
        if curv <= 0.0:
            return None
        nxt = x - g / curv
        if not lo <= nxt <= hi:
            return None
        if abs(nxt - x) < 1e-16:
            return nxt if abs(pot.eval(nxt, 1)) < grad_tol else None
        x = nxt
    return None


def _golden_refine(pot: Potential, x0: float, step: float,
                   max_iter: int = 200) -> float:
    """Golden-section minimisation of V on [x0 - step, x0 + step]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = x0 - step, x0 + step
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = pot.eval(c), pot.eval(d)
    for _ in range(max_iter):
        if b - a < 1e-15:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = pot.eval(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = pot.eval(d)
    return 0.5 * (a + b)


def locate_minimum(pot: Potential, n_scan: int = 4096,
                   grad_tol: float = 1e-13) -> WellData:
    """Global minimum of V on [0,1) plus Taylor data of the well.

    Scans a uniform grid, refines with safeguarded Newton on V' (golden
    section as fallback), and reads the Taylor coefficients from analytic
    derivatives of orders 2..5.  The well is flagged degenerate when the
    quadratic coefficient drops below 1e-8.
    """
    xs = np.arange(n_scan) / n_scan
    vals = pot.eval(xs)
    i = int(np.argmin(vals))
    x0 = float(xs[i])
    step = 1.0 / n_scan
    if abs(pot.eval(x0, 1)) >= grad_tol:
        refined = _newton_refine(pot, x0, 2.0 * step, grad_tol)
        if refined is None:
            refined = _golden_refine(pot, x0, 2.0 * step)
        x0 = refined
    a0 = pot.eval(x0, 2) / 2.0
    degenerate = a0 < _DEGENERATE_A0
    if not degenerate and abs(pot.eval(x0, 1)) >= grad_tol:
        raise DegenerateWellError(
            f"potential {pot.name!r}: minimum refinement stalled, "
            f"|V'|={abs(pot.eval(x0, 1)):.3e}"
        )
    x0 %= 1.0
    v_min = pot.eval(x0)
    a = tuple(pot.eval(x0, k) / math.factorial(k) for k in (2, 3, 4, 5))
    return WellData(x0=x0, v_min=v_min, a=a, degenerate=degenerate)


def load_potential_file(path) -> Potential:
    """Read a potential definition file.

    The format is flat ``key = value`` text: an optional ``name`` entry,
    an optional ``truncation_tol`` entry, and one ``<beta> = [re, im]``
    entry per Fourier coefficient.
    """
    import ast
    import os

    name = os.path.splitext(os.path.basename(str(path)))[0]
    tol = 1e-14
    coeffs: dict[int, complex] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            if key == "name":
                name = value
            elif key == "truncation_tol":
                tol = float(value)
            else:
                try:
                    beta = int(key)
                    re, im = ast.literal_eval(value)
                except (ValueError, SyntaxError) as exc:
                    raise ValueError(f"{path}:{lineno}: bad entry {line!r}") from exc
                coeffs[beta] = complex(float(re), float(im))
    return Potential(name=name, coeffs=coeffs, truncation_tol=tol)


def well_frequency(well: WellData) -> float:
    """Harmonic frequency sqrt(a0) of a non-degenerate well."""
    if well.degenerate:
        raise DegenerateWellError("degenerate well has no harmonic frequency")
    return math.sqrt(well.a0)


__all__ = [
    "Potential",
    "WellData",
    "DataCorruptionError",
    "TruncationFailureError",
    "DegenerateWellError",
    "builtin",
    "fourier_coefficients",
    "locate_minimum",
    "load_potential_file",
    "well_frequency",
]
