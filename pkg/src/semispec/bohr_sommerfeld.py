"""Two-term quantization data for a non-degenerate potential well.

Given Taylor data V(t) = a0 t^2 + a1 t^3 + a2 t^4 + a3 t^5 + ... with
a0 > 0, this module inverts V(x(y)) = y^2 as a formal power series,
expands 2y / V'(x(y)) and V''(x(y)), and assembles the action expansions

    S0(E) = pi a0^{-1/2} E + pi alpha1 E^2 + O(E^3),
    S2(E) = pi alpha2 + O(E),

for both kinetic symbols xi^2 and 2(1 - cos xi).  The quantization rule
2 pi (n + 1/2) h = S0(E) + h^2 S2(E) then yields the two-term ground
energy E0(h) and the leading discrete/continuous ratio 1 - sqrt(a0) h / 16.

All series coefficients are produced by a generic truncated-polynomial
pipeline; the closed-form expressions are kept alongside as independent
goldens (*_golden) and the two must agree to 1e-12.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .potential import DegenerateWellError, WellData

CONTINUOUS = "continuous"
DISCRETE = "discrete"
_KINETICS = (CONTINUOUS, DISCRETE)


@dataclass(frozen=True)
class TaylorWell:
    """Taylor coefficients of the well: V(t) = a0 t^2 + a1 t^3 + a2 t^4 + a3 t^5."""

    a0: float
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0

    def __post_init__(self):
        if not self.a0 > 0:
            raise DegenerateWellError(f"well requires a0 > 0, got a0={self.a0}")

    @classmethod
    def from_well_data(cls, well: WellData) -> "TaylorWell":
        if well.degenerate:
            raise DegenerateWellError(
                "degenerate well: two-term quantization data is not defined"
            )
        return cls(*well.a)


# -- truncated power series helpers (coefficient arrays c[0..K]) --------------

def _ps_mul(a: np.ndarray, b: np.ndarray, k: int) -> np.ndarray:
    return np.convolve(a, b)[: k + 1]


def _ps_compose(outer: np.ndarray, inner: np.ndarray, k: int) -> np.ndarray:
    """outer(inner(y)) truncated at degree k; requires inner[0] == 0."""
    if inner[0] != 0.0:
        raise ValueError("composition requires inner constant term 0")
    out = np.zeros(k + 1)
    out[0] = outer[-1]
    for coeff in outer[-2::-1]:
        out = _ps_mul(out, inner[: k + 1], k)
        out[0] += coeff
    return out


def _ps_recip(a: np.ndarray, k: int) -> np.ndarray:
    """1 / a(y) truncated at degree k; requires a[0] != 0."""
    if a[0] == 0.0:
        raise ValueError("reciprocal requires nonzero constant term")
    out = np.zeros(k + 1)
    out[0] = 1.0 / a[0]
    for n in range(1, k + 1):
        acc = sum(a[j] * out[n - j] for j in range(1, min(n, a.size - 1) + 1))
        out[n] = -acc / a[0]
    return out


def _v_poly(well: TaylorWell) -> np.ndarray:
    return np.array([0.0, 0.0, well.a0, well.a1, well.a2, well.a3])


def invert_series(well: TaylorWell, order: int = 4) -> tuple[float, ...]:
    """Coefficients (beta_1..beta_order) of the positive branch x(y).

    x(y) solves V(x(y)) = y^2 + O(y^(order+2)) and is built by eliminating
    one excess coefficient of V(x_m(y)) at a time: appending beta_{m+1} y^{m+1}
    changes the y^{m+2} coefficient by 2 a0 beta_1 beta_{m+1}, so the excess
    c_{m+2} is removed by beta_{m+1} = -c_{m+2} / (2 sqrt(a0)).
    """
    if order < 1 or order > 6:
        raise ValueError("order must be in 1..6")
    v = _v_poly(well)
    beta1 = well.a0 ** -0.5
    x = np.zeros(order + 1)
    x[1] = beta1
    for m in range(1, order):
        comp = _ps_compose(v, x, m + 2)
        x[m + 1] = -comp[m + 2] / (2.0 * math.sqrt(well.a0))
    return tuple(x[1:])


def b_coeffs(well: TaylorWell) -> tuple[float, float, float, float]:
    """(b0..b3) in 2y / V'(V^{-1}(y^2)) = b0 + b1 y + b2 y^2 + b3 y^3 + O(y^4)."""
    k = 4
    x = np.zeros(k + 1)
    x[1:] = invert_series(well, k)
    vp = np.array([2.0 * well.a0, 3.0 * well.a1, 4.0 * well.a2, 5.0 * well.a3])
    vp_poly = np.concatenate(([0.0], vp))
    comp = _ps_compose(vp_poly, x, k)          # V'(x(y)), vanishes at y = 0
    shifted = comp[1:]                          # V'(x(y)) / y
    return tuple(2.0 * _ps_recip(shifted, 3))


def b_coeffs_golden(well: TaylorWell) -> tuple[float, float, float, float]:
    a0, a1, a2, a3 = well.a0, well.a1, well.a2, well.a3
    return (
        a0 ** -0.5,
        -(a0 ** -2.0) * a1,
        (15.0 / 8.0) * a0 ** -3.5 * a1 ** 2 - 1.5 * a0 ** -2.5 * a2,
        -4.0 * a0 ** -5.0 * a1 ** 3 + 6.0 * a0 ** -4.0 * a1 * a2
        - 2.0 * a0 ** -3.0 * a3,
    )


def c_coeffs(well: TaylorWell) -> tuple[float, float, float, float]:
    """(c0..c3) in V''(V^{-1}(y^2)) = c0 + c1 y + c2 y^2 + c3 y^3 + O(y^4)."""
    k = 3
    x = np.zeros(k + 1)
    x[1:] = invert_series(well, k)
    vpp = np.array([2.0 * well.a0, 6.0 * well.a1, 12.0 * well.a2, 20.0 * well.a3])
    return tuple(_ps_compose(vpp, x, k))


def c_coeffs_golden(well: TaylorWell) -> tuple[float, float, float, float]:
    a0, a1, a2, a3 = well.a0, well.a1, well.a2, well.a3
    return (
        2.0 * a0,
        6.0 * a0 ** -0.5 * a1,
        -3.0 * a0 ** -2.0 * a1 ** 2 + 12.0 * a0 ** -1.0 * a2,
        (30.0 / 8.0) * a0 ** -3.5 * a1 ** 3 - 15.0 * a0 ** -2.5 * a1 * a2
        + 20.0 * a0 ** -1.5 * a3,
    )


def _check_kinetic(kinetic: str) -> None:
    if kinetic not in _KINETICS:
        raise ValueError(f"kinetic must be one of {_KINETICS}, got {kinetic!r}")


def alphas(well: TaylorWell, kinetic: str = CONTINUOUS) -> tuple[float, float]:
    """(alpha1, alpha2) of the action expansions for the given kinetic symbol.

    For xi^2:       alpha1 = b2 / 4,  alpha2 = -(b0 c2 + b1 c1 + b2 c0) / 24.
    For 2(1-cos xi): alpha1 gains b0 / 32 and alpha2 gains (3/8) b0 c0 / 24
    from the d xi = (1 + eta^2 / 8 + ...) d eta change of variables.
    """
    _check_kinetic(kinetic)
    b = b_coeffs(well)
    c = c_coeffs(well)
    alpha1 = b[2] / 4.0
    inner = b[0] * c[2] + b[1] * c[1] + b[2] * c[0]
    if kinetic == DISCRETE:
        alpha1 += b[0] / 32.0
        inner -= (3.0 / 8.0) * b[0] * c[0]
    alpha2 = -inner / 24.0
    return alpha1, alpha2


def alphas_golden(well: TaylorWell, kinetic: str = CONTINUOUS) -> tuple[float, float]:
    """Closed-form alphas straight from the Taylor data (independent golden)."""
    _check_kinetic(kinetic)
    a0, a1, a2 = well.a0, well.a1, well.a2
    alpha1 = 0.25 * ((15.0 / 8.0) * a0 ** -3.5 * a1 ** 2 - 1.5 * a0 ** -2.5 * a2)
    alpha2 = (1.0 / 24.0) * ((21.0 / 4.0) * a0 ** -2.5 * a1 ** 2
                             - 9.0 * a0 ** -1.5 * a2)
    if kinetic == DISCRETE:
        alpha1 += (1.0 / 32.0) * a0 ** -0.5
        alpha2 += (1.0 / 32.0) * a0 ** 0.5
    return alpha1, alpha2


def s0_series(well: TaylorWell, kinetic: str = CONTINUOUS) -> tuple[float, float]:
    """(coefficient of E, coefficient of E^2) in the phase-space area S0(E)."""
    alpha1, _ = alphas(well, kinetic)
    return math.pi * well.a0 ** -0.5, math.pi * alpha1


def s2_const(well: TaylorWell, kinetic: str = CONTINUOUS) -> float:
    """Constant term pi * alpha2 of the second action term S2(E)."""
    _, alpha2 = alphas(well, kinetic)
    return math.pi * alpha2


@dataclass(frozen=True)
class BSModel:
    """Derived quantization data for one well and kinetic symbol."""

    well: TaylorWell
    kinetic: str
    beta: tuple[float, ...]
    b: tuple[float, float, float, float]
    c: tuple[float, float, float, float]
    alpha1: float
    alpha2: float


def build_model(well: TaylorWell, kinetic: str = CONTINUOUS) -> BSModel:
    _check_kinetic(kinetic)
    a1, a2 = alphas(well, kinetic)
    return BSModel(well=well, kinetic=kinetic, beta=invert_series(well, 4),
                   b=b_coeffs(well), c=c_coeffs(well), alpha1=a1, alpha2=a2)


def e0(well: TaylorWell, kinetic: str = CONTINUOUS, h: float = 0.01,
       n: int = 0) -> float:
    """Two-term quantized energy of level n (validated for n = 0 only).

    Solving 2 pi (n + 1/2) h = S0(E) + h^2 S2(E) perturbatively gives
    E = sqrt(a0) (2n+1) h - sqrt(a0) (a0 alpha1 (2n+1)^2 + alpha2) h^2.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    if n < 0:
        raise ValueError("level index must be >= 0")
    omega = math.sqrt(well.a0)
    if omega * h > 0.5:
        warnings.warn(
            f"sqrt(a0) h = {omega * h:.3g} > 0.5: two-term expansion is "
            "outside its comfort zone",
            stacklevel=2,
        )
    alpha1, alpha2 = alphas(well, kinetic)
    m = 2 * n + 1
    return omega * m * h - omega * (well.a0 * alpha1 * m * m + alpha2) * h * h


def d_leading(a0: float, h: float) -> float:
    """Leading discrete/continuous bottom ratio 1 - sqrt(a0) h / 16."""
    if a0 <= 0:
        raise DegenerateWellError(f"requires a0 > 0, got {a0}")
    return 1.0 - math.sqrt(a0) * h / 16.0


__all__ = [
    "TaylorWell",
    "BSModel",
    "CONTINUOUS",
    "DISCRETE",
    "invert_series",
    "b_coeffs",
    "b_coeffs_golden",
    "c_coeffs",
    "c_coeffs_golden",
    "alphas",
    "alphas_golden",
    "s0_series",
    "s2_const",
    "build_model",
    "e0",
    "d_leading",
]
