import math

import mpmath as mp
import numpy as np
import pytest
from scipy.integrate import quad
from scipy.optimize import brentq

from semispec import bohr_sommerfeld as bs
from semispec.potential import DegenerateWellError, locate_minimum

PI = math.pi
SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

HARMONIC = bs.TaylorWell(1.0)


def poly_eval(well, x):
    return well.a0 * x**2 + well.a1 * x**3 + well.a2 * x**4 + well.a3 * x**5


def branch_root(well, y):
    """Positive-branch solution of V(x) = y^2 (negative branch for y < 0)."""
    target = y * y
    lim = 0.5 / max(1.0, abs(well.a1) + abs(well.a2) + abs(well.a3))
    if y >= 0:
        return brentq(lambda x: poly_eval(well, x) - target, 0.0, lim,
                      xtol=1e-16)
    return brentq(lambda x: poly_eval(well, x) - target, -lim, 0.0,
                  xtol=1e-16)


def mp_branch_root(well, y):
    """High-precision branch root of V(x) = y^2 (mpmath, 40 digits)."""
    a = [mp.mpf(v) for v in (well.a0, well.a1, well.a2, well.a3)]
    y = mp.mpf(y)

    def f(x):
        return ((a[0] + (a[1] + (a[2] + a[3] * x) * x) * x) * x * x) - y * y

    guess = y / mp.sqrt(a[0])
    return mp.findroot(f, guess)


def fit_even_odd(g, t):
    """(even coefficients c0,c2,c4) and (odd c1,c3,c5) of g around 0.

    Exact interpolation in u = y^2 with three nodes per parity; the fit
    runs in mpmath because extracting the y^3 coefficient amplifies
    sampling noise by 1/t^3, which double precision cannot afford at the
    1e-8 oracle tolerance.
    """
    ys = [mp.mpf(t), mp.mpf(t) / 2, mp.mpf(t) / 4]
    even = [(g(y) + g(-y)) / 2 for y in ys]
    odd = [(g(y) - g(-y)) / (2 * y) for y in ys]
    vm = mp.matrix([[1, y ** 2, y ** 4] for y in ys])
    c_even = mp.lu_solve(vm, mp.matrix(even))
    c_odd = mp.lu_solve(vm, mp.matrix(odd))
    return [float(v) for v in c_even], [float(v) for v in c_odd]


SAMPLE_WELLS = [
    HARMONIC,
    bs.TaylorWell(2 * PI**2, 0.0, -2 * PI**4 / 3, 0.0),
    bs.TaylorWell(3 * SQRT3 * PI**2, -2 * PI**3, -3 * SQRT3 * PI**4, 2 * PI**5),
    bs.TaylorWell(1.7, 0.8, -0.4, 0.3),
    bs.TaylorWell(5.0, -1.2, 0.9, -0.5),
]


def test_taylor_well_rejects_degenerate():
    with pytest.raises(DegenerateWellError):
        bs.TaylorWell(0.0)
    with pytest.raises(DegenerateWellError):
        bs.TaylorWell(-1.0, 0.2)


def test_invert_series_harmonic():
    assert bs.invert_series(HARMONIC, 4) == pytest.approx((1, 0, 0, 0))


def test_invert_series_closed_forms():
    for well in SAMPLE_WELLS:
        a0, a1, a2, a3 = well.a0, well.a1, well.a2, well.a3
        b1, b2, b3, b4 = bs.invert_series(well, 4)
        assert b1 == pytest.approx(a0 ** -0.5, rel=1e-13)
        assert b2 == pytest.approx(-0.5 * a0 ** -2 * a1, rel=1e-12, abs=1e-15)
        assert b3 == pytest.approx(
            (5 / 8) * a0 ** -3.5 * a1 ** 2 - 0.5 * a0 ** -2.5 * a2,
            rel=1e-12, abs=1e-15)
        assert b4 == pytest.approx(
            -a0 ** -5 * a1 ** 3 + 1.5 * a0 ** -4 * a1 * a2 - 0.5 * a0 ** -3 * a3,
            rel=1e-12, abs=1e-15)


def test_invert_series_defines_inverse():
    for well in SAMPLE_WELLS:
        beta = bs.invert_series(well, 6)
        for y in (1e-2, -1e-2):
            x = sum(b * y ** (n + 1) for n, b in enumerate(beta))
            assert poly_eval(well, x) == pytest.approx(y * y, abs=1e-13)


def test_invert_series_against_root_finder():
    for well in SAMPLE_WELLS:
        beta = bs.invert_series(well, 4)
        diffs = []
        for y in (1e-3, 5e-4):
            series = sum(b * y ** (n + 1) for n, b in enumerate(beta))
            diffs.append(abs(branch_root(well, y) - series))
        scale = 1 + sum(abs(b) for b in beta)
        assert diffs[0] <= 100 * scale * 1e-3 ** 5
        # remainder is O(y^5): halving y shrinks it by ~2^5 (skip when
        # the difference is already at root-finder noise level)
        if diffs[1] > 1e-14:
            assert diffs[0] / diffs[1] == pytest.approx(32, rel=0.5)


def test_b_coeffs_match_golden_formulas():
    for well in SAMPLE_WELLS:
        got = np.array(bs.b_coeffs(well))
        want = np.array(bs.b_coeffs_golden(well))
        np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-13)


def test_b_coeffs_v1_value():
    # with a1 = 0: b2 = -(3/2) a0^{-5/2} a2 = pi^4 (2 pi^2)^{-5/2}
    well = bs.TaylorWell(2 * PI**2, 0.0, -2 * PI**4 / 3, 0.0)
    b = bs.b_coeffs(well)
    assert b[2] == pytest.approx(PI**4 * (2 * PI**2) ** -2.5, rel=1e-12)


def test_b_coeffs_against_numeric_fit():
    with mp.workdps(40):
        for well in SAMPLE_WELLS:
            a = [mp.mpf(v) for v in (well.a0, well.a1, well.a2, well.a3)]

            def g(y, a=a, well=well):
                x = mp_branch_root(well, y)
                d1 = (2 * a[0] + (3 * a[1] + (4 * a[2] + 5 * a[3] * x) * x) * x) * x
                return 2 * y / d1

            c_even, c_odd = fit_even_odd(g, t=5e-3)
            b = bs.b_coeffs(well)
            for got, want in zip((c_even[0], c_odd[0], c_even[1], c_odd[1]), b):
                assert abs(got - want) < 1e-8 * max(1.0, abs(want))


def test_c_coeffs_match_golden_formulas():
    for well in SAMPLE_WELLS:
        got = np.array(bs.c_coeffs(well))
        want = np.array(bs.c_coeffs_golden(well))
        np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-13)


def test_c_coeffs_harmonic_and_v3():
    assert bs.c_coeffs(HARMONIC) == pytest.approx((2, 0, 0, 0))
    well = bs.TaylorWell(3 * SQRT3 * PI**2, -2 * PI**3, -3 * SQRT3 * PI**4,
                         2 * PI**5)
    c = bs.c_coeffs(well)
    assert c[1] == pytest.approx(6 * (3 * SQRT3 * PI**2) ** -0.5 * (-2 * PI**3),
                                 rel=1e-12)


def test_c_coeffs_against_numeric_fit():
    with mp.workdps(40):
        for well in SAMPLE_WELLS:
            a = [mp.mpf(v) for v in (well.a0, well.a1, well.a2, well.a3)]

            def g(y, a=a, well=well):
                x = mp_branch_root(well, y)
                return 2 * a[0] + (6 * a[1] + (12 * a[2] + 20 * a[3] * x) * x) * x

            c_even, c_odd = fit_even_odd(g, t=5e-3)
            c = bs.c_coeffs(well)
            for got, want in zip((c_even[0], c_odd[0], c_even[1], c_odd[1]), c):
                assert abs(got - want) < 1e-8 * max(1.0, abs(want))


def test_alphas_table_values(v1, v3):
    w1 = bs.TaylorWell.from_well_data(locate_minimum(v1))
    w3 = bs.TaylorWell.from_well_data(locate_minimum(v3))
    a0_1, a0_3 = 2 * PI**2, 3 * SQRT3 * PI**2
    table = {
        ("v1", bs.CONTINUOUS): (1 / (16 * PI * SQRT2), PI / (8 * SQRT2)),
        ("v3", bs.CONTINUOUS): (4 / (81 * PI * 3 ** 0.25),
                                11 * PI / (27 * 3 ** 0.75)),
        ("v1", bs.DISCRETE): (1 / (16 * PI * SQRT2) + a0_1 ** -0.5 / 32,
                              PI / (8 * SQRT2) + a0_1 ** 0.5 / 32),
        ("v3", bs.DISCRETE): (4 / (81 * PI * 3 ** 0.25) + a0_3 ** -0.5 / 32,
                              11 * PI / (27 * 3 ** 0.75) + a0_3 ** 0.5 / 32),
    }
    for (name, kin), want in table.items():
        well = w1 if name == "v1" else w3
        got = bs.alphas(well, kin)
        assert got[0] == pytest.approx(want[0], rel=1e-12)
        assert got[1] == pytest.approx(want[1], rel=1e-12)


def test_alphas_match_golden():
    rng = np.random.default_rng(17)
    for _ in range(100):
        well = bs.TaylorWell(rng.uniform(0.5, 10), *rng.uniform(-2, 2, 3))
        for kin in (bs.CONTINUOUS, bs.DISCRETE):
            got = bs.alphas(well, kin)
            want = bs.alphas_golden(well, kin)
            assert got[0] == pytest.approx(want[0], rel=1e-12, abs=1e-14)
            assert got[1] == pytest.approx(want[1], rel=1e-12, abs=1e-14)


def test_alphas_invariant_under_a1_sign_flip():
    rng = np.random.default_rng(23)
    for _ in range(50):
        a0 = rng.uniform(0.5, 8)
        a1, a2, a3 = rng.uniform(-2, 2, 3)
        for kin in (bs.CONTINUOUS, bs.DISCRETE):
            plus = bs.alphas(bs.TaylorWell(a0, a1, a2, a3), kin)
            minus = bs.alphas(bs.TaylorWell(a0, -a1, a2, -a3), kin)
            assert plus == minus


def action_area_quadrature(well, kinetic, energy):
    """Phase-space area of {T(xi) + V(x) <= E} by 1D quadrature in x."""
    lim = 0.5 / max(1.0, abs(well.a1) + abs(well.a2) + abs(well.a3))
    x_hi = brentq(lambda x: poly_eval(well, x) - energy, 0.0, lim,
                  xtol=1e-15)
    x_lo = brentq(lambda x: poly_eval(well, x) - energy, -lim, 0.0,
                  xtol=1e-15)
    if kinetic == bs.CONTINUOUS:
        def width(x):
            return 2.0 * math.sqrt(max(energy - poly_eval(well, x), 0.0))
    else:
        def width(x):
            c = max(energy - poly_eval(well, x), 0.0)
            return 2.0 * math.acos(1.0 - c / 2.0)
    val, _ = quad(width, x_lo, x_hi, epsabs=1e-13, epsrel=1e-11, limit=200)
    return val


@pytest.mark.parametrize("kinetic", [bs.CONTINUOUS, bs.DISCRETE])
def test_action_series_vs_quadrature(kinetic):
    rng = np.random.default_rng(31)
    for _ in range(8):
        well = bs.TaylorWell(rng.uniform(1, 10), *rng.uniform(-1, 1, 2))
        energy = 1e-3
        area = action_area_quadrature(well, kinetic, energy)
        c1, c2 = bs.s0_series(well, kinetic)
        two_term = c1 * energy + c2 * energy ** 2
        assert area == pytest.approx(two_term, rel=1e-3)


def test_s0_leading_term_kinetic_independent():
    for well in SAMPLE_WELLS:
        cont = bs.s0_series(well, bs.CONTINUOUS)
        disc = bs.s0_series(well, bs.DISCRETE)
        assert cont[0] == disc[0] == pytest.approx(PI * well.a0 ** -0.5,
                                                   rel=1e-13)


def test_s0_s2_harmonic():
    assert bs.s0_series(HARMONIC, bs.CONTINUOUS) == pytest.approx((PI, 0.0))
    assert bs.s2_const(HARMONIC, bs.CONTINUOUS) == pytest.approx(0.0)


def test_s0_quadratic_coefficient_v1():
    well = bs.TaylorWell(2 * PI**2, 0.0, -2 * PI**4 / 3, 0.0)
    _, c2 = bs.s0_series(well, bs.CONTINUOUS)
    assert c2 == pytest.approx(1 / (16 * SQRT2), rel=1e-12)


def test_e0_harmonic_identities():
    for h in (0.05, 0.2, 0.4):
        assert bs.e0(HARMONIC, bs.CONTINUOUS, h) == pytest.approx(h, rel=1e-14)
        assert bs.e0(HARMONIC, bs.DISCRETE, h) == pytest.approx(
            h - h * h / 16.0, rel=1e-14)


def test_e0_v1_two_term_value(v1):
    well = bs.TaylorWell.from_well_data(locate_minimum(v1))
    got = bs.e0(well, bs.CONTINUOUS, 0.01)
    assert got == pytest.approx(SQRT2 * PI * 0.01 - (PI**2 / 4) * 1e-4,
                                rel=1e-10)


def test_e0_warns_outside_regime():
    with pytest.warns(UserWarning):
        bs.e0(bs.TaylorWell(100.0), bs.CONTINUOUS, 0.2)


def test_d_leading_values():
    assert bs.d_leading(2 * PI**2, 0.05) == pytest.approx(
        1 - PI * SQRT2 * 0.05 / 16, rel=1e-14)
    assert bs.d_leading(7.0, 0.0) == 1.0
    with pytest.raises(DegenerateWellError):
        bs.d_leading(0.0, 0.1)


def test_d_leading_equals_harmonic_e0_ratio():
    for h in (0.1, 0.25):
        ratio = (bs.e0(HARMONIC, bs.DISCRETE, h)
                 / bs.e0(HARMONIC, bs.CONTINUOUS, h))
        assert ratio == bs.d_leading(1.0, h)


def test_d_leading_general_well_second_order():
    # for non-harmonic wells the e0 ratio differs from the leading
    # formula at O(h^2): halving h shrinks the gap by ~4
    well = bs.TaylorWell(3.0, 0.7, -0.5, 0.2)
    gaps = []
    for h in (0.02, 0.01):
        ratio = (bs.e0(well, bs.DISCRETE, h)
                 / bs.e0(well, bs.CONTINUOUS, h))
        gaps.append(abs(ratio - bs.d_leading(well.a0, h)))
    assert gaps[0] / gaps[1] == pytest.approx(4.0, rel=0.15)


def test_build_model_consistency():
    model = bs.build_model(SAMPLE_WELLS[3], bs.DISCRETE)
    assert model.alpha1, model.alpha2 == bs.alphas(SAMPLE_WELLS[3], bs.DISCRETE)
    assert model.b == bs.b_coeffs(SAMPLE_WELLS[3])
    assert model.beta == bs.invert_series(SAMPLE_WELLS[3], 4)


def test_from_well_data_gates_degenerate(v2):
    with pytest.raises(DegenerateWellError):
        bs.TaylorWell.from_well_data(locate_minimum(v2))
