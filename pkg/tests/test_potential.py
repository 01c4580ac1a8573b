import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from semispec.potential import (DataCorruptionError, DegenerateWellError,
                                Potential, builtin, fourier_coefficients,
                                load_potential_file, locate_minimum)

PI = math.pi
SQRT3 = math.sqrt(3.0)


def test_eval_v1_values(v1):
    assert v1.eval(0.5, 0) == pytest.approx(0.0, abs=1e-14)
    assert v1.eval(0.0, 0) == pytest.approx(2.0, abs=1e-14)


def test_eval_v3_second_derivative_at_well(v3):
    # series expansion of the asymmetric well: quadratic term 3*sqrt(3)*pi^2
    assert v3.eval(-1.0 / 12.0, 2) / 2.0 == pytest.approx(3 * SQRT3 * PI**2,
                                                          rel=1e-12)


def test_eval_periodicity(v3):
    xs = np.linspace(-1.3, 1.7, 41)
    assert_allclose(v3.eval(xs), v3.eval(xs + 1.0), atol=1e-12)


def test_eval_rejects_large_order(v1):
    with pytest.raises(ValueError):
        v1.eval(0.1, 9)


def test_realness_enforced_at_construction():
    with pytest.raises(DataCorruptionError):
        Potential("bad", {1: 0.5 + 0j})  # missing the -1 partner
    with pytest.raises(DataCorruptionError):
        Potential("bad", {1: 0.5 + 0.2j, -1: 0.5 + 0.2j})


def test_builtin_coefficients():
    assert builtin("v2").coeffs[4] == pytest.approx(1.0 / 16.0)
    assert builtin("v1").coeffs[-1] == pytest.approx(0.5)
    assert builtin("v3").coeffs[2] == pytest.approx(-0.25j)
    with pytest.raises(KeyError):
        builtin("v9")


def test_v4_coefficients_against_quadrature_oracle(v4):
    # independent oracle: single high-resolution transform, 2^14 nodes
    n = 1 << 14
    x = np.arange(n) / n
    s2 = np.sin(2 * PI * x) ** 2
    with np.errstate(divide="ignore"):
        f = np.exp(np.where(s2 > 0, -1.0 / np.where(s2 > 0, s2, 1.0), -np.inf))
    c = np.fft.fft(f) / n
    freq = np.fft.fftfreq(n, 1.0 / n).astype(int)
    oracle = {int(b): complex(v) for b, v in zip(freq, c)}
    for beta, w in v4.coeffs.items():
        assert w == pytest.approx(oracle[beta], abs=2e-15)
    # decay threshold measured from the oracle: last |w| >= 1e-14 is beta = 164
    kept = [abs(b) for b, w in v4.coeffs.items() if abs(w) >= 1e-14]
    assert max(kept) == 164
    tail = [abs(v) for b, v in oracle.items() if abs(b) > 164]
    assert max(tail) < 1e-14


def test_v4_odd_coefficients_vanish(v4):
    # exp(-1/sin^2(2 pi x)) has period 1/2, so odd frequencies drop out
    assert all(b % 2 == 0 for b in v4.coeffs)


def test_fourier_coefficients_cosine():
    got = fourier_coefficients(lambda x: np.cos(2 * PI * x), tol=1e-12)
    assert set(got) == {1, -1}
    assert got[1] == pytest.approx(0.5, abs=1e-14)


def test_fourier_coefficients_v2_closed_form(v2):
    got = fourier_coefficients(lambda x: np.cos(2 * PI * x) ** 4, tol=1e-15)
    assert set(got) == set(v2.coeffs)
    for beta, w in v2.coeffs.items():
        assert got[beta] == pytest.approx(w, abs=1e-14)


def test_fourier_coefficients_zero_function():
    assert fourier_coefficients(lambda x: np.zeros_like(x), tol=1e-12) == {}


def test_fourier_roundtrip_on_trig_polynomials(v1, v2, v3):
    for pot in (v1, v2, v3):
        got = fourier_coefficients(pot.eval, tol=1e-13)
        assert set(got) == set(pot.coeffs)
        for beta, w in pot.coeffs.items():
            assert got[beta] == pytest.approx(w, abs=1e-13)


def test_fourier_coefficients_nonsmooth_failure():
    from semispec.potential import TruncationFailureError
    # sawtooth: coefficients decay like 1/beta, the doubling loop cannot
    # reach 1e-12 and must report the tail mass instead of looping forever
    with pytest.raises(TruncationFailureError):
        fourier_coefficients(lambda x: x, tol=1e-12, n0=256, n_max=1 << 14)


def test_locate_minimum_v1(v1):
    w = locate_minimum(v1)
    assert w.x0 == pytest.approx(0.5, abs=1e-12)
    assert w.v_min == pytest.approx(0.0, abs=1e-12)
    assert w.a[0] == pytest.approx(2 * PI**2, rel=1e-12)
    assert w.a[1] == pytest.approx(0.0, abs=1e-10)
    assert w.a[2] == pytest.approx(-2 * PI**4 / 3, rel=1e-12)
    assert not w.degenerate


def test_locate_minimum_v3(v3):
    w = locate_minimum(v3)
    assert w.x0 == pytest.approx(11.0 / 12.0, abs=1e-12)
    assert w.a[0] == pytest.approx(3 * SQRT3 * PI**2, rel=1e-12)
    assert w.a[1] == pytest.approx(-2 * PI**3, rel=1e-11)
    assert w.a[2] == pytest.approx(-3 * SQRT3 * PI**4, rel=1e-10)


def test_locate_minimum_v2_degenerate(v2):
    w = locate_minimum(v2)
    assert w.x0 == pytest.approx(0.25, abs=1e-12)
    assert w.degenerate
    # fourth-order well: V'''' at the minimum is 24 (2 pi)^4
    assert v2.eval(0.25, 4) == pytest.approx(24 * (2 * PI) ** 4, rel=1e-12)


def test_locate_minimum_v4_degenerate(v4):
    w = locate_minimum(v4)
    assert w.degenerate
    assert abs(w.v_min) < 1e-12


@pytest.mark.parametrize("name", ["v1", "v2", "v3", "v4"])
def test_grid_minimum_consistency(name):
    # v_min is the global minimum on a 1e5-point grid, and it is ~0 for
    # all four reference potentials (truncation noise allowed for v4)
    pot = builtin(name)
    w = locate_minimum(pot)
    xs = np.arange(100_000) / 100_000
    vals = pot.eval(xs)
    assert vals.min() >= w.v_min - 1e-12
    assert -1e-12 <= w.v_min <= 1e-10


@pytest.mark.parametrize("name", ["v1", "v3", "v4"])
def test_derivative_matches_finite_differences(name):
    pot = builtin(name)
    xs = np.linspace(0.05, 0.95, 7)
    errs = []
    for step in (1e-3, 5e-4):
        fd = (pot.eval(xs + step) - pot.eval(xs - step)) / (2 * step)
        errs.append(np.max(np.abs(fd - pot.eval(xs, 1))))
    order = math.log(errs[0] / errs[1]) / math.log(2.0)
    assert order >= 1.9


def test_degenerate_gate_has_no_frequency(v2):
    from semispec.potential import well_frequency
    with pytest.raises(DegenerateWellError):
        well_frequency(locate_minimum(v2))


def test_potential_file_roundtrip(tmp_path, v3):
    path = tmp_path / "pot.txt"
    lines = ["name = custom", "truncation_tol = 1e-13"]
    for beta, w in sorted(v3.coeffs.items()):
        lines.append(f"{beta} = [{w.real!r}, {w.imag!r}]")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    pot = load_potential_file(path)
    assert pot.name == "custom"
    assert set(pot.coeffs) == set(v3.coeffs)
    xs = np.linspace(0, 1, 17)
    assert_allclose(pot.eval(xs), v3.eval(xs), atol=1e-15)


def test_potential_file_rejects_garbage(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0 = [1, 0]\nnot a line\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_potential_file(path)
