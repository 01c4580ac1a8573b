"""semispec: discrete vs continuous 1D periodic Schrodinger spectra.

Compares the bottom of the spectrum of the discrete operator
(2 - shift - shift*) + V(h n) on the lattice with the continuous operator
-Delta + V(h x), in the semiclassical limit h -> 0:

* ``potential``        -- 1-periodic potentials from Fourier data, well Taylor data
* ``floquet``          -- q x q Bloch-Floquet fibers at h = p/q, butterflies
* ``hill``             -- plane-wave Galerkin bottom of the continuous spectrum
* ``bohr_sommerfeld``  -- two-term quantization coefficients from the well data
* ``spectra``          -- samples, interval unions, Hausdorff distance
* ``experiments``      -- d(h)/D(h) tables, rate fits, discontinuity oracles
* ``cli``              -- ``semispec`` command line driver
"""

from .bohr_sommerfeld import (BSModel, TaylorWell, alphas, b_coeffs, c_coeffs,
                              d_leading, e0, invert_series)
from .experiments import (ComparisonRecord, FitResult, bs_vs_spec, compare,
                          discontinuity_report, hoelder_check, loglog_fit,
                          scaling_exponent)
from .floquet import (ReducedRational, build_m, butterfly, eig_hermitian,
                      min_spec, sigma_h, spec_pd)
from .hill import HillProblem, assemble, bloch_sweep, min_spec_pc
from .potential import (Potential, WellData, builtin, fourier_coefficients,
                        load_potential_file, locate_minimum)
from .spectra import IntervalUnion, SpectrumSample, hausdorff, merge

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Potential", "WellData", "builtin", "fourier_coefficients",
    "load_potential_file", "locate_minimum",
    "SpectrumSample", "IntervalUnion", "merge", "hausdorff",
    "ReducedRational", "build_m", "eig_hermitian", "spec_pd", "sigma_h",
    "min_spec", "butterfly",
    "HillProblem", "assemble", "min_spec_pc", "bloch_sweep",
    "TaylorWell", "BSModel", "invert_series", "b_coeffs", "c_coeffs",
    "alphas", "e0", "d_leading",
    "ComparisonRecord", "FitResult", "compare", "loglog_fit",
    "scaling_exponent", "bs_vs_spec", "hoelder_check", "discontinuity_report",
]
