"""Discrete/continuous ratio d(h) against its leading asymptotics.

Computes d(h) = min Spec(P_d(h)) / min Spec(P_c(h)) along h = 1/q and
compares 1 - d(h) with the predicted sqrt(a0) h / 16, then fits the
log-log convergence rate (should be ~1).

Run:

  python demos/convergence_rate_demo.py
"""

from semispec import ReducedRational, builtin, compare, loglog_fit
from semispec.bohr_sommerfeld import d_leading
from semispec.potential import locate_minimum


def main():
    v1 = builtin("v1")
    a0 = locate_minimum(v1).a[0]
    qs = [8, 12, 16, 24, 32, 48, 64, 96, 128]
    records = compare(v1, [ReducedRational(1, q) for q in qs],
                      min_tol=1e-10, hill_tol=1e-11)

    print("V(x) = 1 + cos(2 pi x):  a0 = 2 pi^2 =", f"{a0:.6f}\n")
    print("    q        d(h)      1 - d(h)   sqrt(a0) h/16    |d - lead|")
    for r in records:
        lead = d_leading(a0, r.h)
        print(f"  {r.q:4d}  {r.d:.8f}  {1 - r.d:.3e}     {1 - lead:.3e}"
              f"     {abs(r.d - lead):.2e}")

    fit = loglog_fit([r.h for r in records], [abs(r.d - 1) for r in records])
    print(f"\nlog-log slope of |d(h) - 1| vs h: {fit.slope:.4f}"
          f"  (r^2 = {fit.r2:.6f}) -- the deviation is linear in h")
    d64 = next(r.d for r in records if r.q == 64)
    d128 = next(r.d for r in records if r.q == 128)
    ratio = abs(d64 - d_leading(a0, 1 / 64)) / abs(d128 - d_leading(a0, 1 / 128))
    print(f"remainder shrink h=1/64 -> 1/128: {ratio:.3f}  (~4 => O(h^2))")


if __name__ == "__main__":
    main()
