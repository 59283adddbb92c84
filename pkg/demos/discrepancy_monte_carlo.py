"""
Closed-form L2 discrepancies against Monte Carlo
================================================

The closed forms are quadratic in N. The Monte Carlo estimate samples test
boxes directly from the definition and reports a standard error.
"""

from golden_disp import build_fibonacci, build_modified
from golden_disp.discrepancy import NOTIONS, l2_discrepancy, with_mc

for name, P in [("fib", build_fibonacci(8, "float")), ("mod", build_modified(8, "float"))]:
    for notion in NOTIONS:
        rep = with_mc(l2_discrepancy(P, notion), P, samples=200_000, seed=1)
        z = (rep.squared - rep.mc.mean) / rep.mc.stderr
        print(f"{name} {notion:9s} value={rep.value:.5f} squared={rep.squared:.5f} "
              f"mc={rep.mc.mean:.5f} z={z:+.2f}")
