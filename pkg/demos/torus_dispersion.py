"""
Torus dispersion of the Fibonacci lattice
=========================================

On the torus, boxes may wrap around the sides. The Fibonacci lattice reaches
the lower bound 2/N, and the modified lattice's periodic boxes span a
Fibonacci number of points in each direction.
"""

from collections import Counter

from golden_disp import build_fibonacci, build_modified, fib
from golden_disp.emptybox import enumerate_maximal_periodic_boxes, torus_dispersion

for m in range(5, 11):
    d = torus_dispersion(build_fibonacci(m)).value
    print(f"m={m:2d} N={fib(m):3d} N*disp_T={fib(m) * float(d):.6f}  exact {d}")

spans = Counter(b.span for b in enumerate_maximal_periodic_boxes(build_modified(9)))
print("periodic box spans for m=9:", dict(sorted(spans.items())))
