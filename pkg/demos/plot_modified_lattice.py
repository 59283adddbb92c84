"""
Equal interior boxes of the modified Fibonacci lattice
======================================================

Re-spacing the Fibonacci lattice with gaps 1 and phi makes every maximal
empty box that touches no side of the square have the same area.
"""

import numpy as np

from golden_disp import build_fibonacci, build_modified
from golden_disp.cli import render_svg
from golden_disp.emptybox import INTERIOR, enumerate_maximal_boxes, golden_area

m = 9
P = build_modified(m)
print(len(P), "points")

# interior boxes, exact areas in Q(phi)
boxes = [b for b in enumerate_maximal_boxes(P) if b.kind == INTERIOR]
areas = {b.area for b in boxes}
print(len(boxes), "interior boxes, distinct areas:", len(areas))
print("area == phi^(3-m):", areas == {golden_area(m)}, float(golden_area(m)))

# the plain lattice has several interior box sizes
F = build_fibonacci(m)
plain = np.array(sorted({float(b.area) for b in enumerate_maximal_boxes(F) if b.kind == INTERIOR}))
print("plain lattice interior areas * F_m:", np.round(plain * len(F), 4))

with open("modified_lattice.svg", "w") as fh:
    fh.write(render_svg(P, boxes, label=f"{len(boxes)} interior boxes"))
print("wrote modified_lattice.svg")
