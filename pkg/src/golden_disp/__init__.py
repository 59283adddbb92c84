"""Low-dispersion Fibonacci-type point sets in the unit square.

Exact golden-ratio arithmetic, lattice constructions, maximal empty box
enumeration (standard and periodic) and L2 discrepancies.
"""

from .golden import PHI, GoldenInt, GoldenRational, fib, gi_phi_power, gi_sign, gr_cmp
from .lattices import (
    PointSet,
    build_fibonacci,
    build_modified,
    build_modified_prime,
    build_rotated_grid,
    remove_origin,
    symmetrize,
)
from .emptybox import (
    EmptyBox,
    classify_theorem1,
    dispersion,
    enumerate_maximal_boxes,
    enumerate_maximal_periodic_boxes,
    torus_dispersion,
    verify_box_oracle,
)
from .discrepancy import l2_extreme, l2_periodic, l2_standard, mc_oracle

__version__ = "0.1.0"
