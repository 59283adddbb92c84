"""
Dispersion of the rotated golden grid
=====================================

Rotating Z^2 by the golden angle and cropping to [0, R]^2 gives about R^2
points whose scaled dispersion R^2 disp stays at phi^4 / (phi^2 + 1).
"""

from golden_disp import PHI, build_rotated_grid, dispersion

target = PHI**4 / (PHI**2 + 1)
for R in (5, 10, 20, 40):
    P = build_rotated_grid(R)
    v = R * R * float(dispersion(P).value)
    print(f"R={R:3d} N={len(P):5d} R^2 disp={v:.6f} target={target:.6f}")
