"""Point set constructions: Fibonacci lattice, its golden re-spacing, the
boundary-tuned variant, symmetrization, origin removal and the rotated
golden grid.

Exact point sets carry :class:`~golden_disp.golden.GoldenRational`
coordinates sharing one denominator; float point sets carry Python floats.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .golden import (
    PHI,
    GoldenInt,
    GoldenRational,
    ONE,
    PHI_GI,
    ZERO,
    fib,
    gi_phi_power,
    gi_to_float,
)

FLOAT_TOL = 1e-12


@dataclass(frozen=True)
class Meta:
    family: str
    m: int | None = None
    R: float | None = None
    star: bool = False
    sym: bool = False


@dataclass
class PointSet:
    """Ordered list of points in the unit square.

    ``backend`` is ``"exact"`` (GoldenRational coordinates) or ``"float"``.
    Duplicates are allowed.
    """

    points: list[tuple]
    backend: str
    meta: Meta = field(default_factory=lambda: Meta("custom"))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def as_array(self) -> np.ndarray:
        """Float coordinates as an ``(N, 2)`` array."""
        if not self.points:
            return np.zeros((0, 2))
        return np.array([(float(x), float(y)) for x, y in self.points], dtype=float)

    def to_float(self) -> PointSet:
        if self.backend == "float":
            return self
        pts = [(float(x), float(y)) for x, y in self.points]
        return PointSet(pts, "float", self.meta)

    @classmethod
    def from_array(cls, arr, meta: Meta | None = None) -> PointSet:
        arr = np.asarray(arr, dtype=float).reshape(-1, 2)
        pts = [(float(x), float(y)) for x, y in arr]
        return cls(pts, "float", meta or Meta("custom"))


@dataclass
class GapSequence:
    m: int
    s: list
    L: GoldenInt | float


def _check_m(m: int, lo: int = 3) -> None:
    if m < lo:
        raise ValueError(f"m must be >= {lo}, got {m}")


def perm_pi(m: int, k: int) -> int:
    """The F_m-periodic permutation ``k -> k*F_(m-2) mod F_m``."""
    _check_m(m)
    return (k * fib(m - 2)) % fib(m)


def gap_s(m: int, i: int) -> GoldenInt:
    """Gap ``phi`` when pi(i) < pi(i+1), else ``1`` (periodic in i)."""
    _check_m(m)
    return PHI_GI if perm_pi(m, i) < perm_pi(m, i + 1) else ONE


def gap_sequence(m: int) -> GapSequence:
    _check_m(m)
    n = fib(m)
    s = [gap_s(m, i) for i in range(n)]
    total = ZERO
    for g in s:
        total = total + g
    return GapSequence(m, s, total)


def _prefix_sums(m: int) -> list[GoldenInt]:
    """``x_0 .. x_(F_m)`` as GoldenInts; the last entry is L."""
    n = fib(m)
    q = fib(m - 2)
    xs = [ZERO]
    a = b = 0
    for i in range(n):
        # s(i) = phi iff pi(i) < pi(i+1)
        if (i * q) % n < ((i + 1) * q) % n:
            a += 1
        else:
            b += 1
        xs.append(GoldenInt(a, b))
    return xs


def prefix_x(m: int, k: int) -> GoldenInt:
    """Exact prefix sum ``x_k = s(0) + ... + s(k-1)`` for 0 <= k <= F_m."""
    _check_m(m)
    if not 0 <= k <= fib(m):
        raise ValueError(f"k must lie in [0, {fib(m)}], got {k}")
    return _prefix_sums(m)[k]


def build_fibonacci(m: int, backend: str = "exact") -> PointSet:
    """Fibonacci lattice ``(k/F_m, {k F_(m-2) / F_m})``, k = 0..F_m-1."""
    _check_m(m)
    n = fib(m)
    den = GoldenInt(0, n)
    pts = [
        (GoldenRational(GoldenInt(0, k), den),
         GoldenRational(GoldenInt(0, perm_pi(m, k)), den))
        for k in range(n)
    ]
    ps = PointSet(pts, "exact", Meta("fib", m=m))
    return ps if backend == "exact" else ps.to_float()


def build_modified(m: int, backend: str = "exact") -> PointSet:
    """Modified Fibonacci lattice ``(x_k/L, x_pi(k)/L)`` with L = phi^(m-1)."""
    _check_m(m)
    n = fib(m)
    xs = _prefix_sums(m)
    L = xs[n]
    coords = [GoldenRational(xs[k], L) for k in range(n)]
    pts = [(coords[k], coords[perm_pi(m, k)]) for k in range(n)]
    ps = PointSet(pts, "exact", Meta("mod", m=m))
    return ps if backend == "exact" else ps.to_float()


def boundary_gap(m: int) -> float:
    """Tuned value for the first and last gap of the boundary-tuned lattice.

    Odd m balances the exterior boxes bounded on three sides by the square
    with the interior boxes; even m balances the corner box of width
    ``(x + phi)/L`` instead.
    """
    _check_m(m, 5)
    if m % 2 == 1:
        d = PHI ** (m - 1) - PHI**2
        return 2.0 * PHI ** (m + 1) / (d + math.sqrt(d * d + 8.0 * PHI ** (m + 1)))
    c = PHI ** (m - 2) + 1.0 / PHI
    q = PHI**m + PHI
    # root of x^2 + c x - q, rationalized to avoid cancellation
    return 2.0 * q / (c + math.sqrt(c * c + 4.0 * q))


def modified_prime_gaps(m: int) -> GapSequence:
    _check_m(m, 5)
    n = fib(m)
    x = boundary_gap(m)
    s = [gi_to_float(g) for g in (gap_s(m, i) for i in range(n))]
    s[0] = s[n - 1] = x
    L = gi_to_float(gi_phi_power(m - 1)) - PHI**2 + 2.0 * x
    return GapSequence(m, s, L)


def build_modified_prime(m: int) -> PointSet:
    """Boundary-tuned modified lattice (float backend).

    Gaps agree with :func:`build_modified` except ``s(0) = s(F_m - 1) =``
    :func:`boundary_gap`; coordinates are renormalized by the new total.
    """
    _check_m(m, 5)
    n = fib(m)
    x = boundary_gap(m)
    xs = _prefix_sums(m)
    L = gi_to_float(gi_phi_power(m - 1)) - PHI**2 + 2.0 * x
    # x_k = x + (old x_k - phi) for k >= 1; exact part evaluated once
    coords = [0.0] + [(x + gi_to_float(xs[k] - PHI_GI)) / L for k in range(1, n)]
    pts = [(coords[k], coords[perm_pi(m, k)]) for k in range(n)]
    return PointSet(pts, "float", Meta("modprime", m=m))


def symmetrize(P: PointSet) -> PointSet:
    """``P`` followed by its mirror image ``(x, 1 - y)``."""
    mirrored = [(x, 1 - y) for x, y in P.points]
    return PointSet(list(P.points) + mirrored, P.backend, replace(P.meta, sym=True))


def _is_zero(v) -> bool:
    if isinstance(v, GoldenRational):
        return v.sign() == 0
    return v == 0


def remove_origin(P: PointSet) -> PointSet:
    """Drop every copy of (0, 0) and mark the set as starred."""
    pts = [p for p in P.points if not (_is_zero(p[0]) and _is_zero(p[1]))]
    return PointSet(pts, P.backend, replace(P.meta, star=True))


def rotation_matrix() -> np.ndarray:
    return np.array([[PHI, 1.0], [-1.0, PHI]]) / math.sqrt(PHI**2 + 1.0)


def build_rotated_grid(R: float) -> PointSet:
    """Rotated golden grid ``(1/R) (M Z^2 intersected with [0, R]^2)``.

    Points are sorted by (x, y). Membership uses the closed square with a
    1e-12 tolerance and boundary hits are clamped into it.
    """
    if R < 2:
        raise ValueError(f"R must be >= 2, got {R}")
    M = rotation_matrix()
    # |M z| = |z| and [0,R]^2 lies in the disc of radius R*sqrt(2)
    K = int(math.ceil(R * math.sqrt(2.0))) + 1
    r = np.arange(-K, K + 1)
    zi, zj = np.meshgrid(r, r, indexing="ij")
    z = np.stack([zi.ravel(), zj.ravel()]).astype(float)
    w = M @ z
    tol = FLOAT_TOL * max(1.0, R)
    keep = np.all((w >= -tol) & (w <= R + tol), axis=0)
    w = np.clip(w[:, keep], 0.0, R) / R
    order = np.lexsort((w[1], w[0]))
    w = w[:, order]
    pts = [(float(a), float(b)) for a, b in zip(w[0], w[1])]
    return PointSet(pts, "float", Meta("grid", R=float(R)))


def to_csv(P: PointSet) -> str:
    buf = io.StringIO()
    buf.write("x,y\n")
    for x, y in P.points:
        buf.write(f"{float(x):.17g},{float(y):.17g}\n")
    return buf.getvalue()


def to_json(P: PointSet) -> str:
    meta = {
        "family": P.meta.family,
        "m": P.meta.m,
        "R": P.meta.R,
        "star": P.meta.star,
        "sym": P.meta.sym,
    }
    if P.backend == "exact":
        pts = [{"x": x.to_json(), "y": y.to_json()} for x, y in P.points]
    else:
        pts = [{"x": float(x), "y": float(y)} for x, y in P.points]
    return json.dumps({"backend": P.backend, "meta": meta, "points": pts}, indent=1)
