"""Maximal empty axis-parallel boxes and dispersion.

Boxes are open, so a point lying on an edge never blocks it; the supremum
over half-open boxes equals the maximum over these open maximal boxes.
Points on the boundary of the unit square therefore never block a
standard box and are ignored by the standard enumeration.

The enumeration works on integer ranks of the distinct coordinates, so the
sweep itself is backend independent. Exact point sets are ranked with
exact comparisons in Q(phi) and their box areas are exact GoldenRationals.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cmp_to_key

import numpy as np

from .golden import GoldenInt, GoldenRational, ONE, fib, gi_phi_power, gr_cmp
from .lattices import FLOAT_TOL, PointSet, build_modified

INTERIOR = "interior"
EXTERIOR = "exterior"
WRAP = "periodic-wrap"

# periodic key flags: arcs bounded by points, or a whole circle with no
# excluded line in y (resp. x)
CUT, FULL_Y, FULL_X = 0, 1, 2


@dataclass
class EmptyBox:
    """A maximal empty box.

    For periodic boxes ``x_lo > x_hi`` (or ``y_lo > y_hi``) means the box
    wraps around; ``x_lo == x_hi`` means the full circle minus that line.
    ``span`` counts rank steps between opposite sides.
    """

    x_lo: object
    x_hi: object
    y_lo: object
    y_hi: object
    width: object
    height: object
    area: object
    kind: str
    span: tuple[int, int] | None = None
    key: tuple = field(default=(), repr=False, compare=False)

    def to_dict(self) -> dict:
        d = {
            "x_lo": float(self.x_lo),
            "x_hi": float(self.x_hi),
            "y_lo": float(self.y_lo),
            "y_hi": float(self.y_hi),
            "area": float(self.area),
            "class": self.kind,
            "span": list(self.span) if self.span else None,
        }
        if isinstance(self.area, GoldenRational):
            d["exact"] = {
                name: getattr(self, name).to_json()
                for name in ("x_lo", "x_hi", "y_lo", "y_hi", "area")
            }
        return d


@dataclass
class DispersionResult:
    value: object
    witness: EmptyBox
    backend: str
    all_maximal: list[EmptyBox] | None = None

    def __float__(self) -> float:
        return float(self.value)


# ---------------------------------------------------------------- ranking


class _Axis:
    """Distinct sorted values of one coordinate plus arithmetic helpers."""

    def __init__(self, values: list, exact: bool):
        self.values = values
        self.exact = exact

    def __len__(self) -> int:
        return len(self.values)

    def diff(self, lo: int, hi: int, wrap: bool = False):
        if lo == hi and wrap:
            return _one(self.exact)
        d = self.values[hi] - self.values[lo]
        if hi < lo:
            d = d + 1
        return d


def _one(exact: bool):
    return GoldenRational(ONE, ONE) if exact else 1.0


def _zero(exact: bool):
    return GoldenRational(GoldenInt(0, 0), ONE) if exact else 0.0


def _rank(values: list, exact: bool) -> tuple[list, list[int]]:
    """Sort distinct values; return them with the rank of each input."""
    n = len(values)
    if n == 0:
        return [], []
    if exact:
        order = sorted(range(n), key=cmp_to_key(lambda i, j: gr_cmp(values[i], values[j])))
        same = lambda u, v: gr_cmp(u, v) == 0
    else:
        order = sorted(range(n), key=lambda i: values[i])
        same = lambda u, v: abs(u - v) <= FLOAT_TOL
    distinct = []
    ranks = [0] * n
    for i in order:
        v = values[i]
        if not distinct or not same(distinct[-1], v):
            distinct.append(v)
        ranks[i] = len(distinct) - 1
    return distinct, ranks


def _on_boundary(v, exact: bool) -> bool:
    if exact:
        return v.sign() == 0 or gr_cmp(v, _one(True)) == 0
    return v <= FLOAT_TOL or v >= 1.0 - FLOAT_TOL


def _standard_ranks(P: PointSet):
    """Ranks of the points strictly inside the square, with 0 and 1 added."""
    exact = P.backend == "exact"
    inner = [
        (x, y) for x, y in P.points
        if not (_on_boundary(x, exact) or _on_boundary(y, exact))
    ]
    zero, one = _zero(exact), _one(exact)
    xs, rx = _rank([zero, one] + [p[0] for p in inner], exact)
    ys, ry = _rank([zero, one] + [p[1] for p in inner], exact)
    pts = sorted(set(zip(rx[2:], ry[2:])))
    return _Axis(xs, exact), _Axis(ys, exact), pts


def _torus_ranks(P: PointSet):
    exact = P.backend == "exact"
    one = _one(exact)

    def wrap(v):
        if exact:
            return v - one if gr_cmp(v, one) >= 0 else v
        return 0.0 if v >= 1.0 - FLOAT_TOL else v

    xs, rx = _rank([wrap(p[0]) for p in P.points], exact)
    ys, ry = _rank([wrap(p[1]) for p in P.points], exact)
    pts = sorted(set(zip(rx, ry)))
    return _Axis(xs, exact), _Axis(ys, exact), pts


def _groups(pts: list[tuple[int, int]]) -> list[tuple[int, list[int]]]:
    out: list[tuple[int, list[int]]] = []
    for x, y in pts:
        if out and out[-1][0] == x:
            out[-1][1].append(y)
        else:
            out.append((x, [y]))
    return out


# ---------------------------------------------------------- standard sweep


def _standard_keys_for(groups, anchors, nx, ny):
    """Box keys ``(xl, xh, yl, yh)`` found from the given anchor indices."""
    keys = set()
    top_edge = ny - 1
    for gi, py in anchors:
        px = groups[gi][0]
        # left side on a point
        bottom, top = 0, top_edge
        for gx, ys in groups[gi + 1:]:
            if any(bottom < y < top for y in ys):
                keys.add((px, gx, bottom, top))
            stop = False
            for y in ys:
                if y > py:
                    if y < top:
                        top = y
                elif y < py:
                    if y > bottom:
                        bottom = y
                else:
                    stop = True
            if stop:
                break
        else:
            keys.add((px, nx - 1, bottom, top))
        # left side on the square edge, right side on this point
        bottom, top = 0, top_edge
        for gx, ys in reversed(groups[:gi]):
            stop = False
            for y in ys:
                if y > py:
                    if y < top:
                        top = y
                elif y < py:
                    if y > bottom:
                        bottom = y
                else:
                    stop = True
            if stop:
                break
        else:
            keys.add((0, px, bottom, top))
    return keys


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("GOLDEN_DISP_THREADS", "1")))
    except ValueError:
        return 1


def _run_sweep(fn, groups, anchors, nx, ny) -> set:
    workers = _threads()
    if workers == 1 or len(anchors) < 256:
        return fn(groups, anchors, nx, ny)
    chunks = [anchors[i::workers] for i in range(workers)]
    keys = set()
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for part in ex.map(fn, [groups] * workers, chunks, [nx] * workers, [ny] * workers):
            keys |= part
    return keys


def standard_box_keys(P: PointSet):
    """Rank keys of all maximal empty boxes; returns ``(keys, xaxis, yaxis)``."""
    xa, ya, pts = _standard_ranks(P)
    nx, ny = len(xa), len(ya)
    groups = _groups(pts)
    anchors = [(gi, y) for gi, (_, ys) in enumerate(groups) for y in ys]
    keys = _run_sweep(_standard_keys_for, groups, anchors, nx, ny)
    # full-width strips
    for r in range(ny - 1):
        keys.add((0, nx - 1, r, r + 1))
    return keys, xa, ya


def _standard_box(key, xa: _Axis, ya: _Axis) -> EmptyBox:
    xl, xh, yl, yh = key
    w = xa.diff(xl, xh)
    h = ya.diff(yl, yh)
    boundary = xl == 0 or xh == len(xa) - 1 or yl == 0 or yh == len(ya) - 1
    return EmptyBox(
        xa.values[xl], xa.values[xh], ya.values[yl], ya.values[yh],
        w, h, w * h, EXTERIOR if boundary else INTERIOR,
        span=(xh - xl, yh - yl), key=key,
    )


def enumerate_maximal_boxes(P: PointSet) -> list[EmptyBox]:
    """All maximal empty boxes of ``P`` in the unit square, sorted by key."""
    keys, xa, ya = standard_box_keys(P)
    return [_standard_box(k, xa, ya) for k in sorted(keys)]


# ------------------------------------------------------------- torus sweep


def _torus_keys_for(groups, anchors, nx, ny):
    """Periodic box keys ``(xl, xh, yl, yh, flag)`` from the given anchors.

    ``flag`` is :data:`FULL_Y` for a strip with no point strictly inside,
    whose y-extent is the whole circle without any excluded line.
    """
    keys = set()
    ng = len(groups)
    distinct_on_line = [len(set(ys)) for _, ys in groups]
    for gi, py in anchors:
        px, own = groups[gi]
        up = down = ny
        cut = False
        for t in range(1, ng + 1):
            gj = (gi + t) % ng
            gx, ys = groups[gj]
            if cut:
                inside = any((y - py) % ny < up or (py - y) % ny < down for y in ys)
            else:
                inside = True
            if inside:
                if cut:
                    keys.add((px, gx, (py - down) % ny, (py + up) % ny, CUT))
                elif t == ng or (distinct_on_line[gi] > 1 and distinct_on_line[gj] > 1):
                    keys.add((px, gx, min(own), min(own), FULL_Y))
            if t == ng:
                break
            stop = False
            for y in ys:
                if y == py:
                    stop = True
                    continue
                du = (y - py) % ny
                dd = ny - du
                if du < up:
                    up = du
                if dd < down:
                    down = dd
                cut = True
            if stop:
                break
    return keys


def torus_box_keys(P: PointSet):
    if len(P) == 0:
        raise ValueError("periodic boxes need at least one point")
    xa, ya, pts = _torus_ranks(P)
    groups = _groups(pts)
    anchors = [(gi, y) for gi, (_, ys) in enumerate(groups) for y in ys]
    keys = _run_sweep(_torus_keys_for, groups, anchors, len(xa), len(ya))
    keys |= _full_width_keys(pts, len(xa), len(ya))
    return keys, xa, ya


def _full_width_keys(pts, nx, ny) -> set:
    """Bands between consecutive y-lines spanning the whole x-circle.

    A band is kept unless it can grow past one of its bounding lines by
    excluding the single x-line all points of that line sit on. With one
    y-line the band is the torus minus that line; when there is also one
    x-line the full-height strip already covers it.
    """
    xs_on = [set() for _ in range(ny)]
    for x, y in pts:
        xs_on[y].add(x)
    keys = set()
    if ny == 1:
        if nx > 1:
            keys.add((min(xs_on[0]), min(xs_on[0]), 0, 0, FULL_X))
        return keys
    for k in range(ny):
        l = (k + 1) % ny
        if len(xs_on[k]) > 1 and len(xs_on[l]) > 1:
            keys.add((min(xs_on[k]), min(xs_on[k]), k, l, FULL_X))
    return keys


def _torus_box(key, xa: _Axis, ya: _Axis) -> EmptyBox:
    xl, xh, yl, yh, flag = key
    nx, ny = len(xa), len(ya)
    w = _one(xa.exact) if flag == FULL_X else xa.diff(xl, xh, wrap=True)
    h = _one(xa.exact) if flag == FULL_Y else ya.diff(yl, yh, wrap=True)
    wraps = xh <= xl or yh <= yl or flag != CUT
    xspan = nx if flag == FULL_X else ((xh - xl) % nx or nx)
    yspan = ny if flag == FULL_Y else ((yh - yl) % ny or ny)
    return EmptyBox(
        xa.values[xl], xa.values[xh], ya.values[yl], ya.values[yh],
        w, h, w * h, WRAP if wraps else INTERIOR,
        span=(xspan, yspan), key=key,
    )


def enumerate_maximal_periodic_boxes(P: PointSet) -> list[EmptyBox]:
    """All maximal empty periodic boxes on the torus, sorted by key."""
    keys, xa, ya = torus_box_keys(P)
    return [_torus_box(k, xa, ya) for k in sorted(keys)]


# --------------------------------------------------------------- dispersion


def _cmp_area(a, b) -> int:
    if isinstance(a, GoldenRational):
        return gr_cmp(a, b)
    if abs(a - b) <= FLOAT_TOL:
        return 0
    return -1 if a < b else 1


def _best(boxes: list[EmptyBox]) -> EmptyBox:
    best = None
    for b in boxes:
        if best is None:
            best = b
            continue
        c = _cmp_area(b.area, best.area)
        if c > 0 or (c == 0 and b.key < best.key):
            best = b
    return best


def dispersion(P: PointSet, keep_boxes: bool = False) -> DispersionResult:
    """Largest area of an empty box amidst ``P`` (exact for exact sets)."""
    boxes = enumerate_maximal_boxes(P)
    w = _best(boxes)
    return DispersionResult(w.area, w, P.backend, boxes if keep_boxes else None)


def torus_dispersion(P: PointSet, keep_boxes: bool = False) -> DispersionResult:
    """Largest area of an empty periodic box. A single point gives 1."""
    boxes = enumerate_maximal_periodic_boxes(P)
    w = _best(boxes)
    return DispersionResult(w.area, w, P.backend, boxes if keep_boxes else None)


# ------------------------------------------------------------ brute oracle


@dataclass
class OracleReport:
    ok: bool
    missing: list
    extra: list
    oracle_max: float
    reported_max: float
    counterexample: tuple | None = None


def _prefix_counts(ys: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    cnt = np.bincount(ys, minlength=n)
    pre = np.concatenate([[0], np.cumsum(cnt)])
    return cnt, pre


def _brute_standard_keys(P: PointSet) -> tuple[set, _Axis, _Axis]:
    xa, ya, pts = _standard_ranks(P)
    nx, ny = len(xa), len(ya)
    arr = np.array(pts, dtype=int).reshape(-1, 2)
    RX, RY = arr[:, 0], arr[:, 1]
    k = np.arange(ny)[:, None]
    l = np.arange(ny)[None, :]
    valid = k < l
    kp1 = np.minimum(k + 1, ny)
    lines = [_prefix_counts(RY[RX == i], ny)[1] for i in range(nx)]
    keys = set()
    for i in range(nx - 1):
        for j in range(i + 1, nx):
            cnt, pre = _prefix_counts(RY[(RX > i) & (RX < j)], ny)
            empty = (pre[l] - pre[kp1]) <= 0
            bottom = (k == 0) | (cnt[k] > 0)
            top = (l == ny - 1) | (cnt[l] > 0)
            left = np.ones_like(valid) if i == 0 else (lines[i][l] - lines[i][kp1]) > 0
            right = np.ones_like(valid) if j == nx - 1 else (lines[j][l] - lines[j][kp1]) > 0
            ok = valid & empty & bottom & top & left & right
            for a, b in zip(*np.nonzero(ok)):
                keys.add((i, j, int(a), int(b)))
    return keys, xa, ya


def _arc_count(pre: np.ndarray, cnt: np.ndarray, k: np.ndarray, l: np.ndarray) -> np.ndarray:
    """Points with rank strictly inside the cyclic arc (k, l)."""
    total = pre[-1]
    fwd = pre[l] - pre[np.minimum(k + 1, len(cnt))]
    back = (total - pre[k + 1]) + pre[l]
    full = total - cnt[k]
    return np.where(k < l, fwd, np.where(k > l, back, full))


def _brute_torus_keys(P: PointSet) -> tuple[set, _Axis, _Axis]:
    xa, ya, pts = _torus_ranks(P)
    nx, ny = len(xa), len(ya)
    arr = np.array(pts, dtype=int).reshape(-1, 2)
    RX, RY = arr[:, 0], arr[:, 1]
    k = np.repeat(np.arange(ny), ny).reshape(ny, ny)
    l = k.T
    line_counts = [_prefix_counts(RY[RX == i], ny) for i in range(nx)]
    line_distinct = [int(np.count_nonzero(c)) for c, _ in line_counts]
    line_min = [int(np.flatnonzero(c)[0]) for c, _ in line_counts]
    keys = set()
    for i in range(nx):
        for j in range(nx):
            if i < j:
                mask = (RX > i) & (RX < j)
            elif i > j:
                mask = (RX > i) | (RX < j)
            else:
                mask = RX != i
            cnt, pre = _prefix_counts(RY[mask], ny)
            if pre[-1] == 0:
                if i == j or (line_distinct[i] > 1 and line_distinct[j] > 1):
                    keys.add((i, j, line_min[i], line_min[i], FULL_Y))
                continue
            empty = _arc_count(pre, cnt, k, l) == 0
            sides = (cnt[k] > 0) & (cnt[l] > 0)
            lc, lp = line_counts[i]
            rc, rp = line_counts[j]
            left = _arc_count(lp, lc, k, l) > 0
            right = _arc_count(rp, rc, k, l) > 0
            ok = empty & sides & left & right
            for a, b in zip(*np.nonzero(ok)):
                keys.add((i, j, int(a), int(b), CUT))
    # whole x-circle: y-arcs with no point strictly inside
    ycnt, ypre = _prefix_counts(RY, ny)
    on_line = [set(RX[RY == r].tolist()) for r in range(ny)]
    for a in range(ny):
        for b in range(ny):
            if _arc_count(ypre, ycnt, np.array(a), np.array(b)) != 0:
                continue
            if a == b:
                ok = nx > 1
            else:
                ok = len(on_line[a]) > 1 and len(on_line[b]) > 1
            if ok:
                keys.add((min(on_line[a]), min(on_line[a]), a, b, FULL_X))
    return keys, xa, ya


def brute_force_boxes(P: PointSet, periodic: bool = False) -> list[EmptyBox]:
    """Maximal boxes by exhaustive search over all candidate bounds."""
    if periodic:
        keys, xa, ya = _brute_torus_keys(P)
        return [_torus_box(k, xa, ya) for k in sorted(keys)]
    keys, xa, ya = _brute_standard_keys(P)
    return [_standard_box(k, xa, ya) for k in sorted(keys)]


def verify_box_oracle(P: PointSet, boxes: list[EmptyBox], periodic: bool = False) -> OracleReport:
    """Compare a reported box list against the exhaustive search.

    Every reported box must be empty and maximal (it then appears in the
    exhaustive list) and every box of the exhaustive list must be reported.
    """
    truth = brute_force_boxes(P, periodic)
    want = {b.key: b for b in truth}
    have = {b.key: b for b in boxes}
    missing = sorted(set(want) - set(have))
    extra = sorted(set(have) - set(want))
    omax = _best(truth).area if truth else 0.0
    rmax = _best(boxes).area if boxes else 0.0
    same_max = _cmp_area(omax, rmax) == 0 if truth and boxes else not truth and not boxes
    first = None
    if missing:
        first = ("missing", missing[0])
    elif extra:
        first = ("extra", extra[0])
    elif not same_max:
        first = ("max", (float(omax), float(rmax)))
    return OracleReport(
        ok=not missing and not extra and same_max,
        missing=missing,
        extra=extra,
        oracle_max=float(omax),
        reported_max=float(rmax),
        counterexample=first,
    )


# ------------------------------------------------------- theorem checking


class Theorem1Violation(AssertionError):
    pass


@dataclass
class Theorem1Report:
    m: int
    target: GoldenRational
    n_interior: int
    n_exterior: int
    interior_ok: bool
    exterior_ok: bool
    dispersion_ok: bool
    asserted: bool
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.interior_ok and self.exterior_ok and self.dispersion_ok


def golden_area(m: int) -> GoldenRational:
    """phi^(3-m) as an exact GoldenRational (m >= 3)."""
    if m == 3:
        return GoldenRational(ONE, ONE)
    return GoldenRational(ONE, gi_phi_power(m - 3))


def classify_theorem1(m: int, P: PointSet | None = None, strict: bool = True) -> Theorem1Report:
    """Check that interior boxes of the modified lattice all have area
    phi^(3-m) and that exterior boxes are strictly smaller.

    For m < 5 the counts are reported but nothing is asserted. With
    ``strict`` a violation raises :class:`Theorem1Violation`.
    """
    if P is None:
        P = build_modified(m)
    if P.backend != "exact":
        raise ValueError("theorem check needs the exact backend")
    target = golden_area(m)
    boxes = enumerate_maximal_boxes(P)
    interior = [b for b in boxes if b.kind == INTERIOR]
    exterior = [b for b in boxes if b.kind == EXTERIOR]
    violations = []
    for b in interior:
        if gr_cmp(b.area, target) != 0:
            violations.append(("interior area differs", b))
    for b in exterior:
        if gr_cmp(b.area, target) >= 0:
            violations.append(("exterior area not smaller", b))
    disp_ok = gr_cmp(_best(boxes).area, target) == 0
    report = Theorem1Report(
        m=m,
        target=target,
        n_interior=len(interior),
        n_exterior=len(exterior),
        interior_ok=not any(v[0].startswith("interior") for v in violations),
        exterior_ok=not any(v[0].startswith("exterior") for v in violations),
        dispersion_ok=disp_ok,
        asserted=m >= 5,
        violations=violations,
    )
    if strict and report.asserted and not report.passed:
        raise Theorem1Violation(f"m={m}: {violations[:3]}")
    return report


def boxes_to_json(boxes: list[EmptyBox]) -> str:
    return json.dumps([b.to_dict() for b in boxes], indent=1)


def fibonacci_dispersion_formula(m: int) -> GoldenRational:
    """2 (F_m - 1) / F_m^2 as an exact value."""
    n = fib(m)
    return GoldenRational(GoldenInt(0, 2 * (n - 1)), GoldenInt(0, n * n))
