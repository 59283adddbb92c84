import json
import os

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from golden_disp.emptybox import (
    EXTERIOR,
    INTERIOR,
    WRAP,
    Theorem1Violation,
    boxes_to_json,
    brute_force_boxes,
    classify_theorem1,
    dispersion,
    enumerate_maximal_boxes,
    enumerate_maximal_periodic_boxes,
    fibonacci_dispersion_formula,
    golden_area,
    torus_dispersion,
    verify_box_oracle,
)
from golden_disp.golden import GoldenInt, GoldenRational, PHI, fib, gi_phi_power, gr_cmp
from golden_disp.lattices import (
    PointSet,
    build_fibonacci,
    build_modified,
    build_modified_prime,
    build_rotated_grid,
    remove_origin,
)


def fpts(*pts):
    return PointSet([tuple(map(float, p)) for p in pts], "float")


def naive_dispersion(arr: np.ndarray) -> float:
    """Largest empty open box by scanning all candidate bounds (O(N^5))."""
    inner = arr[(arr > 0).all(axis=1) & (arr < 1).all(axis=1)]
    xs = sorted(set(inner[:, 0]) | {0.0, 1.0})
    ys = sorted(set(inner[:, 1]) | {0.0, 1.0})
    best = 0.0
    for i, a in enumerate(xs):
        for b in xs[i + 1:]:
            for j, c in enumerate(ys):
                for d in ys[j + 1:]:
                    area = (b - a) * (d - c)
                    if area <= best:
                        continue
                    hit = ((inner[:, 0] > a) & (inner[:, 0] < b)
                           & (inner[:, 1] > c) & (inner[:, 1] < d)).any()
                    if not hit:
                        best = area
    return best


def naive_torus_dispersion(arr: np.ndarray) -> float:
    """Largest empty periodic box by scanning all arc bounds."""
    arr = np.mod(arr, 1.0)

    def arcs(vals):
        vals = sorted(set(vals))
        for a in vals:
            for b in vals:
                yield a, (b - a) % 1.0 or 1.0
        # a whole circle with no excluded line
        yield 0.0, None

    def inside(v, a, length):
        if length is None:
            return np.ones(len(v), bool)
        d = np.mod(v - a, 1.0)
        return (d > 0) & (d < length)

    best = 0.0
    for a, w in arcs(arr[:, 0]):
        ix = inside(arr[:, 0], a, w)
        for c, h in arcs(arr[:, 1]):
            area = (1.0 if w is None else w) * (1.0 if h is None else h)
            if area > best and not (ix & inside(arr[:, 1], c, h)).any():
                best = area
    return best


# ------------------------------------------------------------- examples


def test_empty_set_gives_unit_box():
    boxes = enumerate_maximal_boxes(PointSet([], "float"))
    assert len(boxes) == 1
    b = boxes[0]
    assert (b.x_lo, b.x_hi, b.y_lo, b.y_hi, b.area, b.kind) == (0.0, 1.0, 0.0, 1.0, 1.0, EXTERIOR)
    assert dispersion(PointSet([], "exact")).value == GoldenRational(1, 1)


def test_single_center_point():
    boxes = enumerate_maximal_boxes(fpts((0.5, 0.5)))
    assert len(boxes) == 4
    assert all(b.area == 0.5 and b.kind == EXTERIOR for b in boxes)


def test_fibonacci_interior_box_shapes():
    m = 9
    n = fib(m)
    shapes = set()
    for b in enumerate_maximal_boxes(build_fibonacci(m)):
        if b.kind == INTERIOR:
            shapes.add((b.width * n, b.height * n))
    want = {(GoldenRational(fib(k), 1), GoldenRational(fib(m - k + 3), 1)) for k in range(4, m)}
    assert shapes == want


def test_dispersion_examples():
    d8 = dispersion(build_fibonacci(8)).value
    assert d8 == GoldenRational(40, 441)
    assert float(d8) == pytest.approx(0.0907029, abs=1e-7)
    d7 = dispersion(build_modified(7)).value
    assert d7 == GoldenRational(1, gi_phi_power(4))
    assert float(d7) == pytest.approx(0.1458980, abs=1e-7)
    assert 12 * float(d7) == pytest.approx(1.75078, abs=5e-6)
    assert float(dispersion(remove_origin(build_modified_prime(5))).value) == pytest.approx(0.25, abs=1e-12)


def test_torus_examples():
    P = fpts((0.5, 0.5))
    res = torus_dispersion(P)
    assert res.value == 1.0
    w = res.witness
    assert (w.x_lo, w.x_hi, w.y_lo, w.y_hi) == (0.5, 0.5, 0.5, 0.5)
    assert w.kind == WRAP
    assert torus_dispersion(build_fibonacci(7)).value == GoldenRational(2, 13)
    with pytest.raises(ValueError):
        torus_dispersion(PointSet([], "float"))


def test_torus_full_width_band():
    # both points on one horizontal line: the torus minus that line is empty
    P = fpts((0.5, 0.0), (0.0, 0.0))
    res = torus_dispersion(P, keep_boxes=True)
    assert res.value == 1.0
    assert verify_box_oracle(P, res.all_maximal, periodic=True).ok
    two_rows = fpts((0.1, 0.2), (0.6, 0.2), (0.3, 0.7), (0.8, 0.7))
    assert torus_dispersion(two_rows).value == pytest.approx(0.5)


def test_torus_modified_five_matches_brute_force():
    P = build_modified(5)
    res = torus_dispersion(P, keep_boxes=True)
    assert isinstance(res.value, GoldenRational)
    rep = verify_box_oracle(P, res.all_maximal, periodic=True)
    assert rep.ok, rep.counterexample


def test_proposition_span_law_small():
    m = 9
    allowed = {(fib(k), fib(m - k + 3)) for k in range(3, m + 1)}
    for b in enumerate_maximal_periodic_boxes(build_modified(m)):
        assert b.span in allowed


def test_boundary_points_never_block():
    assert dispersion(fpts((0.0, 0.5), (0.5, 1.0), (1.0, 0.3))).value == 1.0


def test_duplicates_are_ignored():
    a = dispersion(fpts((0.3, 0.4), (0.7, 0.2)))
    b = dispersion(fpts((0.3, 0.4), (0.3, 0.4), (0.7, 0.2)))
    assert a.value == b.value


def test_shared_coordinates():
    P = fpts((0.25, 0.5), (0.75, 0.5), (0.5, 0.25), (0.5, 0.75), (0.25, 0.25))
    for periodic in (False, True):
        boxes = (enumerate_maximal_periodic_boxes if periodic else enumerate_maximal_boxes)(P)
        assert verify_box_oracle(P, boxes, periodic=periodic).ok


def test_classify_theorem1_examples():
    r5 = classify_theorem1(5)
    assert r5.passed and r5.asserted and r5.n_interior >= 1
    assert r5.target == GoldenRational(1, gi_phi_power(2))
    r9 = classify_theorem1(9)
    assert r9.passed and r9.target == GoldenRational(1, gi_phi_power(6))
    r4 = classify_theorem1(4)
    assert not r4.asserted


def test_classify_theorem1_names_violations():
    # the plain Fibonacci lattice does not have equal interior boxes
    with pytest.raises(Theorem1Violation):
        classify_theorem1(9, P=build_fibonacci(9))


def test_fault_injection_detected():
    P = build_modified(7)
    boxes = enumerate_maximal_boxes(P)
    assert verify_box_oracle(P, boxes).ok
    mutated = boxes[:3] + boxes[4:]
    rep = verify_box_oracle(P, mutated)
    assert not rep.ok and rep.counterexample[0] == "missing"
    assert rep.missing == [boxes[3].key]


def test_json_report():
    boxes = enumerate_maximal_boxes(build_modified(5))
    doc = json.loads(boxes_to_json(boxes))
    assert len(doc) == len(boxes)
    assert set(doc[0]) >= {"x_lo", "x_hi", "y_lo", "y_hi", "area", "class", "span", "exact"}


def test_fibonacci_formula_footnote():
    for m in range(8, 14):
        assert dispersion(build_fibonacci(m)).value == fibonacci_dispersion_formula(m)
    assert gr_cmp(dispersion(build_fibonacci(7)).value, fibonacci_dispersion_formula(7)) > 0


def test_rotated_grid_dispersion_small():
    target = PHI**4 / (PHI**2 + 1)
    assert 100 * float(dispersion(build_rotated_grid(10)).value) == pytest.approx(target, rel=1e-9)


def test_parallel_matches_serial(monkeypatch):
    P = build_modified(13, "float")
    serial = {b.key for b in enumerate_maximal_boxes(P)}
    monkeypatch.setenv("GOLDEN_DISP_THREADS", "2")
    assert {b.key for b in enumerate_maximal_boxes(P)} == serial


# ------------------------------------------------------------ properties


def random_sets(count, seed, nmax=12):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, nmax + 1))
        yield rng.random((n, 2))


def test_sweep_against_naive_scan():
    for arr in random_sets(60, 11, nmax=9):
        assert float(dispersion(PointSet.from_array(arr)).value) == pytest.approx(naive_dispersion(arr), abs=1e-14)


def test_torus_sweep_against_naive_scan():
    for arr in random_sets(40, 12, nmax=7):
        got = float(torus_dispersion(PointSet.from_array(arr)).value)
        assert got == pytest.approx(naive_torus_dispersion(arr), abs=1e-14)
    rng = np.random.default_rng(13)
    for _ in range(40):
        arr = rng.integers(0, 4, size=(int(rng.integers(1, 8)), 2)) / 4.0
        got = float(torus_dispersion(PointSet.from_array(arr)).value)
        assert got == pytest.approx(naive_torus_dispersion(arr), abs=1e-14)


def test_grid_like_sets_with_ties():
    rng = np.random.default_rng(5)
    for _ in range(60):
        arr = rng.integers(0, 6, size=(int(rng.integers(1, 12)), 2)) / 5.0
        P = PointSet.from_array(arr)
        assert verify_box_oracle(P, enumerate_maximal_boxes(P)).ok
        assert verify_box_oracle(P, enumerate_maximal_periodic_boxes(P), periodic=True).ok
        assert float(dispersion(P).value) == pytest.approx(naive_dispersion(arr), abs=1e-14)


coords = st.floats(0.0, 1.0, allow_nan=False).map(lambda v: round(v, 3))
point_lists = st.lists(st.tuples(coords, coords), min_size=1, max_size=10)


@settings(max_examples=150, deadline=None)
@given(point_lists, st.tuples(coords, coords))
def test_adding_a_point_never_increases_dispersion(pts, extra):
    before = dispersion(PointSet(pts, "float")).value
    after = dispersion(PointSet(pts + [extra], "float")).value
    assert after <= before + 1e-12
    tb = torus_dispersion(PointSet(pts, "float")).value
    ta = torus_dispersion(PointSet(pts + [extra], "float")).value
    assert ta <= tb + 1e-12


@settings(max_examples=150, deadline=None)
@given(point_lists)
def test_standard_at_most_torus_and_lower_bounds(pts):
    P = PointSet(pts, "float")
    n = len(P)
    d = dispersion(P).value
    t = torus_dispersion(P).value
    assert d <= t + 1e-12
    assert d >= max(1 / (n + 1), 5 / (4 * (n + 5))) - 1e-12
    # a box never exceeds the unit area, so the 2/N bound caps at 1
    assert t >= min(1.0, 2 / n) - 1e-12


@settings(max_examples=100, deadline=None)
@given(point_lists)
def test_every_box_is_empty(pts):
    arr = np.array(pts)
    for b in enumerate_maximal_boxes(PointSet(pts, "float")):
        inside = ((arr[:, 0] > b.x_lo) & (arr[:, 0] < b.x_hi)
                  & (arr[:, 1] > b.y_lo) & (arr[:, 1] < b.y_hi))
        assert not inside.any()
        assert b.area == pytest.approx((b.x_hi - b.x_lo) * (b.y_hi - b.y_lo))
