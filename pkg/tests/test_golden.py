import random

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from golden_disp.golden import (
    GoldenInt,
    GoldenRational,
    fib,
    gi_add,
    gi_mul,
    gi_phi_power,
    gi_sign,
    gi_to_float,
    gr_cmp,
)

mpmath.mp.dps = 60
MP_PHI = (1 + mpmath.sqrt(5)) / 2


def mp_value(x: GoldenInt):
    return x.a * MP_PHI + x.b


def test_add_examples():
    assert gi_add(GoldenInt(1, 0), GoldenInt(0, 1)) == GoldenInt(1, 1)
    assert gi_add(GoldenInt(3, 2), GoldenInt(-3, -2)) == GoldenInt(0, 0)
    assert gi_add(GoldenInt(2, 1), GoldenInt(1, 1)) == gi_phi_power(4)
    assert gi_add(GoldenInt(2, 1), GoldenInt(1, 1)) == GoldenInt(3, 2)


def test_mul_examples():
    assert gi_mul(GoldenInt(1, 0), GoldenInt(1, 0)) == GoldenInt(1, 1)
    assert gi_mul(GoldenInt(1, 0), GoldenInt(1, -1)) == GoldenInt(0, 1)
    assert gi_mul(GoldenInt(2, 1), GoldenInt(2, 1)) == GoldenInt(8, 5)
    assert gi_mul(GoldenInt(2, 1), GoldenInt(2, 1)) == gi_phi_power(6)


def test_sign_examples():
    assert gi_sign(GoldenInt(0, 0)) == 0
    assert mp_value(GoldenInt(-1, 2)) > 0
    assert gi_sign(GoldenInt(-1, 2)) == 1
    assert gi_sign(GoldenInt(1, -2)) == -1


def test_phi_power_examples():
    assert gi_phi_power(4) == GoldenInt(3, 2)
    assert gi_phi_power(0) == GoldenInt(0, 1)
    assert gi_phi_power(1) == GoldenInt(1, 0)
    assert gi_phi_power(-1) == GoldenInt(1, -1)
    p = GoldenInt(1, 0)
    for _ in range(8):
        p = p * GoldenInt(1, 0)
    assert gi_phi_power(9) == p == GoldenInt(34, 21)
    with pytest.raises(ValueError):
        gi_phi_power(-2)


def test_fib_examples():
    assert fib(7) == 13
    assert fib(1) == fib(2) == 1
    a, b = 1, 1
    for _ in range(28):
        a, b = b, a + b
    assert fib(30) == b == 832040
    with pytest.raises(ValueError):
        fib(0)


def test_cmp_examples():
    phi = GoldenInt(1, 0)
    assert gr_cmp(GoldenRational(phi, phi), GoldenRational(1, 1)) == 0
    d = gi_phi_power(4)
    assert gr_cmp(GoldenRational(GoldenInt(2, 1), d), GoldenRational(GoldenInt(3, 1), d)) == -1
    inv_phi2 = GoldenRational(1, gi_phi_power(2))
    assert float(mpmath.mpf(1) / MP_PHI**2) < 0.4
    assert gr_cmp(inv_phi2, GoldenRational(2, 5)) == -1


def test_to_float_examples():
    assert gi_to_float(GoldenInt(0, 1)) == 1.0
    assert gi_to_float(GoldenInt(1, 0)) == 1.618033988749895
    assert gi_to_float(GoldenInt(3, 2)) == pytest.approx(float(mp_value(GoldenInt(3, 2))), rel=1e-15)
    assert gi_to_float(GoldenInt(3, 2)) == pytest.approx(6.854101966249685, rel=1e-15)


def test_to_float_no_cancellation():
    # F_n*phi - F_(n+1) = -(-1/phi)^n is tiny
    for n in range(2, 70):
        x = GoldenInt(fib(n), -fib(n + 1))
        assert gi_to_float(x) == pytest.approx(float(mp_value(x)), rel=1e-13)
        assert np.sign(gi_to_float(x)) == gi_sign(x)


def test_text_rendering():
    assert str(GoldenInt(3, 2)) == "3*phi+2"
    assert str(GoldenInt(1, -1)) == "1*phi-1"
    assert str(GoldenRational(GoldenInt(3, 2), GoldenInt(0, 5))) == "3*phi+2 / 0*phi+5"


def test_power_identity():
    for m in range(2, 41):
        assert gi_phi_power(m) == gi_mul(gi_phi_power(1), gi_phi_power(m - 1))


def test_fibonacci_identities():
    for m in range(3, 41):
        assert fib(m - 2) ** 2 + fib(m) ** 2 - 3 * fib(m) * fib(m - 2) == (-1) ** m
    for m in range(4, 32):
        for k in range(3, m):
            assert fib(k) * fib(m - 2) - fib(k - 2) * fib(m) == (-1) ** k * fib(m - k)


def test_sign_matches_float_on_random_inputs():
    rng = np.random.default_rng(20240601)
    ab = rng.integers(-10**9, 10**9 + 1, size=(10**6, 2))
    phi = (1 + 5**0.5) / 2
    for a, b in ab.tolist():
        s = gi_sign(GoldenInt(a, b))
        v = a * phi + b
        assert s == (v > 0) - (v < 0)


def test_sign_near_cancellation_against_mpmath():
    rng = random.Random(7)
    for _ in range(2000):
        n = rng.randrange(2, 70)
        a = fib(n) * rng.choice([-1, 1])
        b = -a * fib(n + 1) // fib(n) + rng.choice([-1, 0, 1])
        x = GoldenInt(a, b)
        assert gi_sign(x) == int(mpmath.sign(mp_value(x)))
        assert (gi_to_float(x) > 0) - (gi_to_float(x) < 0) == gi_sign(x)


gis = st.builds(GoldenInt, st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
pos_gis = gis.filter(lambda g: gi_sign(g) > 0)
grs = st.builds(GoldenRational, gis, pos_gis)


@settings(max_examples=300, deadline=None)
@given(grs, grs)
def test_cmp_antisymmetric(x, y):
    assert gr_cmp(x, y) == -gr_cmp(y, x)
    assert (gr_cmp(x, y) == 0) == (x == y)


@settings(max_examples=300, deadline=None)
@given(grs, grs, grs)
def test_cmp_transitive(x, y, z):
    if gr_cmp(x, y) <= 0 and gr_cmp(y, z) <= 0:
        assert gr_cmp(x, z) <= 0


@settings(max_examples=300, deadline=None)
@given(grs, grs, pos_gis)
def test_cmp_invariant_under_scaling(x, y, c):
    scaled = GoldenRational(x.num * c, x.den * c)
    assert gr_cmp(scaled, y) == gr_cmp(x, y)
    assert scaled == x and hash(scaled) == hash(x)


@settings(max_examples=200, deadline=None)
@given(gis, gis)
def test_ring_ops_match_floats(x, y):
    assert float(x * y) == pytest.approx(float(x) * float(y), rel=1e-9, abs=1e-3)
    assert x + y - y == x
