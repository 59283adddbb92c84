"""Exact arithmetic in Z[phi] and Q(phi), plus Fibonacci helpers.

Every coordinate of the modified Fibonacci lattice is a quotient of two
elements ``a*phi + b`` with integer ``a`` and ``b``. Python integers are
arbitrary precision, so nothing here can overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, total_ordering

PHI = (1.0 + math.sqrt(5.0)) / 2.0
INV_PHI = PHI - 1.0


@lru_cache(maxsize=None)
def fib(n: int) -> int:
    """Return the Fibonacci number F_n with F_1 = F_2 = 1."""
    if n < 1:
        raise ValueError(f"fib requires n >= 1, got {n}")
    a, b = 0, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return b


def _sign_int(v: int) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class GoldenInt:
    """The number ``a*phi + b`` with integer coefficients.

    Representation is unique because phi is irrational, so the dataclass
    equality and hash are the mathematical ones.
    """

    a: int
    b: int

    def __add__(self, other: GoldenInt | int) -> GoldenInt:
        other = _as_gi(other)
        if other is NotImplemented:
            return NotImplemented
        return GoldenInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other: GoldenInt | int) -> GoldenInt:
        other = _as_gi(other)
        if other is NotImplemented:
            return NotImplemented
        return GoldenInt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other: int) -> GoldenInt:
        return _as_gi(other) - self

    def __neg__(self) -> GoldenInt:
        return GoldenInt(-self.a, -self.b)

    def __mul__(self, other: GoldenInt | int) -> GoldenInt:
        other = _as_gi(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        # phi^2 = phi + 1
        ac = a * c
        return GoldenInt(ac + a * d + b * c, ac + b * d)

    __rmul__ = __mul__

    def __truediv__(self, other: GoldenInt | int) -> GoldenRational:
        return GoldenRational(self, _as_gi(other))

    def conjugate(self) -> GoldenInt:
        """Galois conjugate, obtained by replacing phi with 1 - phi."""
        return GoldenInt(-self.a, self.a + self.b)

    def norm(self) -> int:
        """Field norm ``x * conjugate(x)``, an ordinary integer."""
        a, b = self.a, self.b
        return b * b + a * b - a * a

    def sign(self) -> int:
        return gi_sign(self)

    def __float__(self) -> float:
        return gi_to_float(self)

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __lt__(self, other: GoldenInt | int) -> bool:
        return gi_sign(self - other) < 0

    def __le__(self, other: GoldenInt | int) -> bool:
        return gi_sign(self - other) <= 0

    def __gt__(self, other: GoldenInt | int) -> bool:
        return gi_sign(self - other) > 0

    def __ge__(self, other: GoldenInt | int) -> bool:
        return gi_sign(self - other) >= 0

    def __str__(self) -> str:
        return f"{self.a}*phi+{self.b}" if self.b >= 0 else f"{self.a}*phi-{-self.b}"

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b}


def _as_gi(x) -> GoldenInt:
    if isinstance(x, GoldenInt):
        return x
    if isinstance(x, int):
        return GoldenInt(0, x)
    return NotImplemented


ZERO = GoldenInt(0, 0)
ONE = GoldenInt(0, 1)
PHI_GI = GoldenInt(1, 0)
INV_PHI_GI = GoldenInt(1, -1)


def gi_add(x: GoldenInt, y: GoldenInt) -> GoldenInt:
    return x + y


def gi_mul(x: GoldenInt, y: GoldenInt) -> GoldenInt:
    return x * y


def gi_sign(x: GoldenInt) -> int:
    """Exact sign of ``a*phi + b`` as -1, 0 or 1.

    Uses ``2(a*phi + b) = a*sqrt(5) + (a + 2b)`` and compares squares
    when the two terms disagree in sign.
    """
    a = x.a
    c = a + 2 * x.b
    if a >= 0 and c >= 0:
        return 0 if (a == 0 and c == 0) else 1
    if a <= 0 and c <= 0:
        return -1
    five_a2 = 5 * a * a
    c2 = c * c
    # five_a2 == c2 is impossible for nonzero a (sqrt(5) irrational)
    return _sign_int(a) if five_a2 > c2 else _sign_int(c)


def gi_phi_power(n: int) -> GoldenInt:
    """Return phi**n for n >= -1 as ``F_n*phi + F_(n-1)``."""
    if n < -1:
        raise ValueError(f"gi_phi_power requires n >= -1, got {n}")
    if n == -1:
        return INV_PHI_GI
    if n == 0:
        return ONE
    if n == 1:
        return PHI_GI
    return GoldenInt(fib(n), fib(n - 1))


def gi_to_float(x: GoldenInt) -> float:
    """Evaluate ``a*phi + b`` to near full double precision.

    When ``a`` and ``b`` have opposite signs the direct sum cancels, so the
    value is recovered from the exact norm divided by the conjugate, which
    does not cancel in that case.
    """
    a, b = x.a, x.b
    if a == 0:
        return float(b)
    if (a > 0) == (b > 0) or b == 0:
        return a * PHI + b
    conj = b - a * INV_PHI
    return x.norm() / conj


@total_ordering
class GoldenRational:
    """Quotient ``num / den`` of GoldenInts with ``den > 0``.

    No reduction is performed on construction. Equality and ordering are
    decided by cross multiplication; hashing goes through a canonical
    ``(p*phi + q) / n`` form so equal values hash equally.
    """

    __slots__ = ("num", "den", "_canon")

    def __init__(self, num: GoldenInt | int, den: GoldenInt | int = 1):
        num = _as_gi(num)
        den = _as_gi(den)
        s = gi_sign(den)
        if s == 0:
            raise ZeroDivisionError("GoldenRational with zero denominator")
        if s < 0:
            num, den = -num, -den
        self.num = num
        self.den = den
        self._canon = None

    def canonical(self) -> tuple[int, int, int]:
        """Return ``(p, q, n)`` with value ``(p*phi + q)/n``, n > 0, gcd 1."""
        if self._canon is None:
            top = self.num * self.den.conjugate()
            n = self.den.norm()
            p, q = top.a, top.b
            if n < 0:
                p, q, n = -p, -q, -n
            g = math.gcd(math.gcd(p, q), n)
            self._canon = (p // g, q // g, n // g)
        return self._canon

    def _coerce(self, other) -> GoldenRational:
        if isinstance(other, GoldenRational):
            return other
        if isinstance(other, (GoldenInt, int)):
            return GoldenRational(other, 1)
        return NotImplemented

    def __add__(self, other) -> GoldenRational:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return GoldenRational(self.num + o.num, self.den)
        return GoldenRational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> GoldenRational:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return GoldenRational(self.num - o.num, self.den)
        return GoldenRational(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other) -> GoldenRational:
        return self._coerce(other) - self

    def __neg__(self) -> GoldenRational:
        return GoldenRational(-self.num, self.den)

    def __mul__(self, other) -> GoldenRational:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GoldenRational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> GoldenRational:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GoldenRational(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> GoldenRational:
        return self._coerce(other) / self

    def sign(self) -> int:
        return gi_sign(self.num)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return gr_cmp(self, o) == 0

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return gr_cmp(self, o) < 0

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __float__(self) -> float:
        return gi_to_float(self.num) / gi_to_float(self.den)

    def __repr__(self) -> str:
        return f"GoldenRational({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        return f"{self.num} / {self.den}"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def gr_cmp(x: GoldenRational, y: GoldenRational) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    if x.den == y.den:
        return gi_sign(x.num - y.num)
    return gi_sign(x.num * y.den - y.num * x.den)


def gr_from_int_ratio(p: int, q: int) -> GoldenRational:
    return GoldenRational(GoldenInt(0, p), GoldenInt(0, q))
