"""Integral Weierstrass curves over Q with an exact affine group law.

Points are affine pairs of Fractions, or ``INFINITY``. For any affine point on
an integral model the x-denominator is a square z**2 and the y-denominator is
z**3; ``denom_form`` extracts the triple (x(P), y(P), z(P)) and checks that.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import gcd, isqrt_exact
from .errors import InfinityHasNoDenominator, MalformedPoint, NotOnCurve, SingularCurve

__all__ = [
    "CurveModel",
    "Point",
    "INFINITY",
    "DenomTriple",
    "make_curve",
    "on_curve",
    "negate",
    "add",
    "scalar_mul",
    "denom_form",
    "point_order",
]


@dataclass(frozen=True)
class CurveModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    b2: int = field(init=False)
    b4: int = field(init=False)
    b6: int = field(init=False)
    b8: int = field(init=False)
    c4: int = field(init=False)
    c6: int = field(init=False)
    disc: int = field(init=False)

    def __post_init__(self):
        a1, a2, a3, a4, a6 = self.a_invariants
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        c4 = b2 * b2 - 24 * b4
        c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
        disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        for name, value in dict(b2=b2, b4=b4, b6=b6, b8=b8, c4=c4, c6=c6, disc=disc).items():
            object.__setattr__(self, name, value)

    @property
    def a_invariants(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __str__(self):
        return f"EllipticCurve({list(self.a_invariants)})"


@dataclass(frozen=True)
class Point:
    """An affine point, or the point at infinity when both coordinates are None."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @classmethod
    def affine(cls, x, y) -> "Point":
        return cls(Fraction(x), Fraction(y))

    def __repr__(self):
        if self.is_infinity:
            return "Point(O)"
        return f"Point({self.x}, {self.y})"


INFINITY = Point()


@dataclass(frozen=True)
class DenomTriple:
    """(x(P), y(P), z(P)) with P = (x/z^2, y/z^3) in lowest terms."""

    x: int
    y: int
    z: int

    def check(self, curve: CurveModel) -> bool:
        """True iff z >= 1, both gcds are 1 and the weighted-homogeneous equation holds."""
        x, y, z = self.x, self.y, self.z
        if z < 1 or gcd(x, z) != 1 or gcd(y, z) != 1:
            return False
        a1, a2, a3, a4, a6 = curve.a_invariants
        z2 = z * z
        lhs = y * y + a1 * x * y * z + a3 * y * z * z2
        rhs = x**3 + a2 * x * x * z2 + a4 * x * z2 * z2 + a6 * z2**3
        return lhs == rhs

    def point(self) -> Point:
        return Point(Fraction(self.x, self.z**2), Fraction(self.y, self.z**3))


def make_curve(a1: int, a2: int, a3: int, a4: int, a6: int) -> CurveModel:
    C = CurveModel(int(a1), int(a2), int(a3), int(a4), int(a6))
    if C.disc == 0:
        raise SingularCurve(f"{C} has discriminant 0")
    return C


def on_curve(C: CurveModel, P: Point) -> bool:
    if P.is_infinity:
        return True
    x, y = P.x, P.y
    return y * y + C.a1 * x * y + C.a3 * y == x**3 + C.a2 * x * x + C.a4 * x + C.a6


def _require(C, *points):
    for P in points:
        if not on_curve(C, P):
            raise NotOnCurve(f"{P!r} is not on {C}")


def _neg(C, P):
    if P.is_infinity:
        return P
    return Point(P.x, -P.y - C.a1 * P.x - C.a3)


def _add(C, P, Q):
    # Unchecked chord-and-tangent; callers guarantee both points lie on C.
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        denom = y1 + y2 + C.a1 * x2 + C.a3
        if denom == 0:
            return INFINITY
        # x1 == x2 and not opposite, so P == Q
        lam = (3 * x1 * x1 + 2 * C.a2 * x1 + C.a4 - C.a1 * y1) / denom
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + C.a1 * lam - C.a2 - x1 - x2
    y3 = -(lam + C.a1) * x3 - nu - C.a3
    return Point(x3, y3)


def _mul(C, n, P):
    if n < 0:
        return _neg(C, _mul(C, -n, P))
    R = INFINITY
    for bit in bin(n)[2:]:
        R = _add(C, R, R)
        if bit == "1":
            R = _add(C, R, P)
    return R


def negate(C: CurveModel, P: Point) -> Point:
    _require(C, P)
    return _neg(C, P)


def add(C: CurveModel, P: Point, Q: Point) -> Point:
    """Group law on the general Weierstrass model, identity INFINITY.

    When P == Q the tangent slope divides by 2y + a1 x + a3; that quantity is
    zero exactly for 2-torsion points, and then the sum is INFINITY.
    """
    _require(C, P, Q)
    return _add(C, P, Q)


def scalar_mul(C: CurveModel, n: int, P: Point) -> Point:
    """n*P by left-to-right double-and-add; negative n goes through negate."""
    _require(C, P)
    return _mul(C, n, P)


def point_order(C: CurveModel, P: Point, bound: int = 12) -> Optional[int]:
    """Order of P if it is at most ``bound``, else None."""
    R = P
    for k in range(1, bound + 1):
        if R.is_infinity:
            return k
        R = _add(C, R, P)
    return None


def denom_form(C: CurveModel, P: Point) -> DenomTriple:
    if P.is_infinity:
        raise InfinityHasNoDenominator("z(O) is undefined")
    _require(C, P)
    z, exact = isqrt_exact(P.x.denominator)
    if not exact:
        raise MalformedPoint(f"x-denominator of {P!r} is not a square")
    if P.y.denominator != z**3:
        raise MalformedPoint(f"y-denominator of {P!r} is not z^3 for z = {z}")
    return DenomTriple(P.x.numerator, P.y.numerator, z)
