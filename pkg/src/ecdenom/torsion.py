"""Rational torsion subgroup via Nagell-Lutz on a scaled short Weierstrass model."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import factor
from .curve import INFINITY, CurveModel, Point, _add, _neg, on_curve, point_order
from .errors import InvariantViolation

__all__ = ["ShortModel", "TorsionGroup", "to_short", "torsion_subgroup", "integer_roots_of_cubic"]

MAZUR_MAX_ORDER = 12


@dataclass(frozen=True)
class ShortModel:
    """Y^2 = X^3 + A X + B with X = 36x + 3b2, Y = 108(2y + a1 x + a3)."""

    A: int
    B: int
    source: CurveModel

    @property
    def curve(self) -> CurveModel:
        return CurveModel(0, 0, 0, self.A, self.B)

    @property
    def disc(self) -> int:
        """4A^3 + 27B^2 (the sign convention Nagell-Lutz is usually stated with)."""
        return 4 * self.A**3 + 27 * self.B**2

    def forward(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        C = self.source
        return Point(36 * P.x + 3 * C.b2, 108 * (2 * P.y + C.a1 * P.x + C.a3))

    def inverse(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        C = self.source
        x = (P.x - 3 * C.b2) / 36
        y = (P.y / 108 - C.a1 * x - C.a3) / 2
        return Point(x, y)


def to_short(C: CurveModel) -> ShortModel:
    S = ShortModel(-27 * C.c4, -54 * C.c6, C)
    if S.disc == 0:
        raise InvariantViolation(f"short model of {C} is singular")
    return S


@dataclass(frozen=True)
class TorsionGroup:
    """The torsion points, INFINITY first, plus the abstract structure.

    ``invariants`` is (n,) for a cyclic group of order n and (2, 2m) for Z/2 x Z/2m.
    """

    points: tuple[Point, ...]
    invariants: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.points)

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariants) == 1

    def index_of(self, P: Point) -> int:
        return self.points.index(P)

    def describe(self) -> str:
        if self.order == 1:
            return "trivial"
        return " x ".join(f"Z/{n}" for n in self.invariants)


def trivial_torsion() -> TorsionGroup:
    return TorsionGroup((INFINITY,), (1,))


def integer_roots_of_cubic(p: int, q: int) -> list[int]:
    """Integer roots of X^3 + pX + q, by exact bisection on each monotone piece."""

    def f(x):
        return x**3 + p * x + q

    def bisect(lo, hi, sign):
        # sign * f is non-decreasing on [lo, hi]
        if lo > hi or sign * f(lo) > 0 or sign * f(hi) < 0:
            return None
        while lo < hi:
            mid = (lo + hi) // 2
            if sign * f(mid) < 0:
                lo = mid + 1
            else:
                hi = mid
        return lo if f(lo) == 0 else None

    # Cauchy bound on the real roots
    bound = 1 + max(abs(p), abs(q))
    if p >= 0:
        pieces = [(-bound, bound, 1)]
    else:
        # critical points +-c with r <= c < r + 1
        r = math.isqrt(-p // 3)
        pieces = [(-bound, -r - 1, 1), (-r, r, -1), (r + 1, bound, 1)]
    roots = {bisect(lo, hi, sign) for lo, hi, sign in pieces}
    return sorted(x for x in roots if x is not None)


def _structure(points, curve) -> tuple[int, ...]:
    n = len(points)
    orders = [point_order(curve, P, MAZUR_MAX_ORDER) for P in points]
    if None in orders:
        raise InvariantViolation("torsion candidate without finite order")
    if max(orders) == n:
        return (n,)
    if n % 2 or max(orders) != n // 2:
        raise InvariantViolation(f"torsion of order {n} has no Mazur structure")
    return (2, n // 2)


def torsion_subgroup(C: CurveModel) -> TorsionGroup:
    """Compute E(Q)_tors for the integral model C.

    Candidates on the short model are INFINITY, the integral points with Y = 0,
    and the integral points with Y^2 dividing the discriminant. A candidate is
    kept iff k * P = O for some k <= 12. The discriminant of the short model is
    -2^8 3^12 disc(C), so only disc(C) has to be factored.
    """
    S = to_short(C)
    E = S.curve
    fact = factor(abs(C.disc))
    fact[2] = fact.get(2, 0) + 8
    fact[3] = fact.get(3, 0) + 12
    ys = [1]
    for p, e in sorted(fact.items()):
        ys = [y * p**k for y in ys for k in range(e // 2 + 1)]

    found = [INFINITY]
    for Y in [0] + sorted(ys):
        for X in integer_roots_of_cubic(S.A, S.B - Y * Y):
            for sY in {Y, -Y}:
                P = Point(Fraction(X), Fraction(sY))
                if point_order(E, P, MAZUR_MAX_ORDER) is not None:
                    found.append(P)

    back = [S.inverse(P) for P in found]
    for P in back:
        if not on_curve(C, P):
            raise InvariantViolation(f"torsion point {P!r} did not map back onto {C}")
    affine = sorted(back[1:], key=lambda P: (P.x, P.y))
    points = (INFINITY, *affine)
    group = TorsionGroup(points, _structure(points, C))
    _check_closed(C, group)
    return group


def _check_closed(C, group):
    members = set(group.points)
    for P in group.points:
        if _neg(C, P) not in members:
            raise InvariantViolation("torsion set not closed under negation")
        for Q in group.points:
            if _add(C, P, Q) not in members:
                raise InvariantViolation("torsion set not closed under addition")
