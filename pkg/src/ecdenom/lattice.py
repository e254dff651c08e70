"""Enumeration of points n.P + S with bounded denominator.

Vectors n are visited in max-norm shells. Every nonzero n is k*d for a unique
primitive d (first nonzero coordinate positive, up to sign), so each primitive
direction is a ray that is advanced by one group addition whenever its next
multiple falls into the current shell. The negative half of each shell is
mirrored with ``negate``, since z(-P) = z(P).
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .curve import INFINITY, CurveModel, DenomTriple, Point, _add, _mul, _neg, denom_form, on_curve, point_order
from .errors import EmptyBasis, GeneratorNotOnCurve, InsufficientData, TorsionGenerator
from .torsion import TorsionGroup, trivial_torsion

__all__ = [
    "MWBasis",
    "EnumRecord",
    "Enumeration",
    "GrowthFit",
    "iter_shells",
    "enumerate_up_to",
    "ray_walk",
    "fit_growth",
    "worker_count",
]

THREADS_ENV = "EC_DENOM_THREADS"


def worker_count(threads: Optional[int] = None) -> int:
    """Explicit argument, else $EC_DENOM_THREADS, else 1."""
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, threads)


@dataclass(frozen=True)
class MWBasis:
    """User-supplied free generators plus the torsion subgroup."""

    curve: CurveModel
    free_generators: tuple[Point, ...]
    torsion: TorsionGroup = field(default_factory=trivial_torsion)

    def __post_init__(self):
        object.__setattr__(self, "free_generators", tuple(self.free_generators))
        for i, P in enumerate(self.free_generators):
            if P.is_infinity or not on_curve(self.curve, P):
                raise GeneratorNotOnCurve(f"generator {i} ({P!r}) is not an affine point on {self.curve}")
            if point_order(self.curve, P) is not None:
                raise TorsionGenerator(f"generator {i} ({P!r}) has finite order")

    @property
    def rank(self) -> int:
        return len(self.free_generators)

    def combine(self, nvec: Sequence[int], torsion_index: int = 0) -> Point:
        """n.P + S computed from scratch (slow path, used by oracles and tests)."""
        R = self.torsion.points[torsion_index]
        for n, P in zip(nvec, self.free_generators):
            R = _add(self.curve, R, _mul(self.curve, n, P))
        return R


@dataclass(frozen=True)
class EnumRecord:
    nvec: tuple[int, ...]
    torsion_index: int
    triple: DenomTriple
    log_z: float

    @property
    def z(self) -> int:
        return self.triple.z

    @property
    def shell(self) -> int:
        return max((abs(n) for n in self.nvec), default=0)

    def sort_key(self):
        return (self.shell, self.nvec, self.torsion_index)


@dataclass
class Enumeration:
    """All records with z <= Z plus the audit data for the heuristic stop."""

    Z: int
    records: list[EnumRecord]
    shells_visited: int
    last_nonempty_shell: int
    c_hat: Optional[float]


@dataclass(frozen=True)
class GrowthFit:
    c_hat: float
    C_hat: float
    slope: float
    n_min: int
    n_max: int
    samples: int


def _record(curve, nvec, tidx, P) -> EnumRecord:
    triple = denom_form(curve, P)
    return EnumRecord(tuple(nvec), tidx, triple, math.log(triple.z))


def _primitive_directions(r: int, s: int) -> list[tuple[int, ...]]:
    """Primitive vectors of max-norm s whose first nonzero entry is positive."""
    out = []
    for v in itertools.product(range(-s, s + 1), repeat=r):
        if max(map(abs, v)) != s or math.gcd(*v) != 1:
            continue
        if next(c for c in v if c) > 0:
            out.append(v)
    return out


def _translates(basis: MWBasis, neg_index, nvec, P, Z) -> list[EnumRecord]:
    C = basis.curve
    out = []
    for tidx, S in enumerate(basis.torsion.points):
        Q = _add(C, P, S)
        if Q.is_infinity:
            continue
        rec = _record(C, nvec, tidx, Q)
        if rec.z <= Z:
            out.append(rec)
            minus = tuple(-n for n in nvec)
            out.append(_record(C, minus, neg_index[tidx], _neg(C, Q)))
    return out


def iter_shells(basis: MWBasis, Z: int, extra_shells: int = 2,
                threads: Optional[int] = None) -> Iterator[tuple[int, list[EnumRecord]]]:
    """Yield ``(shell, records)`` for shells 0, 1, 2, ... until the stop rule fires.

    Stop rule: once ``extra_shells + 1`` consecutive shells (from shell 1 on)
    contribute no record with z <= Z, enumeration ends. Records within a shell
    are sorted by (nvec, torsion_index) so output never depends on scheduling.
    """
    if Z < 1:
        raise ValueError("Z must be >= 1")
    C, T, r = basis.curve, basis.torsion, basis.rank
    if r == 0 and T.order == 1:
        raise EmptyBasis("rank 0 with trivial torsion: only O exists")
    neg_index = [T.index_of(_neg(C, S)) for S in T.points]

    shell0 = []
    for tidx, S in enumerate(T.points):
        if not S.is_infinity:
            rec = _record(C, (0,) * r, tidx, S)
            if rec.z <= Z:
                shell0.append(rec)
    yield 0, sorted(shell0, key=EnumRecord.sort_key)
    if r == 0:
        return

    # ray state: direction -> (step point D, current multiple k*D)
    rays: dict[tuple[int, ...], tuple[Point, Point]] = {}
    by_norm: dict[int, list[tuple[int, ...]]] = {}
    empty_run, s = 0, 0
    workers = worker_count(threads)
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None

    def advance(d, k):
        if k == 1:
            D = basis.combine(d)
            return d, D, D
        D, prev = rays[d]
        return d, D, _add(C, prev, D)

    def evaluate(item):
        d, k, P = item
        nvec = tuple(k * c for c in d)
        return _translates(basis, neg_index, nvec, P, Z)

    try:
        while empty_run <= extra_shells:
            s += 1
            by_norm[s] = _primitive_directions(r, s)
            jobs = [(d, s // m) for m in by_norm if s % m == 0 for d in by_norm[m]]
            mapper = pool.map if pool else map
            stepped = list(mapper(lambda job: advance(*job), jobs))
            for d, D, P in stepped:
                rays[d] = (D, P)
            items = [(d, k, P) for (d, k), (_, _, P) in zip(jobs, stepped) if not P.is_infinity]
            records = [rec for chunk in mapper(evaluate, items) for rec in chunk]
            records.sort(key=EnumRecord.sort_key)
            empty_run = 0 if records else empty_run + 1
            yield s, records
    finally:
        if pool:
            pool.shutdown()


def enumerate_up_to(basis: MWBasis, Z: int, extra_shells: int = 2,
                    threads: Optional[int] = None) -> Enumeration:
    """Every (n, S) != (0, O) with z(n.P + S) <= Z, as far as the stop rule can tell.

    Completeness rests on the lower bound z > exp(c |n|^2): once a few whole
    shells are empty, later shells are far out of reach. ``c_hat`` is the
    smallest observed log z / |n|^2 over emitted records with z > 1 and n != 0,
    reported so the margin can be audited.
    """
    records, shells, last = [], 0, 0
    for s, chunk in iter_shells(basis, Z, extra_shells, threads):
        shells = s + 1
        if chunk:
            last = s
        records.extend(chunk)
    ratios = [rec.log_z / rec.shell**2 for rec in records if rec.shell and rec.z > 1]
    return Enumeration(Z, records, shells, last, min(ratios) if ratios else None)


def ray_walk(basis: MWBasis, direction: Sequence[int], max_steps: int) -> Iterator[tuple[int, Point]]:
    """Yield (k, k*D) for k = 1..max_steps with D = direction . P, one addition per step."""
    direction = tuple(direction)
    if len(direction) != basis.rank:
        raise ValueError(f"direction has length {len(direction)}, rank is {basis.rank}")
    if not any(direction):
        raise ValueError("direction must be nonzero")
    C = basis.curve
    D = basis.combine(direction)
    P = INFINITY
    for k in range(1, max_steps + 1):
        P = _add(C, P, D)
        yield k, P


def fit_growth(basis: MWBasis, generator_index: int, n_range: tuple[int, int]) -> GrowthFit:
    """Estimate the quadratic growth rate of log z(nQ) for Q a free generator.

    Over every n in the closed range with z(nQ) > 1, ``c_hat`` and ``C_hat`` are
    the min and max of log z / n^2, and ``slope`` is the least-squares fit of
    log z = slope * n^2 through the origin. That slope is an n^4-weighted mean
    of the ratios, so c_hat <= slope <= C_hat always holds.
    """
    lo, hi = n_range
    if lo < 2 or hi < lo:
        raise ValueError(f"bad n range {n_range}")
    direction = tuple(int(i == generator_index) for i in range(basis.rank))
    ratios, num, den = [], 0.0, 0.0
    for n, P in ray_walk(basis, direction, hi):
        if n < lo:
            continue
        z = denom_form(basis.curve, P).z
        if z == 1:
            continue
        lz = math.log(z)
        ratios.append(lz / n**2)
        num += n * n * lz
        den += float(n) ** 4
    if len(ratios) < 3:
        raise InsufficientData(f"only {len(ratios)} non-integral multiples in {n_range}")
    slope = num / den
    # float rounding can push the weighted mean a hair outside [min, max]
    c_hat, C_hat = min(ratios), max(ratios)
    return GrowthFit(c_hat, C_hat, min(max(slope, c_hat), C_hat), lo, hi, len(ratios))
