"""Prime-denominator census and the divisibility / primality / primitive-divisor checks."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .arith import gcd, is_prime
from .curve import CurveModel, Point, _add, denom_form, on_curve, point_order, INFINITY
from .errors import EmptyCensus, NotOnCurve, TorsionGenerator
from .lattice import EnumRecord, MWBasis, enumerate_up_to

__all__ = [
    "CensusRow",
    "CensusResult",
    "Prediction",
    "DivReport",
    "run_census",
    "heuristic_count",
    "corollary_ratio",
    "z_sequence",
    "verify_divisibility",
    "verify_lemma",
    "primitive_divisors",
    "full_report",
]


@dataclass(frozen=True)
class CensusRow:
    record: EnumRecord
    is_prime: bool


@dataclass
class CensusResult:
    Z: int
    rows: list[CensusRow]
    shells_visited: int
    c_hat: Optional[float] = None

    @property
    def total_count(self) -> int:
        return len(self.rows)

    @property
    def prime_count(self) -> int:
        return sum(row.is_prime for row in self.rows)

    @property
    def records(self) -> list[EnumRecord]:
        return [row.record for row in self.rows]

    def per_coset(self) -> dict[int, tuple[int, int]]:
        """torsion_index -> (total, prime) counts."""
        total, prime = Counter(), Counter()
        for row in self.rows:
            total[row.record.torsion_index] += 1
            prime[row.record.torsion_index] += row.is_prime
        return {i: (total[i], prime[i]) for i in sorted(total)}

    def expected_prime_mass(self) -> float:
        """Sum of 1/log z over non-integral records: the naive 'probability' model."""
        return sum(1.0 / row.record.log_z for row in self.rows if row.record.z > 1)

    def restrict(self, Z: int) -> "CensusResult":
        """The census at a smaller cap, read off from this one."""
        if Z > self.Z:
            raise ValueError("can only restrict to a smaller cap")
        return CensusResult(Z, [row for row in self.rows if row.record.z <= Z],
                            self.shells_visited, self.c_hat)


def run_census(basis: MWBasis, Z: int, extra_shells: int = 2,
               threads: Optional[int] = None) -> CensusResult:
    en = enumerate_up_to(basis, Z, extra_shells, threads)
    verdicts: dict[int, bool] = {}  # P and -P share z
    rows = []
    for rec in en.records:
        if rec.z not in verdicts:
            verdicts[rec.z] = is_prime(rec.z)
        rows.append(CensusRow(rec, verdicts[rec.z]))
    return CensusResult(Z, rows, en.shells_visited, en.c_hat)


@dataclass(frozen=True)
class Prediction:
    rank: int
    regime: str
    value: float


def heuristic_count(r: int, Z: float, kappa: float = 1.0) -> Prediction:
    """Predicted #{P : z(P) prime, z(P) <= Z} up to the constant kappa.

    Summing N^(r-2) over dyadic N with exp(cN^2) < Z gives a bounded count for
    r <= 1, log log Z for r = 2 and (log Z)^(r/2 - 1) for r > 2. Natural logs.
    """
    if r < 0:
        raise ValueError("rank must be >= 0")
    if not Z > math.e:
        raise ValueError("Z must exceed e so that log log Z > 0")
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if r <= 1:
        return Prediction(r, "bounded", kappa)
    if r == 2:
        return Prediction(r, "loglog", kappa * math.log(math.log(Z)))
    return Prediction(r, "power", kappa * math.log(Z) ** (r / 2 - 1))


def corollary_ratio(result: CensusResult) -> tuple[float, float]:
    """(prime_count / total_count, 1 / log log Z)."""
    if result.total_count == 0:
        raise EmptyCensus(f"no points with z <= {result.Z}")
    if not result.Z > math.e:
        raise ValueError("Z must exceed e so that log log Z > 0")
    return result.prime_count / result.total_count, 1.0 / math.log(math.log(result.Z))


@dataclass
class DivReport:
    nmax: int
    divisibility_failures: list[tuple[int, int]] = field(default_factory=list)
    primality_exceptions: list[tuple[int, int]] = field(default_factory=list)
    primitive_divisor_misses: list[int] = field(default_factory=list)
    # n -> (residual, stripped) with residual * stripped == z(nQ)
    primitive_parts: dict[int, tuple[int, int]] = field(default_factory=dict)


def z_sequence(C: CurveModel, Q: Point, nmax: int) -> list[int]:
    """[z(1Q), ..., z(nmax Q)] by repeated addition; Q must have infinite order."""
    if Q.is_infinity or not on_curve(C, Q):
        raise NotOnCurve(f"{Q!r} is not an affine point on {C}")
    if point_order(C, Q) is not None:
        raise TorsionGenerator(f"{Q!r} has finite order")
    zs, P = [], INFINITY
    for _ in range(nmax):
        P = _add(C, P, Q)
        zs.append(denom_form(C, P).z)
    return zs


def _zs(C, Q, nmax, zs):
    return zs if zs is not None else z_sequence(C, Q, nmax)


def verify_divisibility(C: CurveModel, Q: Point, nmax: int, zs=None) -> DivReport:
    """Check z(rQ) | z(nQ) for every 2 <= r < n <= nmax with r | n."""
    zs = _zs(C, Q, nmax, zs)
    report = DivReport(nmax)
    for n in range(3, nmax + 1):
        for r in range(2, n // 2 + 1):
            if n % r == 0 and zs[n - 1] % zs[r - 1]:
                report.divisibility_failures.append((r, n))
    return report


def verify_lemma(C: CurveModel, Q: Point, nmax: int, zs=None) -> DivReport:
    """List (n, z(nQ)) with n composite and z(nQ) prime.

    Small entries are expected: the prime-index property only holds for n
    large enough, and that threshold is not explicit.
    """
    zs = _zs(C, Q, nmax, zs)
    report = DivReport(nmax)
    for n in range(4, nmax + 1):
        if not is_prime(n) and is_prime(zs[n - 1]):
            report.primality_exceptions.append((n, zs[n - 1]))
    return report


def primitive_divisors(C: CurveModel, Q: Point, nmax: int, zs=None) -> DivReport:
    """Find n in [2, nmax] where z(nQ) has no prime factor new to the sequence.

    No factoring: the product of all earlier terms is reduced modulo z(nQ) and
    common factors are stripped off by repeated gcds. Whatever survives is
    coprime to every earlier term, so a primitive prime divisor exists iff the
    residual is > 1.
    """
    zs = _zs(C, Q, nmax, zs)
    report = DivReport(nmax)
    for n in range(2, nmax + 1):
        zn = zs[n - 1]
        residual, stripped = zn, 1
        acc = 1
        for zm in zs[: n - 1]:
            acc = acc * zm % zn
        g = gcd(residual, acc)
        while g > 1:
            residual //= g
            stripped *= g
            g = gcd(residual, g)
        report.primitive_parts[n] = (residual, stripped)
        if residual == 1:
            report.primitive_divisor_misses.append(n)
    return report


def full_report(C: CurveModel, Q: Point, nmax: int) -> DivReport:
    zs = z_sequence(C, Q, nmax)
    report = DivReport(nmax)
    report.divisibility_failures = verify_divisibility(C, Q, nmax, zs).divisibility_failures
    report.primality_exceptions = verify_lemma(C, Q, nmax, zs).primality_exceptions
    prim = primitive_divisors(C, Q, nmax, zs)
    report.primitive_divisor_misses = prim.primitive_divisor_misses
    report.primitive_parts = prim.primitive_parts
    return report
