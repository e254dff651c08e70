"""Arbitrary-precision integer helpers: gcd, exact square roots, primality, factoring.

Everything here works on Python ints, so there is no size limit. Rationals are
``fractions.Fraction``, which is always kept in lowest terms with a positive
denominator.
"""

import math
import random
from fractions import Fraction

from .errors import FactoringTimeout

try:  # optional: GMP-backed integers make the big modular powers much faster
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = int

__all__ = [
    "Fraction",
    "gcd",
    "isqrt_exact",
    "is_prime",
    "factor",
    "divisors",
    "DEFAULT_RHO_BUDGET",
]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                 61, 67, 71, 73, 79, 83, 89, 97)
# Jaeschke / Sorenson-Webster: these twelve bases are exact below 3.3e24 > 2**64.
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_BOUND = 10_000


def _primorial(bound):
    sieve = bytearray([1]) * bound
    sieve[:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound - 1) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, bound, p)))
    return math.prod(p for p in range(bound) if sieve[p])


# one gcd against this screens out every n with a prime factor below 2**12
_PRIMORIAL = _primorial(1 << 12)
DEFAULT_RHO_BUDGET = 2_000_000


def gcd(a: int, b: int) -> int:
    """Non-negative gcd; gcd(0, 0) == 0."""
    return math.gcd(a, b)


def isqrt_exact(n: int) -> tuple[int, bool]:
    """Return ``(floor(sqrt(n)), n is a perfect square)``."""
    if n < 0:
        raise ValueError("isqrt_exact needs n >= 0")
    root = math.isqrt(n)
    return root, root * root == n


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    # n odd and positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    """Strong Lucas test with Selfridge's parameter choice (method A).

    n must be odd, > 2 and not a perfect square (otherwise no suitable D exists).
    """
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4

    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    # Left-to-right binary ladder for U_d, V_d, Q^d.
    U, V, Qk = 1, P, Q % n
    inv2 = (n + 1) // 2
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n

    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test.

    Exact for n < 2**64 (Miller-Rabin with a proven base set). Above that it is
    Baillie-PSW: a strong base-2 test plus a strong Lucas test. No composite is
    known to pass Baillie-PSW, but none is proven impossible either.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 97 * 97:
        return True
    if n < 1 << 64:
        return all(_strong_probable_prime(n, b) for b in _MR_BASES_64)
    if math.gcd(n, _PRIMORIAL) != 1:
        return False
    n = _mpz(n)
    if not _strong_probable_prime(n, 2):
        return False
    if isqrt_exact(n)[1]:
        return False
    return _strong_lucas_probable_prime(n)


def _pollard_brent(n: int, budget: int, rng: random.Random) -> int:
    """Return a non-trivial factor of the odd composite n, or raise FactoringTimeout."""
    spent = 0
    while spent < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            spent += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    raise FactoringTimeout(n, budget)


def factor(n: int, budget: int = DEFAULT_RHO_BUDGET, seed: int = 0) -> dict[int, int]:
    """Factor n >= 1 into ``{prime: exponent}`` with primes in ascending order.

    Trial division up to 10**4, then Pollard-rho (Brent's variant) on the
    cofactor. ``budget`` caps the total rho iterations; exceeding it raises
    FactoringTimeout so the caller can skip the input instead of stalling.
    """
    if n < 1:
        raise ValueError("factor needs n >= 1")
    out: dict[int, int] = {}

    def bump(p, e=1):
        out[p] = out.get(p, 0) + e

    for p in _SMALL_PRIMES:
        while n % p == 0:
            bump(p)
            n //= p
    p = 101
    while p <= _TRIAL_BOUND and p * p <= n:
        while n % p == 0:
            bump(p)
            n //= p
        p += 2
    if n == 1:
        return dict(sorted(out.items()))

    rng = random.Random(seed)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            bump(m)
            continue
        root, exact = isqrt_exact(m)
        if exact:
            stack += [root, root]
            continue
        d = _pollard_brent(m, budget, rng)
        stack += [d, m // d]
    return dict(sorted(out.items()))


def divisors(factorization: dict[int, int]) -> list[int]:
    """All positive divisors of the number with the given factorization, sorted."""
    divs = [1]
    for p, e in factorization.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)
