import math

import pytest
from hypothesis import given, strategies as st

from ecdenom.arith import _strong_lucas_probable_prime, _strong_probable_prime, divisors, factor, gcd, is_prime, isqrt_exact
from ecdenom.errors import FactoringTimeout
from oracles import sieve, trial_factor

ints = st.integers(min_value=-10**40, max_value=10**40)


@pytest.mark.parametrize("a, b, g", [(0, 0, 0), (12, 18, 6), (-5, 2, 1), (0, 7, 7), (-12, -18, 6)])
def test_gcd_examples(a, b, g):
    assert gcd(a, b) == g


@given(ints, ints)
def test_gcd_properties(a, b):
    g = gcd(a, b)
    assert g >= 0
    if g:
        assert a % g == 0 and b % g == 0
    assert g == gcd(b, a) == gcd(-a, b)


@pytest.mark.parametrize("n, root, exact", [(49, 7, True), (50, 7, False), (0, 0, True), (1, 1, True)])
def test_isqrt_examples(n, root, exact):
    assert isqrt_exact(n) == (root, exact)


@given(st.integers(min_value=0, max_value=10**3000))
def test_isqrt_bracket(n):
    root, exact = isqrt_exact(n)
    assert root * root <= n < (root + 1) ** 2
    assert exact == (root * root == n)


def test_isqrt_negative():
    with pytest.raises(ValueError):
        isqrt_exact(-1)


@pytest.mark.parametrize("n, expected", [(0, False), (1, False), (2, True), (3, True), (4, False), (561, False),
                                         (9409, False), (9973, True)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_sieve_below_1e5():
    table = sieve(10**5)
    assert all(is_prime(n) == bool(table[n]) for n in range(10**5))


# composites that fool some single test
@pytest.mark.parametrize("n", [
    2047, 3215031751, 3825123056546413051,          # strong pseudoprimes to several small bases
    318665857834031151167461,                       # spsp to bases 2..37
    5459 * 5777, 2**128 + 1, (2**61 - 1) * (2**89 - 1),
    (2**89 - 1) ** 2,
])
def test_is_prime_rejects_tricky_composites(n):
    assert not is_prime(n)


@pytest.mark.parametrize("p", [2**61 - 1, 2**89 - 1, 2**107 - 1, 2**127 - 1, 2**521 - 1, 2**607 - 1,
                               18446744073709551629])
def test_is_prime_large_primes(p):
    assert is_prime(p)


def test_bpsw_components_are_complementary():
    # 2047 = 23*89 is a base-2 strong pseudoprime, caught by the Lucas test
    assert _strong_probable_prime(2047, 2) and not _strong_lucas_probable_prime(2047)
    # 5459 and 5777 are strong Lucas pseudoprimes, caught by base 2
    for n in (5459, 5777, 10877, 16109, 18971):
        assert _strong_lucas_probable_prime(n)
        assert not _strong_probable_prime(n, 2)


@pytest.mark.parametrize("n, fac", [(1, {}), (2, {2: 1}), (432, {2: 4, 3: 3}), (37, {37: 1}),
                                    (2**64 + 1, {274177: 1, 67280421310721: 1})])
def test_factor_examples(n, fac):
    assert factor(n) == fac


def test_factor_matches_trial_division_sample():
    for n in list(range(1, 3000)) + list(range(10**9, 10**9 + 300)):
        assert factor(n) == trial_factor(n)


@given(st.integers(min_value=1, max_value=10**24))
def test_factor_recomposes(n):
    fac = factor(n)
    assert math.prod(p**e for p, e in fac.items()) == n
    assert all(is_prime(p) for p in fac)
    assert list(fac) == sorted(fac)


def test_factor_rho_splits_mid_size_factors():
    p, q, r = 1000000007, 1000000009, 10**20 + 39
    assert is_prime(p) and is_prime(q) and is_prime(r)
    assert factor(p * q * r * 7**3) == {7: 3, p: 1, q: 1, r: 1}


def test_factor_timeout():
    p, q = 2**61 - 1, 2**89 - 1
    with pytest.raises(FactoringTimeout):
        factor(p * q, budget=50)


def test_factor_rejects_zero():
    with pytest.raises(ValueError):
        factor(0)


def test_divisors():
    assert divisors(factor(12)) == [1, 2, 3, 4, 6, 12]
    assert divisors({}) == [1]


def test_factor_exhaustive_up_to_1e6():
    limit = 10**6 + 1
    spf = list(range(limit))
    for p in range(2, 1001):
        if spf[p] == p:
            for m in range(p * p, limit, p):
                if spf[m] == m:
                    spf[m] = p
    for n in range(1, limit):
        expected, m = {}, n
        while m > 1:
            expected[spf[m]] = expected.get(spf[m], 0) + 1
            m //= spf[m]
        assert factor(n) == expected, n


def test_pure_int_backend_agrees(monkeypatch):
    import ecdenom.arith as arith

    cases = [2**521 - 1, 2**607 - 1, (2**521 - 1) * (2**607 - 1), 2**1279 - 1, 2**1279 + 1,
             (2**89 - 1) ** 2, 10**200 + 357, 10**200 + 1]
    fast = [is_prime(n) for n in cases]
    monkeypatch.setattr(arith, "_mpz", int)
    assert [is_prime(n) for n in cases] == fast
    assert fast == [True, True, False, True, False, False, is_prime(10**200 + 357), False]
