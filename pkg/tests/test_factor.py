import math
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from sqshift import (
    CapExceededError,
    DyadicRational,
    build_spf,
    factorize,
    omega,
    primes_up_to,
    tau,
    tau_per_unitary,
    tau_per_unitary_sq,
    unitary_divisor_count,
)

from naive import (
    as_fraction,
    f_naive,
    omega_naive,
    tau_naive,
    unitary_count_naive,
)

MERSENNE_61 = 2**61 - 1


def test_spf_small_values():
    t = build_spf(10)
    assert t.spf(4) == 2
    assert t.spf(9) == 3
    assert t.spf(7) == 7
    assert build_spf(2).spf(2) == 2
    assert build_spf(100).spf(91) == 7


def test_spf_table_invariants(spf_100k):
    table = spf_100k.table
    for m in random.Random(5).sample(range(2, 10**5), 500):
        p = int(table[m])
        assert m % p == 0
        assert sympy.isprime(p)
        assert (p == m) == sympy.isprime(m)


def test_spf_domain_and_cap_errors():
    with pytest.raises(ValueError):
        build_spf(1)
    with pytest.raises(CapExceededError):
        build_spf(10**7, max_entries=10**6)


def test_spf_dtype_is_32bit_below_2_32():
    assert build_spf(100).table.dtype.itemsize == 4


def test_primes_up_to():
    assert primes_up_to(1).size == 0
    assert primes_up_to(13).tolist() == [2, 3, 5, 7, 11, 13]


def test_factorize_examples(spf_100k):
    assert factorize(1).factors == ()
    assert factorize(12).factors == ((2, 2), (3, 1))
    assert factorize(12, spf_100k).factors == ((2, 2), (3, 1))
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_mersenne_prime():
    # 2**61 - 1 is prime; the trial-division path must prove it by scan
    assert sympy.isprime(MERSENNE_61)
    assert factorize(MERSENNE_61).factors == ((MERSENNE_61, 1),)


def test_factorize_top_of_range():
    f = factorize(2**64 - 1)
    assert f.factors == (
        (3, 1),
        (5, 1),
        (17, 1),
        (257, 1),
        (641, 1),
        (65537, 1),
        (6700417, 1),
    )
    with pytest.raises(ValueError):
        factorize(2**64)


def test_factorize_paths_agree_small(spf_100k):
    for n in range(1, 10**4 + 1):
        assert factorize(n, spf_100k).factors == factorize(n).factors


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=10**12))
def test_factorize_matches_sympy(n):
    assert factorize(n).factors == tuple(sorted(sympy.factorint(n).items()))


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=10**12))
def test_factorize_product_reconstructs(n):
    f = factorize(n)
    prod = 1
    for p, a in f.factors:
        prod *= p**a
    assert prod == n
    assert all(a >= 1 for _, a in f.factors)
    assert [p for p, _ in f.factors] == sorted({p for p, _ in f.factors})


def test_tau_omega_unitary_examples():
    assert tau(factorize(1)) == 1
    assert tau(factorize(12)) == 6
    for p in (2, 3, 31, 97):
        assert tau(factorize(p)) == 2
    assert omega(factorize(1)) == 0
    assert omega(factorize(12)) == 2
    assert omega(factorize(8)) == 1
    assert unitary_divisor_count(factorize(1)) == 1
    assert unitary_divisor_count(factorize(12)) == 4
    assert unitary_divisor_count(factorize(30)) == 8


def test_tau_and_unitary_match_direct_counts(spf_100k):
    for n in range(1, 10**4 + 1):
        f = factorize(n, spf_100k)
        assert tau(f) == tau_naive(n)
        assert unitary_divisor_count(f) == unitary_count_naive(n)


def test_tau_per_unitary_examples():
    assert tau_per_unitary(factorize(1)) == 1
    assert tau_per_unitary(factorize(8)) == 2
    assert tau_per_unitary(factorize(12)) == DyadicRational(3, 1)
    # cross-check 6 / 2**2 for n = 12
    assert as_fraction(tau_per_unitary(factorize(12))) == f_naive(12)


def test_tau_per_unitary_sq_examples():
    assert tau_per_unitary_sq(factorize(1)) == 1
    assert tau_per_unitary_sq(factorize(6)) == DyadicRational(9, 2)
    assert tau_per_unitary_sq(factorize(4)) == DyadicRational(5, 1)


def test_value_at_least_one_iff_squarefree(spf_100k):
    one = DyadicRational(1)
    for n in range(1, 10**5 + 1):
        f = factorize(n, spf_100k)
        v = tau_per_unitary(f)
        assert v >= one
        squarefree = all(a == 1 for _, a in f.factors)
        assert (v == one) == squarefree


def test_square_variant_matches_direct_square(spf_100k):
    for m in range(1, 10**4 + 1):
        assert tau_per_unitary_sq(factorize(m, spf_100k)) == tau_per_unitary(
            factorize(m * m)
        )


def test_multiplicative_on_coprime_pairs(spf_100k):
    rng = random.Random(99)
    done = 0
    while done < 2000:
        a = rng.randrange(1, 3000)
        b = rng.randrange(1, 3000)
        if math.gcd(a, b) != 1:
            continue
        fa = tau_per_unitary(factorize(a, spf_100k))
        fb = tau_per_unitary(factorize(b, spf_100k))
        fab = tau_per_unitary(factorize(a * b, spf_100k))
        assert fab == fa * fb
        done += 1


def test_omega_small_against_naive(spf_100k):
    for n in range(1, 301):
        assert omega(factorize(n, spf_100k)) == omega_naive(n)
