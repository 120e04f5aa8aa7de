"""Brute-force reference implementations used as test oracles.

Everything here works straight from definitions (divisor enumeration,
incremental shift search) and never touches the library's sieves or
block identities, so agreement is meaningful.
"""

import math
from fractions import Fraction


def tau_naive(n: int) -> int:
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def is_prime_naive(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


def omega_naive(n: int) -> int:
    return sum(1 for p in range(2, n + 1) if n % p == 0 and is_prime_naive(p))


def unitary_count_naive(n: int) -> int:
    return sum(
        1 for d in range(1, n + 1) if n % d == 0 and math.gcd(d, n // d) == 1
    )


def f_naive(n: int) -> Fraction:
    """tau(n) / 2**omega(n) as a Fraction."""
    return Fraction(tau_naive(n), 2 ** omega_naive(n))


def shift_naive(n: int) -> int:
    """Smallest m >= 0 with n + m a perfect square, by stepping."""
    m = 0
    while True:
        r = math.isqrt(n + m)
        if r * r == n + m:
            return m
        m += 1


def shifted_sum_naive(x: int) -> Fraction:
    return sum((f_naive(n + shift_naive(n)) for n in range(1, x + 1)), Fraction(0))


def square_sum_naive(n: int) -> Fraction:
    return sum((f_naive(m * m) for m in range(1, n + 1)), Fraction(0))


def weighted_square_sum_naive(n: int) -> Fraction:
    return sum((m * f_naive(m * m) for m in range(1, n + 1)), Fraction(0))


def as_fraction(dyadic) -> Fraction:
    num, den = dyadic.as_integer_ratio()
    return Fraction(num, den)
