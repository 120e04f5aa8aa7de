"""Integer factorization and divisor-count arithmetic functions.

Provides a smallest-prime-factor (SPF) sieve for O(log n) factorization of
table-covered integers, a deterministic trial-division fallback for larger
inputs (up to 2**64 - 1), and the multiplicative functions built on top:

    tau(n)              - number of positive divisors, prod (a+1)
    omega(n)            - number of distinct prime factors
    unitary_divisor_count(n) = 2**omega(n)   (divisors d with gcd(d, n/d) = 1)
    tau_per_unitary(n)  = tau(n) / 2**omega(n) = prod (a+1)/2, a dyadic rational

tau_per_unitary is multiplicative and takes the value (m+1)/2 on p**m;
tau_per_unitary_sq(m) evaluates it at m**2 without forming the square,
via prod (2a+1)/2 over p**a || m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dyadic import DyadicRational
from .errors import CapExceededError

MAX_INPUT = 2**64 - 1
DEFAULT_SPF_CAP = 10**8

# trial division switches from a scalar loop to numpy chunks above this
_SCALAR_TRIAL_LIMIT = 10**7
_TRIAL_CHUNK = 1 << 19  # wheel positions per numpy chunk


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of n as ((p1, a1), (p2, a2), ...), p strictly
    increasing, each a >= 1.  Empty for n = 1."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.factors)


@dataclass(frozen=True)
class SpfTable:
    """Smallest prime factor of every integer in [2, limit].

    table[m] is the smallest prime dividing m; table[m] == m iff m is
    prime.  Entries are 32-bit when limit < 2**32 (memory is the binding
    constraint for large sieves).  Immutable after construction and safe
    to share across threads.
    """

    limit: int
    table: np.ndarray

    def spf(self, m: int) -> int:
        if not 2 <= m <= self.limit:
            raise ValueError(f"m={m} outside table range [2, {self.limit}]")
        return int(self.table[m])

    def primes(self) -> np.ndarray:
        """All primes <= limit, ascending, as int64."""
        idx = np.arange(self.table.size, dtype=self.table.dtype)
        mask = self.table == idx
        mask[:2] = False
        return np.nonzero(mask)[0].astype(np.int64)


def build_spf(limit: int, max_entries: int = DEFAULT_SPF_CAP) -> SpfTable:
    """Sieve the smallest prime factor of every integer in [2, limit].

    Raises ValueError for limit < 2 and CapExceededError when the table
    would exceed max_entries.
    """
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    if limit + 1 > max_entries:
        raise CapExceededError(
            f"SPF table of {limit + 1} entries exceeds cap {max_entries}"
        )
    dtype = np.uint32 if limit < 2**32 else np.int64
    table = np.zeros(limit + 1, dtype=dtype)
    for p in range(2, math.isqrt(limit) + 1):
        if table[p] == 0:
            seg = table[p * p :: p]
            seg[seg == 0] = p
    # anything unmarked from 2 on is prime
    idx = np.nonzero(table[2:] == 0)[0] + 2
    table[idx] = idx
    table.setflags(write=False)
    return SpfTable(limit, table)


def primes_up_to(limit: int) -> np.ndarray:
    """Ascending primes <= limit (empty array for limit < 2)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    return build_spf(limit, max_entries=max(DEFAULT_SPF_CAP, limit + 1)).primes()


def _factorize_spf(n: int, table: np.ndarray) -> tuple[tuple[int, int], ...]:
    out = []
    m = n
    while m > 1:
        p = int(table[m])
        a = 0
        while m % p == 0:
            m //= p
            a += 1
        out.append((p, a))
    return tuple(out)


def _wheel_chunk(lo: int, hi: int) -> np.ndarray:
    """Ascending candidates in [lo, hi] coprime to 6 (plus none below 5)."""
    k0 = lo // 6
    k1 = hi // 6 + 1
    ks = np.arange(k0, k1 + 1, dtype=np.uint64) * np.uint64(6)
    cand = np.concatenate([ks + np.uint64(1), ks + np.uint64(5)])
    cand = cand[(cand >= max(lo, 5)) & (cand <= hi)]
    cand.sort()
    return cand


def _factorize_trial(n: int) -> tuple[tuple[int, int], ...]:
    """Deterministic trial division (mod-6 wheel), factors ascending.

    Scalar loop for small n; numpy chunks above _SCALAR_TRIAL_LIMIT so
    that worst-case inputs (large primes) stay in the seconds range.
    """
    out = []
    m = n
    for p in (2, 3):
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            out.append((p, a))
    if m < _SCALAR_TRIAL_LIMIT:
        d = 5
        step = 2  # alternates 2, 4: visits 5, 7, 11, 13, ...
        while d * d <= m:
            if m % d == 0:
                a = 0
                while m % d == 0:
                    m //= d
                    a += 1
                out.append((d, a))
            d += step
            step = 6 - step
    else:
        lo = 5
        while lo * lo <= m:
            hi = min(math.isqrt(m), lo + 6 * _TRIAL_CHUNK - 1)
            cand = _wheel_chunk(lo, hi)
            if cand.size:
                hits = cand[np.uint64(m) % cand == 0]
                for q in hits:
                    q = int(q)
                    if q * q > m:
                        break
                    a = 0
                    while m % q == 0:
                        m //= q
                        a += 1
                    if a:  # q may be composite with its prime factors removed
                        out.append((q, a))
            lo = hi + 1
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def factorize(n: int, spf: SpfTable | None = None) -> Factorization:
    """Prime factorization of n >= 1.

    Uses the SPF table when n is covered by it, otherwise deterministic
    trial division; both paths produce identical output.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if n > MAX_INPUT:
        raise ValueError(f"n={n} exceeds supported range 2**64 - 1")
    if n == 1:
        return Factorization(1, ())
    if spf is not None and n <= spf.limit:
        return Factorization(n, _factorize_spf(n, spf.table))
    return Factorization(n, _factorize_trial(n))


def tau(f: Factorization) -> int:
    """Number of positive divisors: prod (a+1)."""
    t = 1
    for _, a in f.factors:
        t *= a + 1
    return t


def omega(f: Factorization) -> int:
    """Number of distinct prime factors."""
    return len(f.factors)


def unitary_divisor_count(f: Factorization) -> int:
    """Number of divisors d with gcd(d, n/d) = 1; equals 2**omega(n)."""
    return 1 << len(f.factors)


def tau_per_unitary(f: Factorization) -> DyadicRational:
    """tau(n) / 2**omega(n) as an exact dyadic rational.

    Multiplicative with value (a+1)/2 on p**a, so >= 1 always, with
    equality exactly on squarefree n.
    """
    return DyadicRational(tau(f), omega(f))


def tau_per_unitary_sq(f: Factorization) -> DyadicRational:
    """tau_per_unitary evaluated at n**2, from the factorization of n.

    Squaring doubles every exponent, so the value is prod (2a+1)/2 with
    an odd numerator; n**2 itself is never formed (n may be near 2**64).
    """
    num = 1
    for _, a in f.factors:
        num *= 2 * a + 1
    return DyadicRational(num, omega(f))
