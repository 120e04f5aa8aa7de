"""Exact summatory functions of tau_per_unitary over shifted squares.

Let f = tau_per_unitary and s(n) the completion shift from `squares`.
This module computes, as exact dyadic rationals,

    S(x) = sum_{n <= x} f(n + s(n))
    T(N) = sum_{m <= N} f(m**2)          (sum_squares)
    W(N) = sum_{m <= N} m * f(m**2)      (sum_squares_weighted)

two ways: a direct term-by-term pass over every n (the oracle, capped at
10**9 terms by default), and a blockwise method with O(sqrt x) distinct
f-values.  Within [k**2, (k+1)**2) exactly one n (n = k**2) completes to
k**2 and the other 2k complete to (k+1)**2, hence with N = isqrt(floor x):

    S(x) = T(N) + sum_{k=1}^{N-1} 2k f((k+1)**2) + (floor(x) - N**2) f((N+1)**2)
         = 2 W(N) - T(N) + (floor(x) - N**2) f((N+1)**2).

An uncorrected variant of the block identity (method "paper-literal-block")
treats every n in [k**2, (k+1)**2) as completing to (k+1)**2 and the tail
as carrying floor(x) - N**2 + 1 terms; it exceeds the true sum by exactly
f((N+1)**2) - 1 and is provided only for deviation reporting.

Since f(m**2) = prod (2a+1)/2 over p**a || m, a segmented SPF-style sieve
yields per-m odd numerators g(m) and denominator exponents w(m) = omega(m).
Segment sums are accumulated as integers scaled by a shared power of two,
chunked so that no int64 partial sum can overflow, then folded into
arbitrary-precision dyadic accumulators.  Everything is exact, so the fixed
accumulation order (increasing m, increasing n) and any range partitioning
across threads produce bit-identical results.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .dyadic import DyadicRational
from .errors import CapExceededError
from .factor import primes_up_to

DEFAULT_SEGMENT_SIZE = 1 << 20
DEFAULT_DIRECT_CAP = 10**9

METHOD_DIRECT = "direct"
METHOD_BLOCK = "block"
METHOD_PAPER_LITERAL = "paper-literal-block"


@dataclass(frozen=True)
class SumReport:
    """One evaluation of a summatory function.

    value is exact; value_f64 is its correctly rounded binary64 image.
    terms_processed counts summand evaluations (floor(x) for the direct
    method, N + 1 distinct f(m**2) values for the block methods).
    """

    x: int
    method: str
    value: DyadicRational
    value_f64: float
    terms_processed: int
    elapsed: float


def _floor_arg(x, name: str = "x") -> int:
    """Sums over n <= x depend on floor(x) only; reject x < 1."""
    xf = math.floor(x)
    if xf < 1:
        raise ValueError(f"{name} must be >= 1, got {x!r}")
    return int(xf)


def _exact_sum(a: np.ndarray) -> int:
    """Sum an int64 array into a Python int with no overflow anywhere.

    Partial sums are taken over chunks short enough that chunk * max|a|
    stays below 2**62, then folded in arbitrary precision.
    """
    n = a.size
    if n == 0:
        return 0
    peak = int(np.abs(a).max())
    if peak == 0:
        return 0
    chunk = (1 << 62) // peak
    if chunk >= n:
        return int(a.sum())
    starts = np.arange(0, n, max(chunk, 1))
    parts = np.add.reduceat(a, starts)
    return sum(int(v) for v in parts)


def _sieve_primes_for(hi: int) -> np.ndarray:
    """Primes needed to sieve values < hi: everything up to isqrt(hi - 1)."""
    return primes_up_to(math.isqrt(max(hi - 1, 0)))


def _dsq_arrays(lo: int, hi: int, primes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-m numerator/exponent of f(m**2) for m in [lo, hi).

    Returns (g, w) with f(m**2) = g[m - lo] / 2**w[m - lo] and g odd.
    primes must contain every prime <= isqrt(hi - 1); after those are
    divided out, at most one prime factor remains per m (it would
    otherwise exceed hi), contributing a factor 3/2.
    """
    n = hi - lo
    g = np.ones(n, dtype=np.int64)
    w = np.zeros(n, dtype=np.int64)
    rem = np.arange(lo, hi, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        start = (-lo) % p
        if start >= n:
            continue
        idx = np.arange(start, n, p, dtype=np.int64)
        alpha = np.ones(idx.size, dtype=np.int64)
        q = p * p
        while q < hi:
            s2 = (-lo) % q
            if s2 < n:
                # multiples of q sit at stride q; map them into idx positions
                pos = (np.arange(s2, n, q, dtype=np.int64) - start) // p
                alpha[pos] += 1
            q *= p
        g[idx] *= 2 * alpha + 1
        w[idx] += 1
        rem[idx] //= p**alpha
    left = rem > 1
    g[left] *= 3
    w[left] += 1
    return g, w


def _segment_sums(lo: int, hi: int, primes: np.ndarray) -> tuple[int, int, int]:
    """Exact (sum f(m**2), sum m*f(m**2), shared exponent) over [lo, hi).

    Both sums are returned as integers scaled by 2**exp.
    """
    g, w = _dsq_arrays(lo, hi, primes)
    exp = int(w.max()) if w.size else 0
    scaled = g << (exp - w)
    t = _exact_sum(scaled)
    m = np.arange(lo, hi, dtype=np.int64)
    ws = _exact_sum(m * scaled)
    return t, ws, exp


class SquareValueCache:
    """Materialized f(m**2) numerators/exponents for m in [1, capacity].

    Read-only after construction; lets repeated small evaluations (e.g.
    an oracle sweep over every x <= 10**5) skip re-sieving.
    """

    def __init__(self, capacity: int, segment_size: int = DEFAULT_SEGMENT_SIZE):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        primes = _sieve_primes_for(capacity + 1)
        gs, ws = [], []
        for lo in range(1, capacity + 1, segment_size):
            hi = min(lo + segment_size, capacity + 1)
            g, w = _dsq_arrays(lo, hi, primes)
            gs.append(g)
            ws.append(w)
        self.g = np.concatenate(gs)
        self.w = np.concatenate(ws)
        self.g.setflags(write=False)
        self.w.setflags(write=False)
        # scaled[m-1] = g * 2**(exp - w), shared exponent for gather sums
        self.exp = int(self.w.max())
        self.scaled = self.g << (self.exp - self.w)
        self.scaled.setflags(write=False)

    def value(self, m: int) -> DyadicRational:
        """f(m**2) as an exact dyadic rational."""
        if not 1 <= m <= self.capacity:
            raise ValueError(f"m={m} outside cache range [1, {self.capacity}]")
        return DyadicRational(int(self.g[m - 1]), int(self.w[m - 1]))


def _segment_ranges(lo: int, hi: int, segment_size: int) -> list[tuple[int, int]]:
    return [(a, min(a + segment_size, hi)) for a in range(lo, hi, segment_size)]


def _prefix_sums(
    n_max: int,
    *,
    segment_size: int,
    threads: int,
    cache: SquareValueCache | None = None,
) -> tuple[DyadicRational, DyadicRational]:
    """Exact (T(n_max), W(n_max)) via the segmented sieve.

    Partial segment results are exact, so folding them in ascending
    order yields the same value for any thread count.
    """
    if cache is not None and n_max <= cache.capacity:
        g = cache.g[:n_max]
        scaled = cache.scaled[:n_max]
        t = DyadicRational(_exact_sum(scaled), cache.exp)
        m = np.arange(1, n_max + 1, dtype=np.int64)
        ws = DyadicRational(_exact_sum(m * scaled), cache.exp)
        return t, ws
    primes = _sieve_primes_for(n_max + 1)
    ranges = _segment_ranges(1, n_max + 1, segment_size)
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda r: _segment_sums(*r, primes), ranges))
    else:
        results = [_segment_sums(a, b, primes) for a, b in ranges]
    t_acc = DyadicRational(0)
    w_acc = DyadicRational(0)
    for t, ws, exp in results:
        t_acc = t_acc + DyadicRational(t, exp)
        w_acc = w_acc + DyadicRational(ws, exp)
    return t_acc, w_acc


def _tail_factor(m: int, cache: SquareValueCache | None) -> DyadicRational:
    """f(m**2) for a single m."""
    if cache is not None and m <= cache.capacity:
        return cache.value(m)
    from .factor import factorize, tau_per_unitary_sq

    return tau_per_unitary_sq(factorize(m))


def sum_block(
    x,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    cache: SquareValueCache | None = None,
) -> SumReport:
    """S(x) by the corrected block identity; exact, O(sqrt x) f-values.

    Identical to sum_direct(x) wherever both run.
    """
    t0 = time.perf_counter()
    xf = _floor_arg(x)
    n = math.isqrt(xf)
    t_sum, w_sum = _prefix_sums(
        n, segment_size=segment_size, threads=threads, cache=cache
    )
    tail = _tail_factor(n + 1, cache)
    value = 2 * w_sum - t_sum + (xf - n * n) * tail
    return SumReport(
        x=xf,
        method=METHOD_BLOCK,
        value=value,
        value_f64=float(value),
        terms_processed=n + 1,
        elapsed=time.perf_counter() - t0,
    )


def sum_block_paper_literal(
    x,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    cache: SquareValueCache | None = None,
) -> SumReport:
    """S(x) by the uncorrected block identity (NOT equal to the true sum).

    Every n in [k**2, (k+1)**2) is treated as completing to (k+1)**2:
    main part sum_{k=1}^{N-1} (2k+1) f((k+1)**2), i.e. 2 W(N) - T(N) - 1,
    plus a tail of floor(x) - N**2 + 1 copies of f((N+1)**2).  Exceeds the
    true S(x) by exactly f((N+1)**2) - 1.
    """
    t0 = time.perf_counter()
    xf = _floor_arg(x)
    n = math.isqrt(xf)
    t_sum, w_sum = _prefix_sums(
        n, segment_size=segment_size, threads=threads, cache=cache
    )
    tail = _tail_factor(n + 1, cache)
    value = 2 * w_sum - t_sum - 1 + (xf - n * n + 1) * tail
    return SumReport(
        x=xf,
        method=METHOD_PAPER_LITERAL,
        value=value,
        value_f64=float(value),
        terms_processed=n + 1,
        elapsed=time.perf_counter() - t0,
    )


def _isqrt_array(a: np.ndarray) -> np.ndarray:
    """Exact floor square roots of a non-negative int64 array.

    Float sqrt only seeds the value; integer correction passes make the
    bracketing r**2 <= a < (r+1)**2 exact regardless of float rounding.
    """
    r = np.sqrt(a.astype(np.float64)).astype(np.int64)
    while True:
        over = r * r > a
        if not over.any():
            break
        r[over] -= 1
    while True:
        under = (r + 1) * (r + 1) <= a
        if not under.any():
            break
        r[under] += 1
    return r


def _direct_segment(lo: int, hi: int, scaled: np.ndarray) -> int:
    """Scaled exact sum of f(n + s(n)) over n in [lo, hi).

    scaled[r - 1] must hold f(r**2) numerators under a shared exponent.
    """
    nv = np.arange(lo, hi, dtype=np.int64)
    roots = _isqrt_array(nv - 1) + 1
    return _exact_sum(scaled[roots - 1])


def sum_direct(
    x,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    cap: int = DEFAULT_DIRECT_CAP,
    cache: SquareValueCache | None = None,
) -> SumReport:
    """S(x) = sum_{n <= x} f(n + s(n)), evaluated for every single n.

    The oracle method: each term looks up its own completion root.
    Refuses x above `cap` (10**9 by default) rather than run for hours;
    use sum_block beyond that.
    """
    t0 = time.perf_counter()
    xf = _floor_arg(x)
    if xf > cap:
        raise CapExceededError(
            f"direct summation of {xf} terms exceeds cap {cap}; "
            "use sum_block (exact, O(sqrt x) work) instead"
        )
    r_max = math.isqrt(xf) + 1
    if cache is not None and cache.capacity >= r_max:
        scaled, exp = cache.scaled, cache.exp
    else:
        g, w = _dsq_arrays(1, r_max + 1, _sieve_primes_for(r_max + 1))
        exp = int(w.max())
        scaled = g << (exp - w)
    ranges = _segment_ranges(1, xf + 1, segment_size)
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda r: _direct_segment(*r, scaled), ranges))
    else:
        parts = [_direct_segment(a, b, scaled) for a, b in ranges]
    value = DyadicRational(sum(parts), exp)
    return SumReport(
        x=xf,
        method=METHOD_DIRECT,
        value=value,
        value_f64=float(value),
        terms_processed=xf,
        elapsed=time.perf_counter() - t0,
    )


def sum_squares(
    n,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    cache: SquareValueCache | None = None,
) -> SumReport:
    """T(N) = sum_{m <= N} f(m**2), exact."""
    t0 = time.perf_counter()
    nf = _floor_arg(n, "N")
    t_sum, _ = _prefix_sums(nf, segment_size=segment_size, threads=threads, cache=cache)
    return SumReport(
        x=nf,
        method=METHOD_DIRECT,
        value=t_sum,
        value_f64=float(t_sum),
        terms_processed=nf,
        elapsed=time.perf_counter() - t0,
    )


def sum_squares_weighted(
    n,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    cache: SquareValueCache | None = None,
) -> SumReport:
    """W(N) = sum_{m <= N} m * f(m**2), exact.

    Satisfies the summation-by-parts identity
    W(N) = N*T(N) - sum_{m < N} T(m).
    """
    t0 = time.perf_counter()
    nf = _floor_arg(n, "N")
    _, w_sum = _prefix_sums(nf, segment_size=segment_size, threads=threads, cache=cache)
    return SumReport(
        x=nf,
        method=METHOD_DIRECT,
        value=w_sum,
        value_f64=float(w_sum),
        terms_processed=nf,
        elapsed=time.perf_counter() - t0,
    )


def sieve_square_values(
    lo: int,
    hi: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> Iterator[tuple[int, DyadicRational]]:
    """Yield (m, f(m**2)) for m in [lo, hi], sieving one segment at a time.

    Matches tau_per_unitary_sq(factorize(m)) for every m; prime factors
    above isqrt(hi) surface as the single leftover factor per m.
    """
    if lo < 1 or hi < lo:
        raise ValueError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    primes = _sieve_primes_for(hi + 1)
    for a in range(lo, hi + 1, segment_size):
        b = min(a + segment_size, hi + 1)
        g, w = _dsq_arrays(a, b, primes)
        for i in range(b - a):
            yield a + i, DyadicRational(int(g[i]), int(w[i]))
