"""Verification suites: oracle equality, summation-by-parts, local factors.

These are the executable correctness arguments for the package.  The
oracle-equality sweep recomputes S(x) two independent ways - a running
term-by-term prefix (every n looks up its own completion root) against
the blockwise formula evaluated from scratch at each x - and reports the
first counterexample on mismatch.  Wiring the uncorrected block variant
into the sweep must fail at tiny x; that it does is itself a test that
the suite has teeth.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .dyadic import DyadicRational
from .euler import local_factor, local_factor_series
from .summatory import (
    DEFAULT_SEGMENT_SIZE,
    SquareValueCache,
    _exact_sum,
    _isqrt_array,
    sum_block,
    sum_block_paper_literal,
    sum_direct,
    sum_squares,
    sum_squares_weighted,
)

DEFAULT_SEED = 1729

LOCAL_FACTOR_PRIMES = (2, 3, 5, 7, 11)
LOCAL_FACTOR_S_GRID = (1.2, 1.5, 2.0, 3.0)
SERIES_TOL = 1e-12
NUMERATOR_TOL = 1e-14


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    counterexample: dict | None = field(default=None)


def _block_fn(method: str):
    if method == "block":
        return sum_block
    if method == "paper-literal":
        return sum_block_paper_literal
    raise ValueError(f"unknown block method {method!r}")


def oracle_equality_sweep(
    max_x: int,
    *,
    random_count: int = 0,
    random_lo: int = 10**5,
    random_hi: int = 10**7,
    seed: int = DEFAULT_SEED,
    method: str = "block",
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> CheckResult:
    """block(x) == direct(x) for every x in [1, max_x], plus random larger x.

    The direct side is a single running prefix of f(n + s(n)) accumulated
    term by term; the block side is re-evaluated at every x.
    """
    if max_x < 1:
        raise ValueError(f"max_x must be >= 1, got {max_x}")
    block = _block_fn(method)
    r_max = math.isqrt(max(max_x, 1)) + 1
    cache = SquareValueCache(r_max + 1, segment_size=segment_size)
    scaled, exp = cache.scaled, cache.exp

    name = f"oracle-equality[{method}]"
    prefix = 0  # exact running sum, scaled by 2**exp
    for lo in range(1, max_x + 1, segment_size):
        hi = min(lo + segment_size, max_x + 1)
        nv = np.arange(lo, hi, dtype=np.int64)
        roots = _isqrt_array(nv - 1) + 1
        terms = scaled[roots - 1]
        cum = np.cumsum(terms)  # int64-safe: bounded by max_x * max(scaled)
        for i in range(hi - lo):
            x = lo + i
            direct_val = DyadicRational(prefix + int(cum[i]), exp)
            block_val = block(x, cache=cache).value
            if block_val != direct_val:
                return CheckResult(
                    name,
                    False,
                    f"first mismatch at x={x}",
                    {"x": x, "direct": str(direct_val), "block": str(block_val)},
                )
        prefix += int(cum[-1])

    if random_count:
        rng = random.Random(seed)
        xs = sorted(rng.randrange(random_lo, random_hi + 1) for _ in range(random_count))
        big_cache = SquareValueCache(math.isqrt(random_hi) + 2)
        for x in xs:
            d = sum_direct(x, cache=big_cache, cap=max(random_hi, 10**9))
            b = block(x, cache=big_cache)
            if d.value != b.value:
                return CheckResult(
                    name,
                    False,
                    f"first mismatch at random x={x}",
                    {"x": x, "direct": str(d.value), "block": str(b.value)},
                )

    n_random = random_count if random_count else 0
    return CheckResult(
        name,
        True,
        f"all x in [1, {max_x}] plus {n_random} random x in "
        f"[{random_lo}, {random_hi}] agree exactly",
    )


def partial_summation_check(n_max: int = 1000) -> CheckResult:
    """W(N) == N*T(N) - sum_{m<N} T(m) exactly for all N <= n_max."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    name = "partial-summation"
    cache = SquareValueCache(n_max)
    t_run = DyadicRational(0)
    w_run = DyadicRational(0)
    t_prefix = DyadicRational(0)  # sum_{m < N} T(m)
    for n in range(1, n_max + 1):
        f = cache.value(n)
        t_run = t_run + f
        w_run = w_run + n * f
        rhs = n * t_run - t_prefix
        if w_run != rhs:
            return CheckResult(
                name,
                False,
                f"identity fails at N={n}",
                {"N": n, "W": str(w_run), "N*T-sumT": str(rhs)},
            )
        t_prefix = t_prefix + t_run
    # spot-check the running prefixes against the standalone evaluators
    t_direct = sum_squares(n_max).value
    w_direct = sum_squares_weighted(n_max).value
    if t_run != t_direct or w_run != w_direct:
        return CheckResult(name, False, "running prefix disagrees with evaluator")
    return CheckResult(name, True, f"identity exact for all N <= {n_max}")


def local_factor_checks(series_terms: int = 200) -> CheckResult:
    """Closed form vs truncated series, and the numerator simplification
    (1 - p**-s)**2 * L_p(s) == 1 - p**-s/2 + p**-2s/2, over the fixed grid."""
    name = "local-factor-identities"
    worst_series = 0.0
    worst_numerator = 0.0
    for p in LOCAL_FACTOR_PRIMES:
        for s in LOCAL_FACTOR_S_GRID:
            closed = local_factor(p, s)
            series = local_factor_series(p, s, series_terms)
            worst_series = max(worst_series, abs(closed - series))
            x = float(p) ** (-s)
            lhs = (1.0 - x) ** 2 * closed
            rhs = 1.0 - x / 2.0 + (x * x) / 2.0
            worst_numerator = max(worst_numerator, abs(lhs - rhs))
            if abs(closed - series) >= SERIES_TOL or abs(lhs - rhs) >= NUMERATOR_TOL:
                return CheckResult(
                    name,
                    False,
                    f"identity violated at p={p}, s={s}",
                    {"p": p, "s": s, "series_gap": abs(closed - series),
                     "numerator_gap": abs(lhs - rhs)},
                )
    return CheckResult(
        name,
        True,
        f"worst series gap {worst_series:.3e} (< {SERIES_TOL}), "
        f"worst numerator gap {worst_numerator:.3e} (< {NUMERATOR_TOL})",
    )


def run_all(
    max_x: int,
    *,
    random_count: int = 0,
    random_lo: int = 10**5,
    random_hi: int = 10**7,
    seed: int = DEFAULT_SEED,
    method: str = "block",
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> list[CheckResult]:
    """All verification suites; oracle sweep parameters pass through."""
    return [
        oracle_equality_sweep(
            max_x,
            random_count=random_count,
            random_lo=random_lo,
            random_hi=random_hi,
            seed=seed,
            method=method,
            segment_size=segment_size,
        ),
        partial_summation_check(min(max_x, 1000)),
        local_factor_checks(),
    ]
