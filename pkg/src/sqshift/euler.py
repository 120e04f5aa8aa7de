"""Euler products and Dirichlet-series diagnostics for f(n**2).

With f = tau_per_unitary, the Dirichlet series sum_n f(n**2) n**(-s) is
multiplicative with local factor (x = p**(-s))

    L_p(s) = 1 + sum_{m>=1} (2m+1)/2 x**m = (2 - x + x**2) / (2 (1-x)**2),

so for s > 1 the series equals zeta(s)**2 * Q(s) where

    Q(s) = prod_p (1 - x/2 + x**2/2).

At s = 1 the factor logs behave like -1/(2p) whose sum over primes
diverges, so the partial products of Q(1) keep decreasing as the cutoff
grows and the matching log-derivative sums keep growing: no converged
limit constant is ever reported here, only cutoff-parameterized values
(computed in extended precision; binary64 mirrors ride along).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import mpmath as mp
import numpy as np

from .factor import primes_up_to
from .summatory import DEFAULT_SEGMENT_SIZE, _dsq_arrays, _sieve_primes_for

DEFAULT_DPS = 30  # well past the 25 significant digits the records promise

# Euler-Mascheroni constant gamma = lim (H_n - ln n); below to 50 digits.
EULER_GAMMA_STR = "0.57721566490153286060651209008240243104215933593992"
EULER_GAMMA = float(mp.mpf(EULER_GAMMA_STR))


@dataclass(frozen=True)
class MathConstants:
    """Stored constants: gamma as binary64 plus extended precision."""

    gamma: float
    gamma_hp: mp.mpf

    @classmethod
    def default(cls, dps: int = DEFAULT_DPS) -> "MathConstants":
        with mp.workdps(dps):
            return cls(gamma=EULER_GAMMA, gamma_hp=mp.mpf(EULER_GAMMA_STR))


@dataclass(frozen=True)
class EulerProductEstimate:
    """Cutoff-parameterized partial product and log-derivative sum at s = 1.

    c1_partial    = prod_{p <= cutoff} (1 - 1/(2p) + 1/(2p**2))
    logderiv_sum  = sum_{p <= cutoff} ln(p) (1/(2p) - 1/p**2) / (1 - 1/(2p) + 1/(2p**2))
    c2_partial    = c1_partial * logderiv_sum

    c1_partial strictly decreases and logderiv_sum never decreases as the
    cutoff grows (each factor is < 1, each summand >= 0 for p >= 2).
    """

    cutoff: int
    s: float
    c1_partial: mp.mpf
    logderiv_sum: mp.mpf
    c2_partial: mp.mpf
    c1_partial_f64: float
    logderiv_sum_f64: float
    c2_partial_f64: float
    per_prime: tuple | None = None


class SeriesCheck(NamedTuple):
    lhs: float
    rhs: float
    gap: float


class ProductPair(NamedTuple):
    direct: mp.mpf  # plain running product
    via_exp_log: mp.mpf  # exp of the sum of factor logs


class DirichletFactorizationCheck(NamedTuple):
    lhs: float  # partial Dirichlet sum of f(n**2) n**(-s)
    rhs: float  # zeta(s)**2 * truncated product
    gap: float
    tail_bound: float  # crude integral bound on the neglected series tail


def local_factor(p: int, s: float) -> float:
    """Closed form (2 - p**-s + p**-2s) / (2 (1 - p**-s)**2).

    Equals the series 1 + sum_{m>=1} (2m+1)/2 p**(-ms); s <= 0 is
    rejected (the series diverges there).
    """
    if s <= 0:
        raise ValueError(f"s must be > 0, got {s}")
    if p < 2:
        raise ValueError(f"p must be a prime >= 2, got {p}")
    x = float(p) ** (-s)
    return (2.0 - x + x * x) / (2.0 * (1.0 - x) ** 2)


def local_factor_series(p: int, s: float, terms: int) -> float:
    """Partial series 1 + sum_{m=1}^{terms} (2m+1)/2 p**(-ms)."""
    if s <= 0:
        raise ValueError(f"s must be > 0, got {s}")
    x = float(p) ** (-s)
    acc = 1.0
    xm = 1.0
    for m in range(1, terms + 1):
        xm *= x
        acc += 0.5 * (2 * m + 1) * xm
    return acc


def series_identity_check(x: float, m_terms: int) -> SeriesCheck:
    """Partial sum of sum_m (2m+1) x**m against the closed form (1+x)/(1-x)**2.

    The gap shrinks geometrically in m_terms for |x| < 1.
    """
    if abs(x) >= 1:
        raise ValueError(f"|x| must be < 1, got {x}")
    if m_terms < 1:
        raise ValueError("m_terms must be >= 1")
    lhs = math.fsum((2 * m + 1) * x**m for m in range(0, m_terms + 1))
    rhs = (1.0 + x) / (1.0 - x) ** 2
    return SeriesCheck(lhs, rhs, abs(lhs - rhs))


def truncated_product_pair(s: float, cutoff: int, dps: int = DEFAULT_DPS) -> ProductPair:
    """Q(s) truncated at p <= cutoff, both as a direct product and as
    exp(sum log factor); the two must agree to ~1e-12 relative."""
    if cutoff < 2:
        raise ValueError(f"cutoff must be >= 2, got {cutoff}")
    if s <= 0:
        raise ValueError(f"s must be > 0, got {s}")
    with mp.workdps(dps):
        prod = mp.mpf(1)
        logsum = mp.mpf(0)
        for p in primes_up_to(cutoff):
            x = mp.power(int(p), -s)
            term = 1 - x / 2 + (x * x) / 2
            prod *= term
            logsum += mp.log(term)
        return ProductPair(prod, mp.exp(logsum))


def truncated_product(s: float, cutoff: int, dps: int = DEFAULT_DPS) -> mp.mpf:
    """prod_{p <= cutoff} (1 - p**-s/2 + p**-2s/2) in extended precision."""
    return truncated_product_pair(s, cutoff, dps).direct


def product_constants_series(
    cutoffs: list[int],
    *,
    dps: int = DEFAULT_DPS,
    include_per_prime: bool = False,
) -> list[EulerProductEstimate]:
    """EulerProductEstimates at several cutoffs from one ascending pass."""
    if not cutoffs:
        raise ValueError("need at least one cutoff")
    if any(c < 2 for c in cutoffs):
        raise ValueError(f"cutoffs must all be >= 2, got {cutoffs}")
    targets = sorted(set(int(c) for c in cutoffs))
    out: list[EulerProductEstimate] = []
    with mp.workdps(dps):
        c1 = mp.mpf(1)
        logderiv = mp.mpf(0)
        contributions: list[tuple[int, mp.mpf, mp.mpf]] = []
        primes = primes_up_to(targets[-1])
        it = iter(targets)
        target = next(it)

        def snapshot(cut: int) -> EulerProductEstimate:
            c2 = c1 * logderiv
            return EulerProductEstimate(
                cutoff=cut,
                s=1.0,
                c1_partial=+c1,
                logderiv_sum=+logderiv,
                c2_partial=c2,
                c1_partial_f64=float(c1),
                logderiv_sum_f64=float(logderiv),
                c2_partial_f64=float(c2),
                per_prime=tuple(contributions) if include_per_prime else None,
            )

        for p in primes:
            p = int(p)
            while target is not None and p > target:
                out.append(snapshot(target))
                target = next(it, None)
            pm = mp.mpf(p)
            half_inv = 1 / (2 * pm)
            inv_sq = 1 / (pm * pm)
            factor = 1 - half_inv + inv_sq / 2
            summand = mp.log(pm) * (half_inv - inv_sq) / factor
            c1 *= factor
            logderiv += summand
            if include_per_prime:
                contributions.append((p, factor, summand))
        while target is not None:
            out.append(snapshot(target))
            target = next(it, None)
    # return in the caller's cutoff order
    by_cutoff = {e.cutoff: e for e in out}
    return [by_cutoff[int(c)] for c in cutoffs]


def product_constants(
    cutoff: int, *, dps: int = DEFAULT_DPS, include_per_prime: bool = False
) -> EulerProductEstimate:
    """Partial product / log-derivative constants for a single cutoff."""
    return product_constants_series(
        [cutoff], dps=dps, include_per_prime=include_per_prime
    )[0]


def zeta_real(s: float, n_terms: int) -> float:
    """zeta(s) for real s > 1: partial sum plus integral tail correction.

    sum_{n <= N} n**-s + N**(1-s)/(s-1); the neglected remainder is
    O(N**-s), e.g. ~5e-13 for s = 2, N = 10**6.
    """
    if s <= 1:
        raise ValueError(f"s must be > 1, got {s}")
    if n_terms < 10:
        raise ValueError(f"n_terms must be >= 10, got {n_terms}")
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    head = float(np.sum(n ** (-s)))
    tail = float(n_terms) ** (1.0 - s) / (s - 1.0)
    return head + tail


def dirichlet_factorization_check(
    s: float,
    n_max: int,
    cutoff: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    dps: int = DEFAULT_DPS,
) -> DirichletFactorizationCheck:
    """Compare sum_{n <= n_max} f(n**2) n**-s with zeta(s)**2 Q(s)|_{p <= cutoff}.

    The reported tail_bound is the crude integral estimate
    int_{n_max}^inf t**-s ln(t)**2 dt for the neglected terms (f(n**2)
    never exceeds tau(n**2), whose average order is ~ln(n)**2).
    """
    if s <= 1:
        raise ValueError(f"s must be > 1, got {s}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    primes = _sieve_primes_for(n_max + 1)
    lhs_parts = []
    for a in range(1, n_max + 1, segment_size):
        b = min(a + segment_size, n_max + 1)
        g, w = _dsq_arrays(a, b, primes)
        vals = g.astype(np.float64) * np.ldexp(1.0, -w.astype(np.int32))
        n = np.arange(a, b, dtype=np.float64)
        lhs_parts.append(float(np.sum(vals * n ** (-s))))
    lhs = math.fsum(lhs_parts)
    zeta = zeta_real(s, max(n_max, 1000))
    rhs = zeta * zeta * float(truncated_product(s, cutoff, dps))
    # int_N^inf t^-s ln^2 t dt = N^(1-s)/(s-1) [ln^2 N + 2 ln N/(s-1) + 2/(s-1)^2]
    ln_n = math.log(n_max) if n_max > 1 else 0.0
    sm1 = s - 1.0
    tail_bound = n_max ** (1.0 - s) / sm1 * (ln_n**2 + 2 * ln_n / sm1 + 2 / sm1**2)
    return DirichletFactorizationCheck(lhs, rhs, abs(lhs - rhs), tail_bound)
