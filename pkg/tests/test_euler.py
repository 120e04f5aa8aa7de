import math

import mpmath as mp
import pytest

from sqshift import (
    EULER_GAMMA,
    MathConstants,
    dirichlet_factorization_check,
    local_factor,
    local_factor_series,
    product_constants,
    product_constants_series,
    series_identity_check,
    truncated_product,
    truncated_product_pair,
    zeta_real,
)

PRIME_GRID = (2, 3, 5, 7, 11)
S_GRID = (1.2, 1.5, 2.0, 3.0)


def test_local_factor_examples():
    assert local_factor(2, 1.0) == pytest.approx(3.5, abs=1e-15)
    # cross-check against the series: 1 + (1/2) * 5 = 7/2
    assert local_factor_series(2, 1.0, 60) == pytest.approx(3.5, abs=1e-12)
    expected = (2 - 1 / 9 + 1 / 81) / (2 * (8 / 9) ** 2)
    assert local_factor(3, 2.0) == pytest.approx(expected, abs=1e-15)
    assert abs(local_factor(3, 2.0) - local_factor_series(3, 2.0, 60)) < 1e-12


def test_local_factor_tends_to_one():
    assert local_factor(10**9 + 7, 1.5) == pytest.approx(1.0, abs=1e-10)


def test_local_factor_domain_error():
    with pytest.raises(ValueError):
        local_factor(2, 0.0)
    with pytest.raises(ValueError):
        local_factor(2, -1.0)
    with pytest.raises(ValueError):
        local_factor(1, 1.0)


@pytest.mark.parametrize("p", PRIME_GRID)
@pytest.mark.parametrize("s", S_GRID)
def test_local_factor_series_and_numerator_identities(p, s):
    closed = local_factor(p, s)
    assert abs(closed - local_factor_series(p, s, 200)) < 1e-12
    x = float(p) ** (-s)
    assert abs((1 - x) ** 2 * closed - (1 - x / 2 + x * x / 2)) < 1e-14


def test_series_identity_examples():
    chk = series_identity_check(0.0, 10)
    assert chk.lhs == 1.0 and chk.rhs == 1.0 and chk.gap == 0.0
    chk = series_identity_check(0.5, 60)
    assert chk.rhs == 6.0
    assert chk.gap < 1e-12
    chk = series_identity_check(-0.5, 60)
    assert chk.rhs == pytest.approx(2 / 9, abs=1e-15)
    assert chk.gap < 1e-12


def test_series_identity_domain_error():
    for bad in (1.0, -1.0, 1.5):
        with pytest.raises(ValueError):
            series_identity_check(bad, 10)


def test_series_identity_gap_decreases_in_m():
    gaps = [series_identity_check(0.7, m).gap for m in range(1, 40)]
    assert all(a >= b for a, b in zip(gaps, gaps[1:]))


def test_truncated_product_values():
    assert truncated_product(1.0, 2) == mp.mpf("0.875")
    got = truncated_product(1.0, 3)
    assert abs(got - mp.mpf(7) / 9) < mp.mpf("1e-25")
    # a cutoff of 2 keeps only the p = 2 factor: 1 - 2**(-s-1) + 2**(-2s-1)
    for s in (0.5, 1.0, 2.3):
        want = 1 - 2.0 ** (-s - 1) + 2.0 ** (-2 * s - 1)
        assert float(truncated_product(s, 2)) == pytest.approx(want, rel=1e-14)


def test_truncated_product_domain_error():
    with pytest.raises(ValueError):
        truncated_product(1.0, 1)
    with pytest.raises(ValueError):
        truncated_product(0.0, 10)


@pytest.mark.parametrize("cutoff", [10, 100, 1000, 10**4])
def test_product_against_exp_log_sum(cutoff):
    pair = truncated_product_pair(1.0, cutoff)
    rel = abs(pair.direct - pair.via_exp_log) / pair.direct
    assert rel < mp.mpf("1e-12")


def test_product_constants_cutoff_two_exact():
    est = product_constants(2)
    assert est.c1_partial == mp.mpf("0.875")
    assert est.logderiv_sum == 0
    assert est.c2_partial == 0
    assert est.c1_partial_f64 == 0.875 and est.c2_partial_f64 == 0.0


def test_product_constants_cutoff_three():
    est = product_constants(3)
    assert abs(est.logderiv_sum - mp.log(3) / 16) < mp.mpf("1e-25")
    assert est.c1_partial_f64 == pytest.approx(7 / 9, rel=1e-15)


def test_product_constants_monotonicity():
    ests = product_constants_series([10, 100, 1000, 10**4])
    for a, b in zip(ests, ests[1:]):
        assert a.c1_partial > b.c1_partial > 0
        assert a.logderiv_sum <= b.logderiv_sum
        assert b.c2_partial == b.c1_partial * b.logderiv_sum


def test_product_constants_series_matches_single_calls():
    series = product_constants_series([50, 500])
    for est in series:
        single = product_constants(est.cutoff)
        assert est.c1_partial == single.c1_partial
        assert est.logderiv_sum == single.logderiv_sum


def test_product_constants_per_prime():
    est = product_constants(10, include_per_prime=True)
    ps = [p for p, _, _ in est.per_prime]
    assert ps == [2, 3, 5, 7]
    prod = mp.mpf(1)
    for _, factor, _ in est.per_prime:
        prod *= factor
    assert abs(prod - est.c1_partial) < mp.mpf("1e-25")


def test_product_constants_domain_error():
    with pytest.raises(ValueError):
        product_constants(1)
    with pytest.raises(ValueError):
        product_constants_series([])


def test_zeta_real_known_values():
    assert zeta_real(2.0, 10**6) == pytest.approx(math.pi**2 / 6, abs=1e-9)
    assert zeta_real(4.0, 10**4) == pytest.approx(math.pi**4 / 90, abs=1e-9)
    assert zeta_real(50.0, 100) == pytest.approx(1.0, abs=1e-12)


def test_zeta_real_domain_errors():
    with pytest.raises(ValueError):
        zeta_real(1.0, 1000)
    with pytest.raises(ValueError):
        zeta_real(0.5, 1000)
    with pytest.raises(ValueError):
        zeta_real(2.0, 5)


def test_dirichlet_factorization_fast_tail():
    chk = dirichlet_factorization_check(3.0, 10**4, 10**4)
    assert chk.gap <= 1e-6
    assert chk.gap <= chk.tail_bound


def test_dirichlet_factorization_smoke_n1():
    s = 2.0
    chk = dirichlet_factorization_check(s, 1, 2)
    assert chk.lhs == 1.0
    want_rhs = (1 - 2.0**-s) ** -2 * (1 - 2.0 ** (-s - 1) + 2.0 ** (-2 * s - 1))
    # zeta_real is a truncation, not the exact zeta; stay loose accordingly
    assert chk.rhs == pytest.approx(want_rhs, rel=1e-6)
    assert chk.gap == pytest.approx(abs(chk.lhs - chk.rhs))


def test_dirichlet_factorization_domain_errors():
    with pytest.raises(ValueError):
        dirichlet_factorization_check(1.0, 100, 100)
    with pytest.raises(ValueError):
        dirichlet_factorization_check(2.0, 0, 100)


def test_gamma_constant_against_mpmath_and_harmonic():
    with mp.workdps(40):
        assert abs(mp.mpf(MathConstants.default().gamma_hp) - mp.euler) < mp.mpf("1e-38")
    # harmonic extrapolation: H_n - ln n - 1/(2n) + 1/(12 n**2) -> gamma
    n = 10**5
    h = math.fsum(1.0 / k for k in range(1, n + 1))
    approx = h - math.log(n) - 1 / (2 * n) + 1 / (12 * n**2)
    assert abs(approx - EULER_GAMMA) < 1e-12
    assert EULER_GAMMA == pytest.approx(0.5772156649015329, abs=1e-16)
