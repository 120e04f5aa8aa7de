import math

import pytest
from hypothesis import given, strategies as st

from sqshift import isqrt, square_block, square_completion

from naive import shift_naive


def test_isqrt_examples():
    assert isqrt(0) == 0
    assert isqrt(8) == 2
    assert isqrt(9) == 3
    assert isqrt(2**64 - 1) == 4294967295


@given(st.integers(min_value=0, max_value=2**64 - 1))
def test_isqrt_brackets(n):
    r = isqrt(n)
    assert r * r <= n < (r + 1) * (r + 1)


def test_isqrt_brackets_exhaustive_small():
    for n in range(0, 10**6 + 1):
        r = isqrt(n)
        assert r * r <= n < (r + 1) * (r + 1)


def test_isqrt_near_float_precision_edge():
    # 2**53-adjacent squares, where float sqrt alone misrounds
    for r in [2**26, 2**26 + 1, 94906265, 94906266]:
        sq = r * r
        assert isqrt(sq) == r
        assert isqrt(sq - 1) == r - 1


def test_shift_initial_values():
    assert [square_completion(n).shift for n in range(1, 9)] == [0, 2, 1, 0, 4, 3, 2, 1]
    assert square_completion(1).root == 1
    assert square_completion(4).root == 2


def test_shift_large_square():
    d = square_completion(10**6)
    assert d.shift == 0 and d.root == 1000


def test_shift_domain_error():
    with pytest.raises(ValueError):
        square_completion(0)


def test_shift_consistency_sweep():
    for n in range(1, 10**6 + 1, 7):  # stride keeps runtime sane; squares hit below
        d = square_completion(n)
        assert (d.root - 1) ** 2 < n <= d.root**2
        assert n + d.shift == d.root**2
        assert 0 <= d.shift <= 2 * isqrt(n)
    for r in range(1, 1001):  # every square and its neighbors
        assert square_completion(r * r).shift == 0
        if r > 1:
            assert square_completion(r * r - 1).shift == 1
        assert square_completion(r * r + 1).shift == 2 * r  # next square is (r+1)**2


def test_shift_matches_naive():
    for n in range(1, 2001):
        assert square_completion(n).shift == shift_naive(n)


def test_block_examples():
    assert square_block(1) == (1, 3, 1, 2)
    assert square_block(2) == (4, 8, 1, 4)
    with pytest.raises(ValueError):
        square_block(0)


@given(st.integers(min_value=1, max_value=10**9))
def test_block_width(k):
    b = square_block(k)
    assert b.hi - b.lo + 1 == 2 * k + 1


def test_blocks_tile_without_gap_or_overlap():
    expected_lo = 1
    for k in range(1, 1000):
        b = square_block(k)
        assert b.lo == expected_lo
        expected_lo = b.hi + 1
    assert expected_lo == 1000**2


def test_block_counts_match_enumeration():
    for k in range(1, 1001):
        b = square_block(k)
        at_ksq = 0
        to_next = 0
        for n in range(b.lo, b.hi + 1):
            root = square_completion(n).root
            if root == k:
                at_ksq += 1
            else:
                assert root == k + 1
                to_next += 1
        assert at_ksq == b.count_at_ksq == 1
        assert to_next == b.count_to_next == 2 * k
