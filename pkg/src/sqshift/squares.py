"""Integer square roots and completion of integers to the next square.

Every n >= 1 has a unique smallest root r with r**2 >= n; the completion
shift is r**2 - n.  The shift is 0 exactly on perfect squares, and the
interval [k**2, (k+1)**2) splits as: n = k**2 completes to k**2 itself,
and the remaining 2k values complete to (k+1)**2.  That casework is what
the blockwise summation in `summatory` is built on.
"""

from __future__ import annotations

import math
from typing import NamedTuple

# math.isqrt is exact integer arithmetic for arbitrary n (no float path),
# so the bracketing r**2 <= n < (r+1)**2 holds even around 2**53 and 2**64.
isqrt = math.isqrt


class ShiftDecomposition(NamedTuple):
    n: int
    root: int  # smallest r with r**2 >= n
    shift: int  # root**2 - n


class Block(NamedTuple):
    lo: int  # k**2
    hi: int  # (k+1)**2 - 1
    count_at_ksq: int  # members completing to k**2 (always 1: n = k**2)
    count_to_next: int  # members completing to (k+1)**2 (always 2k)


def square_completion(n: int) -> ShiftDecomposition:
    """Smallest root r with r**2 >= n, and the shift r**2 - n.

    isqrt(n - 1) + 1 is the ceiling square root for every n >= 1
    (including n = 1, where isqrt(0) + 1 = 1).
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    root = math.isqrt(n - 1) + 1
    return ShiftDecomposition(n, root, root * root - n)


def square_block(k: int) -> Block:
    """The interval [k**2, (k+1)**2 - 1] with its completion counts."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    return Block(k * k, (k + 1) * (k + 1) - 1, 1, 2 * k)
