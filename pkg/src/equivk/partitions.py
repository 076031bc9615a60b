"""Distinct-part partition statistics and the closed forms for S_n and A_n."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .ktheory import KRankReport, place


@dataclass(frozen=True)
class PartitionCounts:
    n: int
    a_n: int  # even number of even parts
    b_n: int  # odd number of even parts
    p_n: int  # even number of parts
    i_n: int  # odd number of parts

    @property
    def total(self) -> int:
        return self.a_n + self.b_n


def distinct_partitions(n: int, smallest: int = 1) -> Iterator[tuple[int, ...]]:
    """Strictly increasing tuples of positive integers summing to n."""
    if n == 0:
        yield ()
        return
    for first in range(smallest, n + 1):
        rest = n - first
        if rest == 0:
            yield (first,)
        elif rest > first:
            for tail in distinct_partitions(rest, first + 1):
                yield (first,) + tail


@lru_cache(maxsize=None)
def _tally(n: int, smallest: int) -> tuple[tuple[int, int], ...]:
    # counts indexed by (parity of #even parts, parity of #parts)
    if n == 0:
        return ((1, 0), (0, 0))
    acc = [[0, 0], [0, 0]]
    for first in range(smallest, n + 1):
        rest = n - first
        if rest != 0 and rest <= first:
            continue
        sub = _tally(rest, first + 1)
        de = first % 2 == 0
        for e in (0, 1):
            for p in (0, 1):
                acc[(e + de) % 2][(p + 1) % 2] += sub[e][p]
    return tuple(tuple(row) for row in acc)


def partition_counts(n: int) -> PartitionCounts:
    if n < 2:
        raise ValueError("partition counts are defined for n >= 2")
    t = _tally(n, 1)
    return PartitionCounts(n, a_n=t[0][0] + t[0][1], b_n=t[1][0] + t[1][1],
                           p_n=t[0][0] + t[1][0], i_n=t[0][1] + t[1][1])


def partition_counts_bruteforce(n: int) -> PartitionCounts:
    a = b = p = i = 0
    for lam in distinct_partitions(n):
        evens = sum(1 for x in lam if x % 2 == 0)
        if evens % 2:
            b += 1
        else:
            a += 1
        if len(lam) % 2:
            i += 1
        else:
            p += 1
    return PartitionCounts(n, a, b, p, i)


def sym_ranks(n: int) -> KRankReport:
    c = partition_counts(n)
    k0, k1 = place(c.a_n, c.b_n, n)
    return KRankReport(n, False, k0, k1, "partition_formula", math.factorial(n))


def alt_ranks(n: int) -> KRankReport:
    if n < 3:
        raise ValueError("alt_ranks needs n >= 3")
    c = partition_counts(n)
    k0, k1 = place(2 * c.a_n + c.b_n, 0, n)
    return KRankReport(n, True, k0, k1, "partition_formula", math.factorial(n) // 2)


def decomposing_class_counts(n: int) -> tuple[int, int]:
    """(C_Sn^dec, C_An^dec) = (a + 2b, 2a + b)."""
    c = partition_counts(n)
    return c.a_n + 2 * c.b_n, 2 * c.a_n + c.b_n

