import pytest
from hypothesis import given
from hypothesis import strategies as st

from equivk.partitions import (decomposing_class_counts, distinct_partitions,
                               partition_counts, partition_counts_bruteforce)

# number of partitions into distinct parts, n = 2..15 (OEIS A000009)
DISTINCT = [1, 2, 2, 3, 4, 5, 6, 8, 10, 12, 15, 18, 22, 27]


def pentagonal_difference(n: int) -> int:
    """Euler: #even - #odd distinct-part partitions of n."""
    k = 1
    while k * (3 * k - 1) // 2 <= n:
        if n in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            return (-1) ** k
        k += 1
    return 0


def test_enumeration_examples():
    got = sorted(tuple(sorted(lam)) for lam in distinct_partitions(6))
    assert got == [(1, 2, 3), (1, 5), (2, 4), (6,)]
    assert [len(list(distinct_partitions(n))) for n in range(2, 16)] == DISTINCT


def test_small_values():
    assert [(c.a_n, c.b_n) for c in map(partition_counts, range(2, 8))] == [
        (0, 1), (1, 1), (1, 1), (1, 2), (2, 2), (2, 3)]


@pytest.mark.parametrize("n", range(2, 26))
def test_memoized_matches_bruteforce(n):
    assert partition_counts(n) == partition_counts_bruteforce(n)


@given(st.integers(2, 60))
def test_parity_identities(n):
    c = partition_counts(n)
    if n % 2:
        assert (c.a_n, c.b_n) == (c.i_n, c.p_n)
    else:
        assert (c.a_n, c.b_n) == (c.p_n, c.i_n)
    assert c.p_n - c.i_n == pentagonal_difference(n)
    assert c.a_n + c.b_n == c.p_n + c.i_n == c.total


def test_n_below_two():
    with pytest.raises(ValueError):
        partition_counts(1)


def test_decomposing_counts():
    assert decomposing_class_counts(3) == (3, 3)
    assert decomposing_class_counts(5) == (5, 4)
