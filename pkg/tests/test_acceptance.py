"""End-to-end acceptance checks, each with its own time bound."""
import time
from functools import lru_cache

import numpy as np
import pytest

from equivk import zoo
from equivk.cover import build_double_cover, class_counts
from equivk.ktheory import compute, karoubi_ranks, pinc_for_group, place, ranks_from_counts
from equivk.matgroup import generate_group
from equivk.onfamily import INFINITE, ZERO, OnActionSpec, finite, gl_table, spinor_test, symbolic_ranks
from equivk.partitions import partition_counts, sym_ranks
from equivk.verify import run_suite


@lru_cache(maxsize=None)
def sym_counts(n):
    return class_counts(build_double_cover(zoo.sym(n)))


@pytest.mark.criterion(1, "Z2 reflection on R gives (Z, 0) by all three methods")
def test_reflection_on_the_line():
    t0 = time.perf_counter()
    G = generate_group([np.array([[-1.0]])])
    got = {compute(G).ranks, pinc_for_group(G).ranks, karoubi_ranks(G).ranks}
    assert got == {(1, 0)}
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.criterion(2, "cyclic corpus m=2..12, rotation and reflection actions")
def test_cyclic_corpus():
    t0 = time.perf_counter()
    for m in range(2, 13):
        G = zoo.cyclic(m, "rotation")
        assert compute(G).ranks == place(m, 0, G.dimension), m
        if m % 2 == 0:
            G = zoo.cyclic(m, "reflection")
            assert compute(G).ranks == place(0, m // 2, G.dimension), m
    assert time.perf_counter() - t0 < 5.0


@pytest.mark.criterion(3, "S_n, n=2..6: pipeline = Karoubi = partition formula")
def test_symmetric_triple_agreement():
    for n in range(2, 7):
        t0 = time.perf_counter()
        G = zoo.sym(n)
        pipeline = ranks_from_counts(sym_counts(n), False, n, len(G)).ranks
        assert pipeline == compute(G).ranks
        c = partition_counts(n)
        expected = place(c.a_n, c.b_n, n)
        assert pipeline == karoubi_ranks(G).ranks == sym_ranks(n).ranks == expected, n
        assert time.perf_counter() - t0 < 60.0


@pytest.mark.criterion(4, "decomposing class counts of S_n, A_n covers, n=2..6")
def test_decomposing_class_counts():
    for n in range(2, 7):
        cgr, cg, ckr, ck = sym_counts(n)
        c = partition_counts(n)
        assert cgr - cg == c.a_n + 2 * c.b_n, n
        assert ckr - ck == 2 * c.a_n + c.b_n, n
        if n >= 3:
            # same count from the alternating group built on its own
            acgr, acg, _, _ = class_counts(build_double_cover(zoo.alt(n)))
            assert acgr - acg == ckr - ck, n


@pytest.mark.criterion(5, "parity identities for distinct-part partitions, n=2..60")
def test_partition_identities():
    t0 = time.perf_counter()
    for n in range(2, 61):
        c = partition_counts(n)
        if n % 2:
            assert (c.a_n, c.b_n) == (c.i_n, c.p_n), n
        else:
            assert (c.a_n, c.b_n) == (c.p_n, c.i_n), n
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.criterion(6, "GL(n,R) table for n=2..8")
def test_gl_table():
    t0 = time.perf_counter()
    rows = gl_table(8)
    assert [r[0] for r in rows] == list(range(2, 9))
    for n, k0, k1 in rows:
        if n == 2:
            assert (k0, k1) == (finite(1), INFINITE)
        elif n % 2 == 0:
            assert (k0, k1) == (INFINITE, INFINITE)
        else:
            m = (n - 1) // 2
            # (+)_N Z sits in the *+m odd slot
            assert (k0, k1) == ((ZERO, INFINITE) if m % 2 == 0 else (INFINITE, ZERO)), n
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.criterion(7, "O(n) standard action and spinor test on symmetric matrices")
def test_orthogonal_family():
    for n in range(2, 9):
        assert symbolic_ranks(OnActionSpec(n)) == (INFINITE, ZERO), n
        # dim V^- = 2(n-2) is divisible by 4 exactly when n is even
        assert spinor_test(OnActionSpec(n, "symmetric_matrices")) == (2 * (n - 2) % 4 == 0), n


@pytest.mark.criterion(8, "full property suite")
def test_full_property_suite():
    t0 = time.perf_counter()
    results = run_suite("full")
    failed = [(r.name, r.detail) for r in results if not r.passed]
    assert not failed, failed
    assert time.perf_counter() - t0 < 300.0
