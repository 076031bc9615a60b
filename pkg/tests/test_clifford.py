import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equivk.clifford import (BladeElement, CliffordError, NotPinError, PinCandidate,
                             adjoint_action, blade_product, blade_tables,
                             grade_involution, star, volume_element)


def e(n, *idx, coeff=1.0):
    return BladeElement.blade(n, idx, coeff)


def one(n):
    return BladeElement.scalar(n)


def test_unit_vector_squares_to_minus_one():
    assert (e(2, 1) * e(2, 1)).allclose(-one(2))


def test_anticommutation():
    assert (e(2, 1) * e(2, 2)).allclose(BladeElement(2, [0, 0, 0, 1]))
    assert (e(2, 2) * e(2, 1)).allclose(BladeElement(2, [0, 0, 0, -1]))


def test_bivector_square():
    assert (e(2, 1, 2) * e(2, 1, 2)).allclose(-one(2))


def test_dimension_mismatch():
    with pytest.raises(CliffordError):
        blade_product(e(2, 1), e(3, 1))


@pytest.mark.parametrize("elem, expected", [
    (e(2, 1), -e(2, 1)),
    (one(2), one(2)),
    (e(2, 1, 2), -e(2, 1, 2)),
])
def test_star_examples(elem, expected):
    assert star(elem).allclose(expected)


def test_grade_involution_examples():
    assert grade_involution(e(2, 1)).allclose(-e(2, 1))
    x = one(2) + e(2, 1, 2)
    assert grade_involution(x).allclose(x)
    assert grade_involution(e(3, 1, 2, 3)).allclose(-e(3, 1, 2, 3))


def test_volume_element():
    assert volume_element(2).allclose(e(2, 1, 2))
    assert volume_element(4).allclose(e(4, 1, 2, 3, 4))
    assert (volume_element(2) * volume_element(2)).allclose(-one(2))
    with pytest.raises(CliffordError):
        volume_element(3)


def _naive_sign(a: int, b: int, n: int) -> tuple[int, float]:
    """Multiply blades by literally sorting the concatenated index word."""
    word = [i for i in range(n) if a >> i & 1] + [i for i in range(n) if b >> i & 1]
    sign = 1.0
    # bubble sort, counting swaps, then cancel adjacent equal pairs
    w = list(word)
    for i in range(len(w)):
        for j in range(len(w) - 1 - i):
            if w[j] > w[j + 1]:
                w[j], w[j + 1] = w[j + 1], w[j]
                sign = -sign
    out = []
    for x in w:
        if out and out[-1] == x:
            out.pop()
            sign = -sign  # e_i e_i = -1
        else:
            out.append(x)
    return sum(1 << i for i in out), sign


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sign_table_matches_naive_reordering(n):
    xor, sign, _ = blade_tables(n)
    for a in range(1 << n):
        for b in range(1 << n):
            mask, s = _naive_sign(a, b, n)
            assert xor[a, b] == mask
            assert sign[a, b] == s


def test_adjoint_identity():
    x = PinCandidate.from_element(one(2))
    assert np.allclose(adjoint_action(x), np.eye(2))
    assert x.parity == "even"


def test_adjoint_of_e2_to_en_is_first_coordinate_flip():
    for n in (2, 4, 6):
        x = PinCandidate.from_element(e(n, *range(2, n + 1)))
        expected = np.diag([-1.0] + [1.0] * (n - 1))
        assert np.allclose(adjoint_action(x), expected)


def test_adjoint_of_bivector_is_minus_identity():
    assert np.allclose(adjoint_action(e(2, 1, 2)), -np.eye(2))


def test_rotation_lift_doubles_angle():
    beta = 0.3
    x = math.cos(beta) * one(2) + math.sin(beta) * e(2, 1, 2)
    q = adjoint_action(PinCandidate.from_element(x))
    c, s = math.cos(2 * beta), math.sin(2 * beta)
    assert np.allclose(q, [[c, -s], [s, c]])


def test_non_pin_rejected():
    with pytest.raises(NotPinError):
        PinCandidate.from_element(one(2) + e(2, 1))
    with pytest.raises(NotPinError):
        PinCandidate.from_element(2.0 * one(2))
    with pytest.raises(NotPinError):
        adjoint_action(one(3) + e(3, 1, 2, 3))


@st.composite
def elements(draw, n):
    coeffs = draw(st.lists(st.floats(-3, 3, allow_nan=False), min_size=1 << n, max_size=1 << n))
    mask = draw(st.lists(st.booleans(), min_size=1 << n, max_size=1 << n))
    return BladeElement(n, np.array(coeffs) * np.array(mask))


@st.composite
def triples(draw):
    n = draw(st.integers(1, 6))
    return draw(elements(n)), draw(elements(n)), draw(elements(n))


@settings(max_examples=60, deadline=None)
@given(triples())
def test_associativity(t):
    a, b, c = t
    lhs = (a * b) * c
    rhs = a * (b * c)
    assert np.max(np.abs((lhs - rhs).coefficients)) <= 1e-9


@settings(max_examples=60, deadline=None)
@given(triples())
def test_star_is_anti_automorphism_and_involution(t):
    a, b, _ = t
    assert (star(a * b) - star(b) * star(a)).norm() <= 1e-9
    assert star(star(a)).allclose(a)
    assert grade_involution(grade_involution(a)).allclose(a)


def test_defining_relation_random_unit_vectors():
    rng = np.random.default_rng(1)
    for _ in range(100):
        n = int(rng.integers(1, 9))
        v = rng.standard_normal(n)
        v /= np.linalg.norm(v)
        x = BladeElement.vector(v)
        assert (x * x).allclose(-one(n), 1e-9)


def test_dimension_cap():
    with pytest.raises(CliffordError):
        BladeElement.scalar(11)
