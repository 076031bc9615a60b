"""Blade arithmetic in the real Clifford algebra Cl(n) with e_i * e_i = -1.

Elements are dense coefficient vectors over the 2**n basis blades. A blade is
addressed by a bitmask: bit i set means e_{i+1} is a factor, and factors are
always written in increasing index order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

DEFAULT_MAX_DIMENSION = 10
DEFAULT_TOL = 1e-9

_max_dimension = DEFAULT_MAX_DIMENSION


class CliffordError(ValueError):
    pass


class NotPinError(CliffordError):
    """Raised when an element fails the Pin membership tests."""


def set_max_dimension(n: int) -> None:
    global _max_dimension
    if n < 1:
        raise ValueError("dimension cap must be positive")
    _max_dimension = n


def max_dimension() -> int:
    return _max_dimension


def _popcount(masks: np.ndarray) -> np.ndarray:
    out = np.zeros_like(masks)
    m = masks.copy()
    while np.any(m):
        out += m & 1
        m >>= 1
    return out


@lru_cache(maxsize=None)
def blade_tables(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (xor, sign, grade) tables for Cl(n).

    ``xor[i, j]`` is the mask of e_i * e_j and ``sign[i, j]`` its sign.  The
    sign counts the transpositions needed to merge the two increasing index
    lists, then contributes -1 for each index present in both.
    """
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    a = masks[:, None]
    b = masks[None, :]
    swaps = np.zeros((size, size), dtype=np.int64)
    for k in range(n):
        # e_k in a must hop over every factor of b with a smaller index
        has_k = (a >> k) & 1
        below = b & ((1 << k) - 1)
        swaps += has_k * _popcount(below)
    squares = _popcount(a & b)
    sign = np.where((swaps + squares) % 2 == 0, 1.0, -1.0)
    xor = a ^ b
    grade = _popcount(masks)
    for arr in (xor, sign, grade):
        arr.setflags(write=False)
    return xor, sign, grade


@dataclass(frozen=True, eq=False)
class BladeElement:
    dimension: int
    coefficients: np.ndarray

    def __post_init__(self):
        n = self.dimension
        if not 1 <= n <= _max_dimension:
            raise CliffordError(f"dimension {n} outside 1..{_max_dimension}")
        coeffs = np.asarray(self.coefficients, dtype=float)
        if coeffs.shape != (1 << n,):
            raise CliffordError(f"expected {1 << n} coefficients, got {coeffs.shape}")
        if not np.all(np.isfinite(coeffs)):
            raise CliffordError("coefficients must be finite")
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def scalar(cls, n: int, value: float = 1.0) -> BladeElement:
        c = np.zeros(1 << n)
        c[0] = value
        return cls(n, c)

    @classmethod
    def blade(cls, n: int, indices: Iterable[int], coeff: float = 1.0) -> BladeElement:
        """The blade e_{i1} e_{i2} ... for 1-based ``indices`` given in any order."""
        idx = list(indices)
        elem = cls.scalar(n, coeff)
        for i in idx:
            elem = blade_product(elem, cls.vector(np.eye(n)[i - 1]))
        return elem

    @classmethod
    def vector(cls, v) -> BladeElement:
        v = np.asarray(v, dtype=float)
        n = v.shape[0]
        c = np.zeros(1 << n)
        c[1 << np.arange(n)] = v
        return cls(n, c)

    def grade_part(self, k: int) -> BladeElement:
        _, _, grade = blade_tables(self.dimension)
        return BladeElement(self.dimension, np.where(grade == k, self.coefficients, 0.0))

    def vector_part(self) -> np.ndarray:
        return self.coefficients[1 << np.arange(self.dimension)].copy()

    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))

    def allclose(self, other: BladeElement, tol: float = DEFAULT_TOL) -> bool:
        _check_same(self, other)
        return bool(np.max(np.abs(self.coefficients - other.coefficients)) <= tol)

    def __add__(self, other: BladeElement) -> BladeElement:
        _check_same(self, other)
        return BladeElement(self.dimension, self.coefficients + other.coefficients)

    def __sub__(self, other: BladeElement) -> BladeElement:
        _check_same(self, other)
        return BladeElement(self.dimension, self.coefficients - other.coefficients)

    def __neg__(self) -> BladeElement:
        return BladeElement(self.dimension, -self.coefficients)

    def __mul__(self, other):
        if isinstance(other, BladeElement):
            return blade_product(self, other)
        return BladeElement(self.dimension, self.coefficients * float(other))

    def __rmul__(self, other):
        return BladeElement(self.dimension, self.coefficients * float(other))

    def __repr__(self) -> str:
        terms = []
        for mask in np.flatnonzero(np.abs(self.coefficients) > 1e-12):
            name = "".join(f"e{i + 1}" for i in range(self.dimension) if mask >> i & 1) or "1"
            terms.append(f"{self.coefficients[mask]:+.6g}*{name}")
        return f"BladeElement(n={self.dimension}: {' '.join(terms) or '0'})"


def _check_same(a: BladeElement, b: BladeElement) -> None:
    if a.dimension != b.dimension:
        raise CliffordError(f"dimension mismatch: {a.dimension} vs {b.dimension}")


def blade_product(a: BladeElement, b: BladeElement) -> BladeElement:
    _check_same(a, b)
    xor, sign, _ = blade_tables(a.dimension)
    ia = np.flatnonzero(a.coefficients)
    ib = np.flatnonzero(b.coefficients)
    out = np.zeros(1 << a.dimension)
    if ia.size and ib.size:
        terms = np.outer(a.coefficients[ia], b.coefficients[ib]) * sign[np.ix_(ia, ib)]
        out = np.bincount(xor[np.ix_(ia, ib)].ravel(), weights=terms.ravel(),
                          minlength=1 << a.dimension)
    return BladeElement(a.dimension, out)


@lru_cache(maxsize=None)
def _star_signs(n: int) -> np.ndarray:
    _, _, k = blade_tables(n)
    s = np.where((k + k * (k - 1) // 2) % 2 == 0, 1.0, -1.0)
    s.setflags(write=False)
    return s


def star(a: BladeElement) -> BladeElement:
    """(v1...vk)* = (-1)^k vk...v1."""
    return BladeElement(a.dimension, a.coefficients * _star_signs(a.dimension))


def grade_involution(a: BladeElement) -> BladeElement:
    _, _, k = blade_tables(a.dimension)
    return BladeElement(a.dimension, np.where(k % 2 == 0, a.coefficients, -a.coefficients))


def volume_element(n: int) -> BladeElement:
    if n % 2:
        raise CliffordError("volume element is only used in even dimension")
    c = np.zeros(1 << n)
    c[-1] = 1.0
    return BladeElement(n, c)


def inner(a: BladeElement, b: BladeElement) -> float:
    """Euclidean inner product of coefficient vectors (scalar part of a * star(b))."""
    _check_same(a, b)
    return float(a.coefficients @ b.coefficients)


@dataclass(frozen=True)
class PinCandidate:
    element: BladeElement
    parity: str  # "even" or "odd"

    @classmethod
    def from_element(cls, x: BladeElement, tol: float = DEFAULT_TOL) -> PinCandidate:
        _, _, grade = blade_tables(x.dimension)
        live = np.abs(x.coefficients) > tol
        parities = set((grade[live] % 2).tolist())
        if len(parities) != 1:
            raise NotPinError("element is not grade-homogeneous")
        unit = blade_product(x, star(x))
        if not unit.allclose(BladeElement.scalar(x.dimension), tol):
            raise NotPinError("x * star(x) != 1")
        return cls(x, "even" if parities == {0} else "odd")

    @property
    def dimension(self) -> int:
        return self.element.dimension


def adjoint_action(x: PinCandidate | BladeElement, tol: float = 1e-7) -> np.ndarray:
    """Matrix of v -> x v x* on R^n; column i is the image of e_{i+1}."""
    elem = x.element if isinstance(x, PinCandidate) else x
    n = elem.dimension
    xs = star(elem)
    cols = []
    for i in range(n):
        img = blade_product(blade_product(elem, BladeElement.vector(np.eye(n)[i])), xs)
        col = img.vector_part()
        residue = img.coefficients.copy()
        residue[1 << np.arange(n)] = 0.0
        if np.max(np.abs(residue)) > tol:
            raise NotPinError("not a Pin element: conjugate of a vector leaves V")
        cols.append(col)
    q = np.column_stack(cols)
    if np.max(np.abs(q.T @ q - np.eye(n))) > tol:
        raise NotPinError("not a Pin element: adjoint action is not orthogonal")
    return q
