"""Finite groups of orthogonal matrices.

Elements are stored once each, identity first, and looked up through a
canonical rounded key so that float drift in long products does not create
duplicates.
"""
from __future__ import annotations

import threading
from collections import deque
from typing import Sequence

import numpy as np

ORTHO_TOL = 1e-8
MATCH_TOL = 1e-7
PIVOT_TOL = 1e-7
DEFAULT_CAP = 1_000_000


class GroupError(ValueError):
    pass


class GroupTooLarge(GroupError):
    pass


def check_orthogonal(q, tol: float = ORTHO_TOL) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise GroupError(f"expected a square matrix, got shape {q.shape}")
    if not np.all(np.isfinite(q)):
        raise GroupError("matrix has non-finite entries")
    n = q.shape[0]
    if np.max(np.abs(q.T @ q - np.eye(n)), initial=0.0) > tol:
        raise GroupError("matrix is not orthogonal within tolerance")
    return q


def canonical_key(q: np.ndarray) -> bytes:
    half = np.round(2.0 * q) / 2.0
    snapped = np.where(np.abs(q - half) <= 1e-9, half, q)
    r = np.round(snapped, 6) + 0.0  # +0.0 folds -0.0 into 0.0
    return r.tobytes()


def determinant_sign(q: np.ndarray) -> int:
    d = float(np.linalg.det(q)) if q.shape[0] else 1.0
    if abs(abs(d) - 1.0) > ORTHO_TOL * max(1, q.shape[0]) * 10:
        raise GroupError(f"determinant {d} is not +-1")
    return 1 if d > 0 else -1


class FiniteOrthogonalGroup:
    """A finite group of n x n orthogonal matrices.

    ``elements[0]`` is the identity.  ``generators`` are element indices.
    Products are resolved by matrix multiplication and key lookup, and are
    memoized per pair.
    """

    def __init__(self, matrices: Sequence[np.ndarray], generators: Sequence[int],
                 tol: float = MATCH_TOL):
        self.tol = tol
        self.elements = np.array(matrices, dtype=float)
        if self.elements.ndim != 3:
            raise GroupError("need a non-empty list of square matrices")
        self.dimension = self.elements.shape[1]
        self.generators = list(generators)
        self._index = {}
        for i, m in enumerate(self.elements):
            self._index.setdefault(canonical_key(m), i)
        self._products: dict[tuple[int, int], int] = {}
        self._lock = threading.Lock()
        self._classes: list[list[int]] | None = None
        self._inverses: list[int] | None = None
        self.det_character = [determinant_sign(m) for m in self.elements]
        self.parent_index: list[int] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteOrthogonalGroup(dim={self.dimension}, order={len(self)})"

    def find(self, q: np.ndarray) -> int | None:
        i = self._index.get(canonical_key(q))
        if i is not None:
            return i
        diff = np.max(np.abs(self.elements - q), axis=(1, 2))
        j = int(np.argmin(diff))
        if diff[j] <= self.tol:
            return j
        return None

    def index(self, q: np.ndarray) -> int:
        i = self.find(q)
        if i is None:
            raise GroupError("matrix is not an element of this group")
        return i

    def mul(self, a: int, b: int) -> int:
        key = (a, b)
        r = self._products.get(key)
        if r is None:
            r = self.index(self.elements[a] @ self.elements[b])
            with self._lock:
                self._products[key] = r
        return r

    def inv(self, a: int) -> int:
        if self._inverses is None:
            self._inverses = [self.index(m.T) for m in self.elements]
        return self._inverses[a]

    def conj(self, s: int, g: int) -> int:
        """s g s^-1."""
        return self.mul(self.mul(s, g), self.inv(s))

    @property
    def is_orientation_preserving(self) -> bool:
        return all(d == 1 for d in self.det_character)

    def class_partition(self) -> list[list[int]]:
        if self._classes is None:
            self._classes = conjugacy_classes(self)
        return self._classes

    @property
    def class_reps(self) -> list[int]:
        return [c[0] for c in self.class_partition()]

    @property
    def num_classes(self) -> int:
        return len(self.class_partition())

    def class_of(self) -> list[int]:
        owner = [0] * len(self)
        for ci, cls in enumerate(self.class_partition()):
            for g in cls:
                owner[g] = ci
        return owner


def generate_group(generators: Sequence, cap: int = DEFAULT_CAP,
                   tol: float = MATCH_TOL) -> FiniteOrthogonalGroup:
    gens = [check_orthogonal(g) for g in generators]
    if not gens:
        raise GroupError("at least one generator (possibly the identity) is required")
    n = gens[0].shape[0]
    if any(g.shape != (n, n) for g in gens):
        raise GroupError("generators have inconsistent dimensions")

    elements = [np.eye(n)]
    index = {canonical_key(elements[0]): 0}
    stack = np.eye(n)[None]

    def lookup(q):
        i = index.get(canonical_key(q))
        if i is not None:
            return i
        diff = np.max(np.abs(stack[: len(elements)] - q), axis=(1, 2))
        j = int(np.argmin(diff))
        return j if diff[j] <= tol else None

    gen_idx = []
    queue = deque([0])
    # generators are added through the same BFS so their indices are stable
    for g in gens:
        i = lookup(g)
        if i is None:
            i = len(elements)
            elements.append(g)
            index[canonical_key(g)] = i
            stack = np.concatenate([stack, g[None]])
            queue.append(i)
        gen_idx.append(i)

    while queue:
        a = queue.popleft()
        for g in gens:
            q = elements[a] @ g
            if lookup(q) is None:
                if len(elements) >= cap:
                    raise GroupTooLarge(
                        f"group too large or not finite at this tolerance (cap {cap})")
                index[canonical_key(q)] = len(elements)
                elements.append(q)
                if len(elements) > stack.shape[0]:
                    grow = np.empty((2 * stack.shape[0],) + stack.shape[1:])
                    grow[: stack.shape[0]] = stack
                    stack = grow
                stack[len(elements) - 1] = q
                queue.append(len(elements) - 1)
    return FiniteOrthogonalGroup(elements, gen_idx, tol=tol)


def conjugacy_classes(G: FiniteOrthogonalGroup) -> list[list[int]]:
    """Orbits of conjugation by the generators, sorted by smallest member."""
    seen = [False] * len(G)
    classes = []
    gens = G.generators or [0]
    for start in range(len(G)):
        if seen[start]:
            continue
        seen[start] = True
        orbit = [start]
        queue = deque([start])
        while queue:
            g = queue.popleft()
            for s in gens:
                h = G.conj(s, g)
                if not seen[h]:
                    seen[h] = True
                    orbit.append(h)
                    queue.append(h)
        classes.append(sorted(orbit))
    return classes


def generating_subset(G: FiniteOrthogonalGroup, members: Sequence[int]) -> list[int]:
    """Greedy generating set (parent indices) for the subgroup ``members``."""
    target = set(members)
    span = {0}
    gens: list[int] = []
    for m in sorted(target):
        if m in span:
            continue
        gens.append(m)
        frontier = deque(span)
        while frontier:
            a = frontier.popleft()
            for s in gens:
                b = G.mul(a, s)
                if b not in span:
                    span.add(b)
                    frontier.append(b)
    if span != target:
        raise GroupError("member list is not closed under multiplication")
    return gens


def subgroup(G: FiniteOrthogonalGroup, members: Sequence[int]) -> FiniteOrthogonalGroup:
    members = sorted(set(members))
    if not members or members[0] != 0:
        raise GroupError("subgroup must contain the identity")
    gens = generating_subset(G, members)
    pos = {m: i for i, m in enumerate(members)}
    H = FiniteOrthogonalGroup(G.elements[members], [pos[g] for g in gens], tol=G.tol)
    H.parent_index = list(members)
    return H


def kernel_subgroup(G: FiniteOrthogonalGroup, character: Sequence[int]) -> FiniteOrthogonalGroup:
    character = list(character)
    if len(character) != len(G) or any(c not in (1, -1) for c in character):
        raise GroupError("character must assign +1 or -1 to every element")
    for a in range(len(G)):
        for s in G.generators:
            if character[G.mul(a, s)] != character[a] * character[s]:
                raise GroupError("character is not multiplicative")
    return subgroup(G, [i for i, c in enumerate(character) if c == 1])


def centralizer(G: FiniteOrthogonalGroup, g: int) -> list[int]:
    m = G.elements[g]
    left = np.einsum("kij,jl->kil", G.elements, m)
    right = np.einsum("ij,kjl->kil", m, G.elements)
    diff = np.max(np.abs(left - right), axis=(1, 2))
    return [int(i) for i in np.flatnonzero(diff <= G.tol)]


def fixed_subspace(q: np.ndarray, pivot_tol: float = PIVOT_TOL) -> np.ndarray:
    """Orthonormal basis (as columns) of ker(q - I); shape (n, k), k may be 0."""
    q = np.asarray(q, dtype=float)
    n = q.shape[0]
    a = q - np.eye(n)
    pivots = []
    row = 0
    for col in range(n):
        if row == n:
            break
        p = row + int(np.argmax(np.abs(a[row:, col])))
        if abs(a[p, col]) <= pivot_tol:
            continue
        a[[row, p]] = a[[p, row]]
        a[row] /= a[row, col]
        others = np.arange(n) != row
        a[others] -= np.outer(a[others, col], a[row])
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(n)
        v[f] = 1.0
        for r, pc in enumerate(pivots):
            v[pc] = -a[r, f]
        basis.append(v)
    return gram_schmidt(basis, n)


def gram_schmidt(vectors, n: int) -> np.ndarray:
    out: list[np.ndarray] = []
    for v in vectors:
        w = np.array(v, dtype=float)
        for _ in range(2):  # second pass for numerical orthogonality
            for u in out:
                w = w - (u @ w) * u
        nrm = np.linalg.norm(w)
        if nrm > PIVOT_TOL:
            out.append(w / nrm)
    return np.column_stack(out) if out else np.zeros((n, 0))


def restricted_determinant(q: np.ndarray, basis: np.ndarray, tol: float = MATCH_TOL) -> int:
    """Sign of det(q restricted to span(basis)); +1 for the zero subspace."""
    if basis.shape[1] == 0:
        return 1
    m = basis.T @ q @ basis
    if np.max(np.abs(q @ basis - basis @ m)) > tol:
        raise GroupError("subspace is not invariant under the matrix")
    d = float(np.linalg.det(m))
    if abs(abs(d) - 1.0) > 1e-6:
        raise GroupError(f"restricted determinant {d} is not +-1")
    return 1 if d > 0 else -1
