"""Pin lifts of orthogonal matrices and the double cover of a finite group.

Each cover element is a pair (g, s) with g an index into the base group and
s = +-1.  It stands for s * r(g), where r(g) is a fixed reference lift of the
matrix of g.  Multiplication is exact once the sign cocycle
r(g) r(h) = c(g, h) r(gh) is known, and c(g, h) is read off from the sign of
an inner product whose true value is +-1.
"""
from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .clifford import (BladeElement, PinCandidate, adjoint_action, blade_product,
                       inner, star)
from .matgroup import FiniteOrthogonalGroup, check_orthogonal, determinant_sign

COCYCLE_MARGIN = 0.9
LIFT_TOL = 1e-7
UNIT_TOL = 1e-9


class CoverError(RuntimeError):
    pass


class CocycleAmbiguity(CoverError):
    pass


@dataclass
class ReflectionFactorization:
    target: np.ndarray
    unit_vectors: list[np.ndarray]
    negated: bool  # True when the vectors compose to -target

    def compose(self) -> np.ndarray:
        n = self.target.shape[0]
        out = np.eye(n)
        for u in self.unit_vectors:
            out = out @ householder(u)
        return out


def householder(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    return np.eye(len(u)) - 2.0 * np.outer(u, u)


def reflection_decompose(q) -> ReflectionFactorization:
    """Write q (or -q when det q = -1) as a product of Householder reflections.

    A single unit vector u acts by Ad(u) = -R_u, so an odd product of vectors
    has to realise -q for the lift to act as q.
    """
    q = check_orthogonal(q)
    n = q.shape[0]
    if n % 2:
        raise CoverError("reflection_decompose needs even ambient dimension; stabilize first")
    negated = determinant_sign(q) == -1
    a = -q if negated else q.copy()
    vectors = []
    for i in range(n):
        col = a[:, i]
        target = np.zeros(n)
        target[i] = 1.0
        d = col - target
        nd = np.linalg.norm(d)
        if nd <= 1e-12:
            continue
        u = d / nd
        a = householder(u) @ a
        vectors.append(u)
    # R_{u_k} ... R_{u_1} a0 = I, hence a0 = R_{u_1} ... R_{u_k}
    return ReflectionFactorization(q, vectors, negated)


def normalize_sign(x: BladeElement, tol: float = 1e-6) -> BladeElement:
    live = np.flatnonzero(np.abs(x.coefficients) > tol)
    if live.size and x.coefficients[live[0]] < 0:
        return -x
    return x


def pin_lift(q) -> PinCandidate:
    fac = reflection_decompose(q)
    n = fac.target.shape[0]
    x = BladeElement.scalar(n)
    for u in fac.unit_vectors:
        x = blade_product(x, BladeElement.vector(u))
    x = normalize_sign(x)
    lift = PinCandidate.from_element(x, tol=UNIT_TOL)
    ad = adjoint_action(lift, tol=LIFT_TOL)
    if np.max(np.abs(ad - fac.target)) > LIFT_TOL:
        raise CoverError("internal error: Ad(lift) does not reproduce the matrix")
    return lift


def stabilize(q: np.ndarray) -> np.ndarray:
    """block-diag(q, 1)."""
    n = q.shape[0]
    out = np.eye(n + 1)
    out[:n, :n] = q
    return out


@dataclass
class DoubleCoverGroup:
    base: FiniteOrthogonalGroup
    reference_lifts: list[PinCandidate]
    ambient: int
    class_partition: list[list[tuple[int, int]]] = field(default_factory=list)
    _cocycle: dict = field(default_factory=dict, repr=False)
    _tampered: frozenset = field(default=frozenset(), repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    central_minus_one = (0, -1)

    @property
    def order(self) -> int:
        return 2 * len(self.base)

    def elements(self) -> list[tuple[int, int]]:
        return [(g, s) for g in range(len(self.base)) for s in (1, -1)]

    def cocycle(self, g: int, h: int) -> int:
        key = (g, h)
        c = self._cocycle.get(key)
        if c is not None:
            return c
        gh = self.base.mul(g, h)
        prod = blade_product(self.reference_lifts[g].element, self.reference_lifts[h].element)
        ip = inner(prod, self.reference_lifts[gh].element)
        if abs(ip) <= COCYCLE_MARGIN:
            raise CocycleAmbiguity(
                f"cocycle sign undecidable for pair ({g}, {h}): inner product {ip:.3g}")
        c = 1 if ip > 0 else -1
        if key in self._tampered:
            c = -c
        with self._lock:
            self._cocycle[key] = c
        return c

    def mul(self, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        (g, s), (h, t) = a, b
        return self.base.mul(g, h), s * t * self.cocycle(g, h)

    def inv(self, a: tuple[int, int]) -> tuple[int, int]:
        g, s = a
        gi = self.base.inv(g)
        return gi, s * self.cocycle(g, gi)

    def conj(self, x: tuple[int, int], a: tuple[int, int]) -> tuple[int, int]:
        return self.mul(self.mul(x, a), self.inv(x))

    def project(self, a: tuple[int, int]) -> int:
        return a[0]

    def lift_element(self, a: tuple[int, int]) -> BladeElement:
        g, s = a
        return s * self.reference_lifts[g].element

    @property
    def num_classes(self) -> int:
        return len(self.class_partition)


def cover_classes(cover: DoubleCoverGroup, base_gens: list[int],
                  members: list[int] | None = None) -> list[list[tuple[int, int]]]:
    """Conjugacy classes of q^-1(H), H the subgroup of ``members`` generated by ``base_gens``.

    The conjugators are the lifts (g, +1) of the generators; (e, -1) is
    central and adds nothing to an orbit.
    """
    if members is None:
        members = list(range(len(cover.base)))
    conjugators = [(g, 1) for g in base_gens]
    seen: set[tuple[int, int]] = set()
    classes = []
    for g in members:
        for s in (1, -1):
            start = (g, s)
            if start in seen:
                continue
            seen.add(start)
            orbit = [start]
            queue = deque([start])
            while queue:
                a = queue.popleft()
                for x in conjugators:
                    b = cover.conj(x, a)
                    if b not in seen:
                        seen.add(b)
                        orbit.append(b)
                        queue.append(b)
            classes.append(sorted(orbit))
    return classes


def build_double_cover(G: FiniteOrthogonalGroup, tamper=()) -> DoubleCoverGroup:
    """Build G_rho for the matrix group G.

    ``tamper`` is a test hook: cocycle entries listed there have their sign
    flipped, which must be caught by the decomposition check.
    """
    lifts = []
    ambient = G.dimension
    for m in G.elements:
        q = stabilize(m) if G.dimension % 2 else m
        lifts.append(pin_lift(q))
    if G.dimension % 2:
        ambient += 1
    cover = DoubleCoverGroup(G, lifts, ambient, _tampered=frozenset(tamper))
    cover.class_partition = cover_classes(cover, G.generators)
    return cover


def kernel_cover_classes(cover: DoubleCoverGroup) -> tuple[list[list[tuple[int, int]]], FiniteOrthogonalGroup]:
    """Classes of K_rho (pairs over det +1 elements) and the kernel subgroup K."""
    from .matgroup import kernel_subgroup

    G = cover.base
    K = kernel_subgroup(G, G.det_character)
    members = K.parent_index
    gens = [members[i] for i in K.generators]
    return cover_classes(cover, gens, members), K


def class_counts(cover: DoubleCoverGroup) -> tuple[int, int, int, int]:
    """(C_Grho, C_G, C_Krho, C_K)."""
    G = cover.base
    if G.is_orientation_preserving:
        return (cover.num_classes, G.num_classes, cover.num_classes, G.num_classes)
    k_classes, K = kernel_cover_classes(cover)
    return (cover.num_classes, G.num_classes, len(k_classes), K.num_classes)


def split_classes_by_partition(cover: DoubleCoverGroup,
                               classes: list[list[tuple[int, int]]] | None = None) -> set[int]:
    """Base elements g whose (g,+1) and (g,-1) fall in different cover classes."""
    classes = cover.class_partition if classes is None else classes
    owner = {}
    for ci, cls in enumerate(classes):
        for a in cls:
            owner[a] = ci
    return {g for (g, s) in owner if s == 1 and owner[(g, 1)] != owner[(g, -1)]}


def splits_by_centralizer(cover: DoubleCoverGroup, g: int, group: FiniteOrthogonalGroup | None = None) -> bool:
    """True iff a lift t of g is not conjugate to -t.

    Decided directly in the Clifford algebra: t ~ -t exactly when some h in
    the centralizer of g has r(h) t r(h)* = -t.  This bypasses the cocycle.
    """
    from .matgroup import centralizer

    G = cover.base
    t = cover.reference_lifts[g].element
    if group is None:
        cent = centralizer(G, g)
    else:
        cent = [group.parent_index[i] for i in centralizer(group, group.index(G.elements[g]))]
    for h in cent:
        r = cover.reference_lifts[h].element
        conj = blade_product(blade_product(r, t), star(r))
        ip = inner(conj, t)
        if abs(ip) <= COCYCLE_MARGIN:
            raise CocycleAmbiguity(f"conjugation sign undecidable for ({h}, {g})")
        if ip < 0:
            return False
    return True
