"""Symbolic K-groups for actions of the compact groups O(n).

O(n) is infinite, so nothing is enumerated here.  The answer only depends on
whether the action preserves orientation, the parity of n, whether SO(n) acts
spinorially, and the parity of dim V.  All three tests are read off the images
of g = diag(-1, 1, ..., 1) and h = diag(-1, -1, 1, ..., 1).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ktheory import place
from .matgroup import check_orthogonal, determinant_sign

KINDS = ("standard", "symmetric_matrices", "custom")


@dataclass(frozen=True)
class SymbolicRank:
    kind: str  # "zero", "finite_free" or "countably_infinite"
    rank: int = 0

    def __post_init__(self):
        if self.kind == "finite_free" and self.rank < 1:
            raise ValueError("finite_free rank must be at least 1")
        if self.kind not in ("zero", "finite_free", "countably_infinite"):
            raise ValueError(f"unknown kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "countably_infinite":
            return "(+)_N Z"
        return "Z" if self.rank == 1 else f"Z^{self.rank}"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "rank": self.rank if self.kind == "finite_free" else None}


ZERO = SymbolicRank("zero")
INFINITE = SymbolicRank("countably_infinite")


def finite(rank: int) -> SymbolicRank:
    return SymbolicRank("finite_free", rank) if rank else ZERO


@dataclass(frozen=True, eq=False)
class OnActionSpec:
    n: int
    kind: str = "standard"
    g_image: Optional[np.ndarray] = None
    h_image: Optional[np.ndarray] = None
    dim_V: Optional[int] = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.kind not in KINDS:
            raise ValueError(f"unknown action kind {self.kind!r}")
        if self.kind == "custom":
            if self.g_image is None or self.h_image is None:
                raise ValueError("custom action needs images of g and h")
            g = check_orthogonal(self.g_image)
            h = check_orthogonal(self.h_image)
            if g.shape != h.shape:
                raise ValueError("images of g and h differ in size")
            if np.max(np.abs(h @ h - np.eye(len(h)))) > 1e-8:
                raise ValueError("image of h is not an involution")
            object.__setattr__(self, "g_image", g)
            object.__setattr__(self, "h_image", h)
            object.__setattr__(self, "dim_V", len(g))
        else:
            object.__setattr__(self, "dim_V", self.n if self.kind == "standard"
                               else self.n * (self.n + 1) // 2)


def symmetric_basis(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


def conjugation_matrix(a: np.ndarray) -> np.ndarray:
    """Matrix of S -> a S a^-1 on symmetric matrices in the basis E_ij (i <= j)."""
    n = a.shape[0]
    basis = symmetric_basis(n)
    out = np.zeros((len(basis), len(basis)))
    for col, (k, l) in enumerate(basis):
        e = np.zeros((n, n))
        e[k, l] = e[l, k] = 1.0
        img = a @ e @ np.linalg.inv(a)
        for row, (i, j) in enumerate(basis):
            out[row, col] = img[i, j]
    return out


def _g(n: int) -> np.ndarray:
    return np.diag([-1.0] + [1.0] * (n - 1))


def _h(n: int) -> np.ndarray:
    return np.diag([-1.0, -1.0] + [1.0] * (n - 2))


def action_images(spec: OnActionSpec) -> tuple[np.ndarray, np.ndarray]:
    if spec.kind == "custom":
        return spec.g_image, spec.h_image
    if spec.kind == "standard":
        return _g(spec.n), _h(spec.n)
    return conjugation_matrix(_g(spec.n)), conjugation_matrix(_h(spec.n))


def orientation_test(spec: OnActionSpec) -> bool:
    g, _ = action_images(spec)
    return determinant_sign(g) == 1


def minus_eigenspace_dim(spec: OnActionSpec) -> int:
    _, h = action_images(spec)
    if np.max(np.abs(h @ h - np.eye(len(h)))) > 1e-8:
        raise ValueError("image of h is not an involution")
    # for an involution, trace = dim V+ - dim V-
    return int(round((len(h) - np.trace(h)) / 2))


def spinor_test(spec: OnActionSpec) -> bool:
    return minus_eigenspace_dim(spec) % 4 == 0


def symbolic_ranks(spec: OnActionSpec) -> tuple[SymbolicRank, SymbolicRank]:
    """(K^0, K^1) of the O(n)-action as symbols."""
    if orientation_test(spec):
        return place(INFINITE, ZERO, spec.dim_V)
    if spec.n % 2:
        # conjugation acts trivially on the negative reps of the kernel
        return place(ZERO, INFINITE, spec.dim_V)
    if spinor_test(spec):
        fixed = finite(1) if spec.n == 2 else INFINITE
        swapped = INFINITE
    else:
        fixed, swapped = ZERO, INFINITE
    # fixed orbits land at *+dim V odd, swapped pairs at *+dim V even
    return place(swapped, fixed, spec.dim_V)


def gl_table(n_max: int) -> list[tuple[int, SymbolicRank, SymbolicRank]]:
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    return [(n, *symbolic_ranks(OnActionSpec(n, "symmetric_matrices")))
            for n in range(2, n_max + 1)]
