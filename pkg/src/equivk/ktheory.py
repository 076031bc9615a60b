"""Ranks of K^0_G(V) and K^1_G(V) for finite G acting orthogonally on V."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from .cover import build_double_cover, class_counts
from .matgroup import (FiniteOrthogonalGroup, centralizer, fixed_subspace,
                       restricted_determinant)

METHODS = ("class_count", "pinc_formula", "karoubi", "partition_formula")


class InconsistentCounts(ArithmeticError):
    pass


@dataclass(frozen=True)
class KRankReport:
    dim_V: int
    orientation_preserving: bool
    rank_k0: int
    rank_k1: int
    method: str
    group_order: Optional[int] = None
    counts: Optional[tuple[int, int, int, int]] = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.rank_k0 < 0 or self.rank_k1 < 0:
            raise ValueError("ranks must be nonnegative")

    @property
    def ranks(self) -> tuple[int, int]:
        return (self.rank_k0, self.rank_k1)

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["counts"] is not None:
            d["counts"] = list(d["counts"])
        return d

    @classmethod
    def from_dict(cls, d: dict) -> KRankReport:
        d = dict(d)
        if d.get("counts") is not None:
            d["counts"] = tuple(d["counts"])
        return cls(**d)


def place(even_slot: int, odd_slot: int, dim_V: int) -> tuple[int, int]:
    """Map (rank at *+dim even, rank at *+dim odd) to (K^0, K^1)."""
    if dim_V % 2 == 0:
        return even_slot, odd_slot
    return odd_slot, even_slot


def _third(numerator: int, what: str, err: str) -> int:
    if numerator < 0 or numerator % 3:
        raise InconsistentCounts(f"{err}: {what} = {numerator} is not a nonnegative multiple of 3")
    return numerator // 3


def nonoriented_numerators(counts) -> tuple[int, int]:
    """The two numerators (even slot, odd slot) of the non-oriented rank formula."""
    cgr, cg, ckr, ck = counts
    neg_g, neg_k = cgr - cg, ckr - ck
    return 2 * neg_k - neg_g, 2 * neg_g - neg_k


def ranks_from_counts(counts, oriented: bool, dim_V: int,
                      group_order: int | None = None) -> KRankReport:
    cgr, cg, ckr, ck = counts
    if min(counts) < 0:
        raise InconsistentCounts("class counts must be nonnegative")
    if oriented:
        if (ckr, ck) != (cgr, cg):
            raise InconsistentCounts("oriented action needs K_rho = G_rho")
        neg = cgr - cg
        if neg < 0:
            raise InconsistentCounts("inconsistent class counts: C_Grho < C_G")
        k0, k1 = place(neg, 0, dim_V)
    else:
        num_even, num_odd = nonoriented_numerators(counts)
        msg = "inconsistent class counts"
        k0, k1 = place(_third(num_even, "even-slot numerator", msg),
                       _third(num_odd, "odd-slot numerator", msg), dim_V)
    return KRankReport(dim_V, oriented, k0, k1, "class_count", group_order, tuple(counts))


def ranks_pinc(C_G: int, C_K: int, oriented: bool, dim_V: int,
               group_order: int | None = None) -> KRankReport:
    """Ranks when the action factors through Pin^c; the caller vouches for that."""
    if oriented:
        k0, k1 = place(C_G, 0, dim_V)
    else:
        msg = "Pin^c condition assertion likely false for this group"
        k0, k1 = place(_third(2 * C_K - C_G, "2*C_K - C_G", msg),
                       _third(2 * C_G - C_K, "2*C_G - C_K", msg), dim_V)
    return KRankReport(dim_V, oriented, k0, k1, "pinc_formula", group_order)


def pinc_for_group(G: FiniteOrthogonalGroup, dim_V: int | None = None) -> KRankReport:
    from .matgroup import kernel_subgroup

    dim_V = G.dimension if dim_V is None else dim_V
    if G.is_orientation_preserving:
        return ranks_pinc(G.num_classes, G.num_classes, True, dim_V, len(G))
    K = kernel_subgroup(G, G.det_character)
    return ranks_pinc(G.num_classes, K.num_classes, False, dim_V, len(G))


def is_cyclic(G: FiniteOrthogonalGroup) -> bool:
    """True if some element has order |G|."""
    n = len(G)
    for g in range(n):
        k, x = 1, g
        while x != 0:
            x = G.mul(x, g)
            k += 1
        if k == n:
            return True
    return False


def karoubi_class(G: FiniteOrthogonalGroup, g: int) -> tuple[bool, int]:
    """(oriented?, dim V^g) for the class of g."""
    basis = fixed_subspace(G.elements[g])
    oriented = all(restricted_determinant(G.elements[h], basis) == 1
                   for h in centralizer(G, g))
    return oriented, basis.shape[1]


def karoubi_ranks(G: FiniteOrthogonalGroup) -> KRankReport:
    k0 = k1 = 0
    for g in G.class_reps:
        oriented, dim = karoubi_class(G, g)
        if oriented:
            if dim % 2 == 0:
                k0 += 1
            else:
                k1 += 1
    return KRankReport(G.dimension, G.is_orientation_preserving, k0, k1, "karoubi", len(G))


def compute(G: FiniteOrthogonalGroup, dim_V: int | None = None) -> KRankReport:
    dim_V = G.dimension if dim_V is None else dim_V
    cover = build_double_cover(G)
    counts = class_counts(cover)
    return ranks_from_counts(counts, G.is_orientation_preserving, dim_V, len(G))
