"""Cross-verification suite: invariants of every module over a group corpus.

Each check returns a ``CheckResult``; a failing check carries a small
counterexample payload.  ``run_suite`` executes them in a fixed order.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from . import zoo
from .clifford import (BladeElement, adjoint_action, blade_product, star,
                       volume_element)
from .cover import (DoubleCoverGroup, build_double_cover, class_counts,
                    split_classes_by_partition, splits_by_centralizer, stabilize)
from .ktheory import (is_cyclic, karoubi_ranks, nonoriented_numerators,
                      pinc_for_group, place, ranks_from_counts)
from .matgroup import FiniteOrthogonalGroup, fixed_subspace, kernel_subgroup
from .onfamily import (INFINITE, ZERO, OnActionSpec, finite, gl_table,
                       minus_eigenspace_dim, orientation_test, spinor_test,
                       symbolic_ranks)
from .partitions import (alt_ranks, decomposing_class_counts, partition_counts,
                         partition_counts_bruteforce, sym_ranks)

SUITES = ("small", "full")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "seconds": round(self.seconds, 3)}


@dataclass
class CorpusEntry:
    label: str
    group: FiniteOrthogonalGroup
    family: str
    param: int
    tamper: bool = False

    @cached_property
    def cover(self) -> DoubleCoverGroup:
        tamper = ()
        if self.tamper:
            s = self.group.generators[0]
            tamper = [(s, self.group.inv(s))]
        return build_double_cover(self.group, tamper=tamper)

    @cached_property
    def counts(self) -> tuple[int, int, int, int]:
        return class_counts(self.cover)

    @cached_property
    def pipeline(self):
        return ranks_from_counts(self.counts, self.group.is_orientation_preserving,
                                 self.group.dimension, len(self.group))

    @cached_property
    def karoubi(self):
        return karoubi_ranks(self.group)


class Corpus:
    def __init__(self, suite: str = "small", tamper: bool = False):
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}")
        self.suite = suite
        self.sym_max = 7 if suite == "full" else 5
        self.alt_max = 7 if suite == "full" else 5
        self.partition_max = 60
        entries = []
        for d in range(1, 5):
            entries.append(CorpusEntry(f"trivial(R^{d})", zoo.trivial(d), "trivial", d))
        for m in range(2, 13):
            entries.append(CorpusEntry(f"Z{m} rotation", zoo.cyclic(m, "rotation"), "cyclic_rot", m))
            if m % 2 == 0:
                entries.append(CorpusEntry(f"Z{m} reflection", zoo.cyclic(m, "reflection"),
                                           "cyclic_refl", m))
        for m in range(2, 9):
            entries.append(CorpusEntry(f"D{m}", zoo.dihedral(m), "dihedral", m))
        for n in range(2, self.sym_max + 1):
            entries.append(CorpusEntry(f"S{n}", zoo.sym(n), "sym", n))
        for n in range(3, self.alt_max + 1):
            entries.append(CorpusEntry(f"A{n}", zoo.alt(n), "alt", n))
        for n in range(1, 4):
            entries.append(CorpusEntry(f"B{n}", zoo.hyperoctahedral(n), "hyperoctahedral", n))
        if tamper:
            for e in entries:
                e.tamper = True
        self.entries = entries

    def select(self, *families, max_order: int | None = None, max_param: int | None = None):
        out = [e for e in self.entries if not families or e.family in families]
        if max_order is not None:
            out = [e for e in out if len(e.group) <= max_order]
        if max_param is not None:
            out = [e for e in out if e.param <= max_param]
        return out

    @property
    def karoubi_corpus(self):
        # sym/alt beyond 6 only feed the triple-agreement check
        return [e for e in self.entries if not (e.family in ("sym", "alt") and e.param > 6)]


def _rng():
    return np.random.default_rng(20240601)


def _sparse_random(rng, n: int, density: float = 0.3) -> BladeElement:
    c = rng.standard_normal(1 << n)
    c[rng.random(1 << n) > density] = 0.0
    return BladeElement(n, c)


def check_clifford_associativity(corpus: Corpus) -> dict:
    rng = _rng()
    worst = 0.0
    for n in range(1, 7):
        for _ in range(20):
            a, b, c = (_sparse_random(rng, n) for _ in range(3))
            lhs = blade_product(blade_product(a, b), c)
            rhs = blade_product(a, blade_product(b, c))
            worst = max(worst, float(np.max(np.abs((lhs - rhs).coefficients))))
    return {"passed": worst <= 1e-9, "max_error": worst}


def check_defining_relation(corpus: Corpus) -> dict:
    rng = _rng()
    worst = 0.0
    for k in range(100):
        n = 1 + k % 8
        v = rng.standard_normal(n)
        v /= np.linalg.norm(v)
        x = BladeElement.vector(v)
        sq = blade_product(x, x)
        worst = max(worst, float(np.max(np.abs((sq + BladeElement.scalar(n)).coefficients))))
    return {"passed": worst <= 1e-9, "max_error": worst}


def check_star_antiautomorphism(corpus: Corpus) -> dict:
    rng = _rng()
    worst = 0.0
    for n in range(1, 7):
        for _ in range(20):
            a, b = _sparse_random(rng, n), _sparse_random(rng, n)
            lhs = star(blade_product(a, b))
            rhs = blade_product(star(b), star(a))
            worst = max(worst, float(np.max(np.abs((lhs - rhs).coefficients))))
            worst = max(worst, float(np.max(np.abs((star(star(a)) - a).coefficients))))
    return {"passed": worst <= 1e-9, "max_error": worst}


def _ambient_matrix(G: FiniteOrthogonalGroup, g: int) -> np.ndarray:
    m = G.elements[g]
    return stabilize(m) if G.dimension % 2 else m


def check_grading_identity(corpus: Corpus) -> dict:
    worst, where = 0.0, None
    for e in corpus.karoubi_corpus:
        cover = e.cover
        J = volume_element(cover.ambient)
        Js = star(J)
        for g, lift in enumerate(cover.reference_lifts):
            x = lift.element
            det = e.group.det_character[g]
            lhs = blade_product(blade_product(J, x), Js)
            err = float(np.max(np.abs((lhs - det * x).coefficients)))
            if err > worst:
                worst, where = err, {"group": e.label, "element": g, "det": det}
    return {"passed": worst <= 1e-9, "max_error": worst, "worst_at": where}


def check_lift_adjoint(corpus: Corpus) -> dict:
    worst_orth = worst_match = 0.0
    for e in corpus.karoubi_corpus:
        for g, lift in enumerate(e.cover.reference_lifts):
            q = adjoint_action(lift)
            n = q.shape[0]
            worst_orth = max(worst_orth, float(np.max(np.abs(q.T @ q - np.eye(n)))))
            worst_match = max(worst_match,
                              float(np.max(np.abs(q - _ambient_matrix(e.group, g)))))
    return {"passed": worst_orth <= 1e-8 and worst_match <= 1e-7,
            "max_orthogonality_error": worst_orth, "max_adjoint_error": worst_match}


def check_group_closure(corpus: Corpus) -> dict:
    rng = _rng()
    for e in corpus.entries:
        G = e.group
        for _ in range(50):
            a, b = (int(x) for x in rng.integers(len(G), size=2))
            if G.find(G.elements[a] @ G.elements[b]) is None:
                return {"passed": False, "group": e.label, "pair": [a, b]}
            if G.find(G.elements[a].T) is None:
                return {"passed": False, "group": e.label, "missing_inverse": a}
    return {"passed": True, "groups": len(corpus.entries)}


def _brute_classes(G: FiniteOrthogonalGroup) -> list[list[int]]:
    owner = [-1] * len(G)
    classes = []
    for g in range(len(G)):
        if owner[g] >= 0:
            continue
        cls = sorted({G.conj(h, g) for h in range(len(G))})
        for x in cls:
            owner[x] = len(classes)
        classes.append(cls)
    return classes


def check_class_partition(corpus: Corpus) -> dict:
    brute_checked = 0
    for e in corpus.entries:
        G = e.group
        classes = G.class_partition()
        sizes = [len(c) for c in classes]
        members = sorted(x for c in classes for x in c)
        if members != list(range(len(G))) or any(len(G) % s for s in sizes):
            return {"passed": False, "group": e.label, "sizes": sizes}
        if len(G) <= 48:
            if classes != _brute_classes(G):
                return {"passed": False, "group": e.label, "reason": "differs from brute force"}
            brute_checked += 1
    return {"passed": True, "brute_force_checked": brute_checked}


def check_kernel_index(corpus: Corpus) -> dict:
    for e in corpus.entries:
        K = kernel_subgroup(e.group, e.group.det_character)
        if len(e.group) // len(K) not in (1, 2) or len(e.group) % len(K):
            return {"passed": False, "group": e.label, "index": len(e.group) / len(K)}
    return {"passed": True}


def check_fixed_subspaces(corpus: Corpus) -> dict:
    worst = 0.0
    for e in corpus.karoubi_corpus:
        G = e.group
        for g in G.class_reps:
            q = G.elements[g]
            b = fixed_subspace(q)
            k = b.shape[1]
            eig_one = int(np.sum(np.abs(np.linalg.eigvals(q) - 1.0) < 1e-6))
            if k != eig_one:
                return {"passed": False, "group": e.label, "element": g,
                        "dim": k, "eigenvalue_one_multiplicity": eig_one}
            if k:
                worst = max(worst, float(np.max(np.abs(b.T @ b - np.eye(k)))),
                            float(np.max(np.abs(q @ b - b))))
    return {"passed": worst <= 1e-8, "max_error": worst}


def check_cover_order(corpus: Corpus) -> dict:
    for e in corpus.karoubi_corpus:
        cov = e.cover
        n_pairs = sum(len(c) for c in cov.class_partition)
        if n_pairs != 2 * len(e.group) or cov.order != 2 * len(e.group):
            return {"passed": False, "group": e.label, "pairs": n_pairs}
    return {"passed": True}


def check_central_minus_one(corpus: Corpus) -> dict:
    for e in corpus.karoubi_corpus:
        cov = e.cover
        m1 = cov.central_minus_one
        for a in cov.elements():
            if cov.mul(m1, a) != cov.mul(a, m1):
                return {"passed": False, "group": e.label, "element": list(a)}
    return {"passed": True}


def check_cocycle_associativity(corpus: Corpus) -> dict:
    rng = _rng()
    tested = 0
    for e in corpus.karoubi_corpus:
        cov, G = e.cover, e.group
        for _ in range(40):
            g, h, k = (int(x) for x in rng.integers(len(G), size=3))
            lhs = cov.cocycle(g, h) * cov.cocycle(G.mul(g, h), k)
            rhs = cov.cocycle(h, k) * cov.cocycle(g, G.mul(h, k))
            tested += 1
            if lhs != rhs:
                return {"passed": False, "group": e.label, "triple": [g, h, k]}
            a, b = (g, 1), (h, -1)
            if cov.project(cov.mul(a, b)) != G.mul(g, h):
                return {"passed": False, "group": e.label, "projection_pair": [g, h]}
    return {"passed": True, "triples": tested}


def check_decomposition_criterion(corpus: Corpus) -> dict:
    for e in corpus.karoubi_corpus:
        cov, G = e.cover, e.group
        split = split_classes_by_partition(cov)
        n_split = 0
        for ci, cls in enumerate(G.class_partition()):
            g = cls[0]
            by_partition = g in split
            by_centralizer = splits_by_centralizer(cov, g)
            if by_partition != by_centralizer:
                return {"passed": False, "group": e.label, "class_index": ci,
                        "representative": g, "split_by_partition": by_partition,
                        "split_by_centralizer": by_centralizer}
            n_split += by_centralizer
        cgr, cg, _, _ = e.counts
        if n_split != cgr - cg or cgr - cg < 0:
            return {"passed": False, "group": e.label, "split": n_split, "C_Grho-C_G": cgr - cg}
    return {"passed": True}


def check_divisibility(corpus: Corpus) -> dict:
    for e in corpus.karoubi_corpus:
        cgr, cg, ckr, ck = e.counts
        if cgr < cg or ckr < ck:
            return {"passed": False, "group": e.label, "counts": list(e.counts)}
        if not e.group.is_orientation_preserving:
            nums = nonoriented_numerators(e.counts)
            if any(x % 3 for x in nums):
                return {"passed": False, "group": e.label, "numerators": list(nums)}
    return {"passed": True}


def check_karoubi_equals_pipeline(corpus: Corpus) -> dict:
    table = {}
    for e in corpus.karoubi_corpus:
        table[e.label] = [e.pipeline.rank_k0, e.pipeline.rank_k1]
        if e.pipeline.ranks != e.karoubi.ranks:
            return {"passed": False, "group": e.label, "pipeline": list(e.pipeline.ranks),
                    "karoubi": list(e.karoubi.ranks)}
    return {"passed": True, "ranks": table}


def check_parity_concentration(corpus: Corpus) -> dict:
    for e in corpus.karoubi_corpus:
        if e.group.is_orientation_preserving:
            odd_slot = place(0, 1, e.group.dimension).index(1)
            if e.pipeline.ranks[odd_slot] != 0:
                return {"passed": False, "group": e.label, "ranks": list(e.pipeline.ranks)}
    return {"passed": True}


def check_pinc_cyclic(corpus: Corpus) -> dict:
    for e in corpus.select("cyclic_rot", "cyclic_refl", "trivial"):
        if not is_cyclic(e.group):
            return {"passed": False, "group": e.label, "reason": "not cyclic"}
        pinc = pinc_for_group(e.group)
        if pinc.ranks != e.pipeline.ranks:
            return {"passed": False, "group": e.label, "pinc": list(pinc.ranks),
                    "pipeline": list(e.pipeline.ranks)}
    return {"passed": True}


def check_cyclic_closed_form(corpus: Corpus) -> dict:
    for e in corpus.select("cyclic_rot", "cyclic_refl"):
        m, dim = e.param, e.group.dimension
        if e.family == "cyclic_rot":
            expected = place(m, 0, dim)
        else:
            expected = place(0, m // 2, dim)
        if e.pipeline.ranks != expected:
            return {"passed": False, "group": e.label, "got": list(e.pipeline.ranks),
                    "expected": list(expected)}
    return {"passed": True}


def check_alt_restriction(corpus: Corpus) -> dict:
    for e in corpus.select("alt", max_param=6):
        if e.pipeline.ranks != alt_ranks(e.param).ranks:
            return {"passed": False, "group": e.label, "pipeline": list(e.pipeline.ranks),
                    "formula": list(alt_ranks(e.param).ranks)}
    return {"passed": True}


def check_sym_triple_agreement(corpus: Corpus) -> dict:
    table = {}
    for e in corpus.select("sym"):
        formula = sym_ranks(e.param).ranks
        table[e.label] = list(formula)
        if not (e.pipeline.ranks == e.karoubi.ranks == formula):
            return {"passed": False, "group": e.label, "pipeline": list(e.pipeline.ranks),
                    "karoubi": list(e.karoubi.ranks), "partition_formula": list(formula)}
    return {"passed": True, "ranks": table}


def check_decomposing_counts(corpus: Corpus) -> dict:
    rows = {}
    syms = {e.param: e for e in corpus.select("sym")}
    for n, e in syms.items():
        sdec, adec = decomposing_class_counts(n)
        cgr, cg, ckr, ck = e.counts
        rows[n] = [cgr - cg, ckr - ck, sdec, adec]
        if (cgr - cg, ckr - ck) != (sdec, adec):
            return {"passed": False, "n": n, "cover": [cgr - cg, ckr - ck],
                    "formula": [sdec, adec]}
    return {"passed": True, "rows": rows}


def check_partition_identities(corpus: Corpus) -> dict:
    for n in range(2, corpus.partition_max + 1):
        c = partition_counts(n)
        if n <= 30 and c != partition_counts_bruteforce(n):
            return {"passed": False, "n": n, "reason": "memoized count differs from enumeration"}
        if n % 2:
            ok = c.a_n == c.i_n and c.b_n == c.p_n
        else:
            ok = c.a_n == c.p_n and c.b_n == c.i_n
        if not ok or c.a_n + c.b_n != c.p_n + c.i_n:
            return {"passed": False, "n": n, "counts": [c.a_n, c.b_n, c.p_n, c.i_n]}
    return {"passed": True, "n_max": corpus.partition_max}


def expected_gl_row(n: int):
    """The GL(n,R) answer written straight from the closed-form statement."""
    if n == 2:
        return finite(1), INFINITE
    if n % 2 == 0:
        return INFINITE, INFINITE
    m = (n - 1) // 2
    return tuple(INFINITE if (star + m) % 2 else ZERO for star in (0, 1))


def check_gl_table(corpus: Corpus) -> dict:
    for n, k0, k1 in gl_table(8):
        if (k0, k1) != expected_gl_row(n):
            return {"passed": False, "n": n, "got": [str(k0), str(k1)]}
    return {"passed": True}


def check_on_family(corpus: Corpus) -> dict:
    for n in range(2, 9):
        std = OnActionSpec(n, "standard")
        if symbolic_ranks(std) != (INFINITE, ZERO) or spinor_test(std):
            return {"passed": False, "n": n, "action": "standard"}
        sm = OnActionSpec(n, "symmetric_matrices")
        if minus_eigenspace_dim(sm) != 2 * (n - 2):
            return {"passed": False, "n": n, "dim_V_minus": minus_eigenspace_dim(sm)}
        if orientation_test(sm) != (n % 2 == 1) or spinor_test(sm) != (n % 2 == 0):
            return {"passed": False, "n": n, "action": "symmetric_matrices"}
        k0, k1 = symbolic_ranks(sm)
        if orientation_test(sm) and ZERO not in (k0, k1):
            return {"passed": False, "n": n, "reason": "oriented case not concentrated"}
    return {"passed": True}


CHECKS: list[tuple[str, Callable[[Corpus], dict]]] = [
    ("clifford_associativity", check_clifford_associativity),
    ("clifford_defining_relation", check_defining_relation),
    ("clifford_star_antiautomorphism", check_star_antiautomorphism),
    ("grading_identity", check_grading_identity),
    ("lift_adjoint", check_lift_adjoint),
    ("group_closure", check_group_closure),
    ("class_partition", check_class_partition),
    ("kernel_index", check_kernel_index),
    ("fixed_subspaces", check_fixed_subspaces),
    ("cover_order", check_cover_order),
    ("central_minus_one", check_central_minus_one),
    ("cocycle_associativity", check_cocycle_associativity),
    ("decomposition_criterion", check_decomposition_criterion),
    ("divisibility_by_3", check_divisibility),
    ("karoubi_equals_pipeline", check_karoubi_equals_pipeline),
    ("parity_concentration", check_parity_concentration),
    ("pinc_cyclic", check_pinc_cyclic),
    ("cyclic_closed_form", check_cyclic_closed_form),
    ("alt_restriction", check_alt_restriction),
    ("sym_triple_agreement", check_sym_triple_agreement),
    ("decomposing_counts", check_decomposing_counts),
    ("partition_identities", check_partition_identities),
    ("gl_table", check_gl_table),
    ("on_family", check_on_family),
]


def run_check(name: str, fn, corpus: Corpus) -> CheckResult:
    t0 = time.perf_counter()
    try:
        detail = fn(corpus)
        passed = bool(detail.pop("passed"))
    except Exception as exc:  # a crashing check is a failed check
        passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CheckResult(name, passed, detail, time.perf_counter() - t0)


def run_suite(suite: str = "small", tamper: bool = False,
              only: list[str] | None = None) -> list[CheckResult]:
    corpus = Corpus(suite, tamper=tamper)
    results = []
    for name, fn in CHECKS:
        if only and name not in only:
            continue
        results.append(run_check(name, fn, corpus))
    return results
