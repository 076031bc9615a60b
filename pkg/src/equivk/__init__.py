"""Equivariant K-theory ranks for finite groups of orthogonal matrices."""
from .clifford import BladeElement, PinCandidate, adjoint_action, blade_product, star
from .cover import DoubleCoverGroup, build_double_cover, class_counts, pin_lift
from .ktheory import KRankReport, compute, karoubi_ranks, ranks_from_counts, ranks_pinc
from .matgroup import FiniteOrthogonalGroup, generate_group
from .onfamily import OnActionSpec, SymbolicRank, gl_table, symbolic_ranks
from .partitions import PartitionCounts, alt_ranks, partition_counts, sym_ranks

__version__ = "0.1.0"
