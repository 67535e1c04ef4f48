"""Zero-sum partitions of finite Abelian groups and Γ-irregular digraph labelings."""

__version__ = "0.1.0"

from .blocks import ZeroSumPart, good6_from_witnesses, skolem_partition, split_good6, zeng_partition
from .errors import (
    ConstructionError,
    InfeasibleError,
    InputError,
    IrrlabelError,
    ResourceError,
    StructuralError,
    UnsupportedClassError,
)
from .groups import GroupElement, GroupSpec, ProductSplit, factor_2_odd
from .labeler import Digraph, Labeling, label_digraph, realize, verify_labeling, weak_components
from .oracle import SearchBudget, cross_validate, oracle_partition
from .partition import general_partition, theorem_zero_sum
from .pools import TriplePool, build_pools, build_pools_case22
from .results import PartitionResult, SizeDemand, verify_partition

__all__ = [
    "ConstructionError", "Digraph", "GroupElement", "GroupSpec", "InfeasibleError", "InputError",
    "IrrlabelError", "Labeling", "PartitionResult", "ProductSplit", "ResourceError", "SearchBudget",
    "SizeDemand", "StructuralError", "TriplePool", "UnsupportedClassError", "ZeroSumPart",
    "build_pools", "build_pools_case22", "cross_validate", "factor_2_odd", "general_partition",
    "good6_from_witnesses", "label_digraph", "oracle_partition", "realize", "skolem_partition",
    "split_good6", "theorem_zero_sum", "verify_labeling", "verify_partition", "weak_components",
    "zeng_partition",
]
