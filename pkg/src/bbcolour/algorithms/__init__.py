from .base import (
    AlgorithmReport,
    ConstructionError,
    PreconditionError,
    double_spaced_colouring,
)
from .dispatch import best_colouring, degeneracy, mad_parameter
from .forests import (
    ForestPartition,
    PartitionDeadlock,
    check_partition,
    colour_forest_partition,
    forest_bound,
    partition_into_forests,
)
from .interval import CircularIntervalState, circular_phi, colour_interval_bipartite
from .sparse import MadViolation, SparsityParameters, colour_sparse_peel

__all__ = [
    "AlgorithmReport", "ConstructionError", "PreconditionError", "double_spaced_colouring",
    "best_colouring", "degeneracy", "mad_parameter",
    "ForestPartition", "PartitionDeadlock", "check_partition", "colour_forest_partition",
    "forest_bound", "partition_into_forests",
    "CircularIntervalState", "circular_phi", "colour_interval_bipartite",
    "MadViolation", "SparsityParameters", "colour_sparse_peel",
]
