"""Multiway spectral graph partitioning with simplex group labels."""

from .baseline import KMeansConfig, kmeans_partition
from .eigen import EigenResult, dense_eigen_oracle, smallest_nontrivial_eigenpairs
from .graph import (
    Graph,
    Partition,
    affinity_graph,
    connected,
    cut_size,
    laplacian_apply,
    load_edge_list,
    read_edge_list,
)
from .partitioner import SolveReport, balance, bisect, procrustes_rotation, round_to_nearest, solve
from .simplex import GroupVectors, PartitionSpec, pair_eigenvalues, regular_simplex, relaxed_cost, size_transform
from .synth import PlantedSpec, accuracy, chance_baseline, generate, sweep

__version__ = "0.1.0"
