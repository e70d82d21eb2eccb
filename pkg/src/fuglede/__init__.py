"""Tiles, spectral sets and complex Hadamard matrices in finite abelian groups."""

from .counterexample import expand_counterexample, paper_fixtures, verify_counterexample
from .cyclo import CyclotomicSum, cyclotomic_poly, indicator_transform, root_sum_is_zero, zero_set
from .diff import DiffInstance, DiffSolution, brute_force_diff, build_conflict_graph, solve_diff
from .errors import DimensionMismatch, EnumerationCapError, FugledeError, InstanceTooLarge
from .group import GroupSpec, PointSet, cyclic, make_group
from .hadamard import (
    IntMatrixModN,
    RationalMatrix,
    canonicalize_small,
    dita4_log,
    fourier_log_hadamard,
    is_hadamard,
    is_log_hadamard,
    mod_rank,
    verify_decomposition,
)
from .reduction import (
    SimpleGraph,
    brute_force_independent_set,
    encode_graph,
    greedy_embedding,
    independent_set_via_diff,
)
from .tiling import (
    DecisionReport,
    is_spectral,
    is_tile,
    scan_small_spectral_implies_tile,
    verify_spectrum,
    verify_tiling,
)

__version__ = "0.1.0"
