"""Exact isospectral reductions of lambda-weighted networks and matrices."""

from .errors import *  # noqa: F401,F403
from .ratfield import I, LAMBDA, GaussianRational, Poly, RatFunc, as_gauss, as_ratfunc
from .literals import format_gauss, format_ratfunc, format_vector, parse_gauss, parse_ratfunc, parse_vector
from .linalg import RatMatrix
from .netgraph import (
    Branch,
    Network,
    StructuralSet,
    branch_weight,
    branches,
    branches_by_length,
    reduced_entry,
    structural_sets,
    validate_lambda0,
    validate_structural,
)
from .reduction import Partition, cross_validate, reduce_graph, reduce_matrix, reduce_onto, reduce_sequence
from .spectra import (
    ChainData,
    MultiplicityReport,
    SpectrumMultiset,
    char_function,
    eigenvectors_at,
    generalized_chain,
    jordan_blocks,
    multiplicities,
    multiset_op,
    spectrum,
)
from .preservation import (
    PreservationVerdict,
    check_all,
    check_block,
    check_disconnected,
    check_entrywise,
    check_single_vertex,
    check_sufficient,
    lift_eigenvector,
    multiplicity_preservation_report,
    project_eigenvector,
)
from .reconstruct import DepthMap, JordanData, jordan_data, rebuild_matrix, reconstruct_vector, vertex_depths
from .equivalence import (
    EquivalenceWitness,
    ReductionRule,
    in_G_pi,
    isomorphic,
    keep_listed,
    keep_loops,
    matrix_spectrally_equivalent,
    min_cycle_cover,
    seq_condition,
    spectrally_equivalent,
)
from .fileformats import load_matrix, load_network, parse_matrix, parse_network

__version__ = "0.1.0"
