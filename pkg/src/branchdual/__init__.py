"""Branchwidth of surface-embedded graphs and hypergraphs, and of their duals."""

from .decomposition import BranchTree, WidthMeasure, caterpillar, inc_lift, width
from .embedding import (
    DualCorrespondence,
    EmbeddedGraph,
    classify_edge,
    contract,
    delete,
    dual,
    euler_genus,
    is_isomorphic,
    trace_faces,
)
from .errors import (
    BranchDualError,
    EmbeddingError,
    FormatError,
    GeneratorExhausted,
    PreconditionError,
    SolverCapError,
)
from .graph import Multigraph
from .hypergraph import EmbeddedHypergraph, hyper_border, hyper_classify, hyper_dual, theorem2_check
from .lemmas import reduction_trace, theorem1_check
from .measures import EdgeSubset, border, circuit_rank, cycle_basis, delta, mu, rank
from .report import VerificationReport
from .solver import exact_bw, exact_connected_bw, exact_mu_bw, heuristic_bw

__version__ = "0.1.0"
