"""Graph polynomials, cycle matrices and torus actions on graph hypersurfaces."""

__version__ = "0.1.0"

from .graph_core import (  # noqa: E402
    CycleBasis,
    GraphError,
    Multigraph,
    NotConnectedError,
    SearchBoundError,
    banana,
    complete_bipartite,
    complete_graph,
    cycle_basis,
    cycle_graph,
    parse_graph,
    format_graph,
    wheel,
)
from .kirchhoff import build_cycle_matrix, kirchhoff, kirchhoff_dc, normalize  # noqa: E402
from .multipoly import LinearForm, MultiPoly, SymbolicMatrix, determinant  # noqa: E402
from .torus_lattice import (  # noqa: E402
    exact_diagonal_rank,
    projective_rank,
    rank_lower_bound,
    weight_lattice,
)
