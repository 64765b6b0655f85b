"""Optimal boundary-homogeneous pure-DP mechanisms over preference-ordered
dataset graphs: closed forms on lines, a quotient reduction for arbitrary
graphs, and an independent lexicographic-maximization solver."""

from .errors import (
    DomainMismatchError,
    EmptyBoundaryRegionError,
    InfeasibleBoundaryError,
    InfeasibleError,
    InvalidSimplexError,
    NegativeEntryError,
    NotAMorphismError,
    ParseError,
    RainbowDPError,
    SizeMismatchError,
    SumNotOneError,
    UnknownVertexError,
)
from .line import (
    LineBoundary,
    LineSolution,
    Thresholds,
    b_star,
    g_star,
    line_graph,
    line_values,
    r_star,
    solve_line,
    solve_line_binary,
    tau_b,
    tau_r,
    thresholds,
)
from .mechanism import (
    BoundarySpec,
    DpReport,
    DpViolation,
    dominates,
    pullback,
    sample,
    sample_counts,
    solve_graph,
    verify_boundary_homogeneous,
    verify_dp,
)
from .model import (
    COMPARE_TOL,
    Epsilon,
    Mechanism,
    Ordering,
    Palette,
    ProbVector,
    Rainbow,
    RainbowGraph,
    SIMPLEX_TOL,
    TERNARY_COLORS,
    UNBOUNDED,
    from_rank_view,
    lex_compare,
    rank_view,
    validate_prob_vector,
)
from .oracle import (
    RankState,
    random_feasible,
    solve_lexicographic,
    solve_region_rank,
)
from .topology import (
    BoundaryGraph,
    BoundaryLabel,
    Region,
    boundary_morphism,
    decompose,
    distance_to_boundary,
    is_rainbow_preserving,
)
from .votes import vote_graph

__version__ = "0.1.0"
