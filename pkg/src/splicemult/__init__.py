"""splicemult: exact multiplicities of abelian covers of splice quotient
surface singularities, computed from the weighted dual graph of the
resolution and a subgroup of the discriminant group."""

from .errors import (
    BadWeightError,
    CapExceededError,
    EmptySetError,
    GraphMismatchError,
    IndexMismatchError,
    MaxBlowupsExceededError,
    MonomialConditionError,
    NonIntegerMultiplicityError,
    NotAnEdgeError,
    NotAnEndError,
    NotATreeError,
    NotMinimalError,
    NotNegativeDefiniteError,
    NotSymmetricError,
    ParseError,
    RankDeficientError,
    SingularMatrixError,
    SpliceMultError,
    TooSmallError,
    UnknownVertexError,
)
from .graph import (
    BlowupEvent,
    GraphHistory,
    ResolutionGraph,
    blowup_edge,
    blowup_end_point,
    branches,
    graph_from_dict,
    is_minimal,
    parse_and_validate,
    parse_graph,
    pullback_vertex_cycle,
)
from .lattice import (
    DiscriminantGroup,
    DualBasis,
    QCycle,
    SubgroupData,
    discriminant_group,
    dual_cycles,
    enumerate_subgroups,
    flat_subgroup,
    full_subgroup,
    intersect,
    perp_member,
    subgroup,
    to_dual_coordinates,
    trivial_subgroup,
)
from .linalg import (
    HnfResult,
    SnfResult,
    determinant,
    hermite_normal_form,
    invert_rational_matrix,
    is_negative_definite,
    smith_normal_form,
)
from .monomial import (
    HilbertBasis,
    MonomialCycle,
    base_point_set,
    branch_cycle,
    coefficient,
    gcd_cycle,
    hilbert_basis,
    monomial_condition,
    monomial_cycle,
    neumann_wahl_system,
)
from .pipeline import (
    EdgeCheckResult,
    EndDecision,
    PipelineConfig,
    PipelineReport,
    check_gcd_condition,
    multiplicity_of_quotient,
    resolve_base_points,
    run_pipeline,
)

__version__ = "0.1.0"
