"""Classical MDS with pluggable distances, supplemental-point embedding,
local biplot axes, generalized PCA, UniFrac distances and a synthetic
two-group count simulator.
"""

from .biplots import (
    ANALYTIC,
    EPS_NEGATIVE,
    EPS_POSITIVE,
    NEGATIVE,
    POSITIVE,
    CorrelationBiplot,
    LbField,
    LbMode,
    LocalBiplotMatrix,
    align_column_signs,
    correlation_biplot,
    cosine_similarity,
    lb_axes,
    lb_constancy,
    lb_field,
)
from .distances import (
    Distance,
    EuclideanDistance,
    FunctionDistance,
    GeneralizedEuclideanDistance,
    GeneralizedForm,
    ManhattanDistance,
    UnweightedUnifracDistance,
    WeightedUnifracDistance,
    make_distance,
    squared_distance_matrix,
    tree_covariance_q,
)
from .errors import (
    DomainError,
    FormError,
    LocalBiplotsError,
    ModeError,
    NumericError,
    ParseError,
    RankError,
    ShapeError,
    ValidationError,
)
from .gpca import GpcaSolution, gpca, symmetric_sqrt
from .mds import (
    InertiaReport,
    MdsSolution,
    classical_mds,
    double_center,
    embed_supplemental,
    supplemental_vector,
)
from .simulate import (
    SimulatedDataset,
    SimulationConfig,
    double_poisson_mean,
    double_poisson_pmf,
    double_poisson_sample,
    simulate,
)
from .tree import (
    BranchIncidence,
    PhyloTree,
    branch_incidence,
    build_balanced_tree,
    parse_newick,
    to_newick,
)

__version__ = "0.1.0"
