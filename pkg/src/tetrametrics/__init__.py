"""tetrametrics: classification measures over the confusion-matrix simplex.

Evaluates 22 binary classification performance measures as pure functions
of (TP, FN, FP, TN), exhaustively over the integer simplex of fixed-total
confusion matrices; embeds the simplex in a regular 3D tetrahedron for
visualization; verifies measure properties (transfer monotonicity,
class-swap and error-type symmetry, undefined-region structure, imbalance
sensitivity) with replayable witnesses; and locates parameter values where
properties of parametric families (F-beta, IBA of the G-mean, weighted
accuracy) flip.
"""

__version__ = "0.1.0"

from .confusion import ConfusionMatrix
from .errors import (
    BracketError,
    ColormapError,
    EmptyGamutError,
    OracleShapeError,
    ParameterError,
    ResolutionError,
    TetrametricsError,
    UndefinedValueError,
    UnknownMeasureError,
)
from .grid import enumerate_grid, grid_counts, grid_size
from .measures import (
    Gamut,
    MeasureDescriptor,
    MeasureValue,
    ParamSpec,
    evaluate,
    gamut,
    get_measure,
    list_measures,
    measure_ids,
)
from .geometry import (
    CANONICAL_TETRAHEDRON,
    BarycentricPoint,
    Colormap,
    CrossSection,
    DEFAULT_COLORMAP,
    Field,
    FieldSample,
    TetraVertexSet,
    colorize,
    cross_section,
    field_arrays,
    sample_field,
    skeleton,
    to_cartesian,
)
from .properties import (
    ImbalanceProfile,
    PropertyMatrix,
    PropertyReport,
    UndefinedSummary,
    Witness,
    check_class_swap_symmetry,
    check_error_type_symmetry,
    check_monotonicity,
    detect_undefined_regions,
    imbalance_profile,
    property_matrix,
    property_matrix_csv,
    property_matrix_markdown,
)
from .thresholds import (
    ThresholdResult,
    find_threshold,
    iba_monotonicity_limit,
    property_phase_scan,
    rank_flip_threshold,
)

__all__ = [
    "__version__",
    "ConfusionMatrix",
    "TetrametricsError",
    "UnknownMeasureError",
    "ParameterError",
    "ResolutionError",
    "EmptyGamutError",
    "ColormapError",
    "BracketError",
    "OracleShapeError",
    "UndefinedValueError",
    "enumerate_grid",
    "grid_counts",
    "grid_size",
    "MeasureValue",
    "ParamSpec",
    "MeasureDescriptor",
    "Gamut",
    "list_measures",
    "measure_ids",
    "get_measure",
    "evaluate",
    "gamut",
    "BarycentricPoint",
    "TetraVertexSet",
    "CANONICAL_TETRAHEDRON",
    "FieldSample",
    "Field",
    "CrossSection",
    "Colormap",
    "DEFAULT_COLORMAP",
    "to_cartesian",
    "sample_field",
    "field_arrays",
    "cross_section",
    "skeleton",
    "colorize",
    "Witness",
    "PropertyReport",
    "UndefinedSummary",
    "ImbalanceProfile",
    "PropertyMatrix",
    "check_monotonicity",
    "check_class_swap_symmetry",
    "check_error_type_symmetry",
    "detect_undefined_regions",
    "imbalance_profile",
    "property_matrix",
    "property_matrix_markdown",
    "property_matrix_csv",
    "ThresholdResult",
    "property_phase_scan",
    "find_threshold",
    "rank_flip_threshold",
    "iba_monotonicity_limit",
]
