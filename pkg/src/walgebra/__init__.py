"""Exact computations in the Virasoro, Witt and W(2,2) Lie algebras:
brackets over the rationals, windowed map tables with identity residuals,
and nullspace-based classification of biderivations, derivations and
commuting maps."""

from .algebra import (
    ALGEBRAS,
    VIRASORO,
    W22,
    W22_CENTERLESS,
    WITT,
    AlgebraSpec,
    BasisSymbol,
    C,
    Element,
    H,
    L,
    algebra_by_name,
    bracket,
    center_basis,
    jacobi_residual,
    omega,
    window_symbols,
)
from .errors import (
    InvalidCore,
    InvalidSymbol,
    MapFormatError,
    NotInClassifiedFamily,
    OutOfWindow,
    UnsupportedAlgebra,
    WAlgebraError,
    WindowTooSmall,
)
from .maps import (
    BilinearMapWindow,
    LinearMapWindow,
    biderivation_residuals,
    commuting_residual,
    derivation_residual,
    h_scaling_map,
    identity_map,
    inner_biderivation,
    inner_derivation,
    l_to_h_biderivation,
    l_to_h_map,
    map_from_json,
    map_to_json,
    postlie_residuals,
    run_verification,
)
from .solver import (
    ConstraintSystem,
    SolutionSpace,
    UnknownIndex,
    assemble_biderivation_system,
    assemble_commuting_system,
    assemble_derivation_system,
    assemble_symmetric_biderivation_system,
    center_report,
    classify,
    extract_parameters,
    nullspace,
    project_to_core,
    report_json,
    solution_to_map,
)

__version__ = "0.1.0"
