"""Point spectrum of 2D ideal flow linearised about a cosine shear.

The library separates the linearised equations into classes of Fourier
modes, reduces each class to a complex Hill equation, and evaluates an
Evans function through a pole-free Hill determinant.  Two independent
oracles (direct monodromy integration and a truncated Fourier-space
class operator) cross-check every spectral result.
"""

from .conformal import Side, SpectralParam, cut_distance, fourier_coeff, potential, s_at_origin, s_of_c
from .errors import (
    BranchCutError,
    ClassRangeError,
    ContourThroughRootError,
    ConvergenceError,
    CoprimalityError,
    DegenerateParameterError,
    EigenError,
    EulerHillError,
    OracleMismatchError,
    PoleProximityError,
    PotentialPoleError,
    SingularMatrixError,
    SingularPotentialError,
    TrivialClassError,
)
from .euler import (
    ClassSpectrum,
    SpectrumReport,
    full_evans,
    report_to_dict,
    report_to_json,
    spectrum_report,
)
from .evans import EvansRootSet, RootSearchConfig, count_roots, derivative_checks, evans, find_roots
from .hill import (
    DiscriminantConfig,
    HillMatrix,
    discriminant,
    discriminant_slope_at_zero,
    fredholm_derivative_check,
    hill_determinant,
    hill_matrix,
)
from .jacobi import JacobiTruncation, cross_validate, jacobi_matrix, jacobi_spectrum
from .lattice import (
    ROOT_COUNT_BY_REGION,
    ClassPoint,
    CompanionBasis,
    RegionTag,
    Wavevector,
    class_line_count,
    class_point,
    classify,
    classify_rational,
    companion_basis,
    lattice_points_in_disk,
    representative,
)
from .monodromy import MonodromyResult, integrate_monodromy, quasiperiodic_residual

__version__ = "0.1.0"

__all__ = [
    "BranchCutError",
    "ClassPoint",
    "ClassRangeError",
    "ClassSpectrum",
    "CompanionBasis",
    "ContourThroughRootError",
    "ConvergenceError",
    "CoprimalityError",
    "DegenerateParameterError",
    "DiscriminantConfig",
    "EigenError",
    "EulerHillError",
    "EvansRootSet",
    "HillMatrix",
    "JacobiTruncation",
    "MonodromyResult",
    "OracleMismatchError",
    "PoleProximityError",
    "PotentialPoleError",
    "ROOT_COUNT_BY_REGION",
    "RegionTag",
    "RootSearchConfig",
    "Side",
    "SingularMatrixError",
    "SingularPotentialError",
    "SpectralParam",
    "SpectrumReport",
    "TrivialClassError",
    "Wavevector",
    "class_line_count",
    "class_point",
    "classify",
    "classify_rational",
    "companion_basis",
    "count_roots",
    "cross_validate",
    "cut_distance",
    "derivative_checks",
    "discriminant",
    "discriminant_slope_at_zero",
    "evans",
    "find_roots",
    "fourier_coeff",
    "fredholm_derivative_check",
    "full_evans",
    "hill_determinant",
    "hill_matrix",
    "integrate_monodromy",
    "jacobi_matrix",
    "jacobi_spectrum",
    "lattice_points_in_disk",
    "potential",
    "quasiperiodic_residual",
    "report_to_dict",
    "report_to_json",
    "representative",
    "s_at_origin",
    "s_of_c",
    "spectrum_report",
]
