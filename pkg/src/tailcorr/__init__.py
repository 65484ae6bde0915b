"""tailcorr: tail correlation functions of max-stable processes.

Evaluate, invert, transform, validate, and empirically verify tail
correlation functions (TCFs) of stationary max-stable processes.
"""

from .errors import (
    ConfigError,
    DomainError,
    KinkError,
    ModelError,
    NotInClassError,
    QuadratureError,
    SimulationError,
    TailcorrError,
)
from .numerics import (
    SpecialFnResult,
    bessel_k,
    erf,
    erf_inv,
    erfc,
    erfc_inv,
    num_derivative,
    quadrature,
)
from .radial import (
    Correlation,
    RadialFunction,
    Variogram,
    ball_indicator,
    bounded_variogram,
    correlation_from_callable,
    erfc_sqrt,
    exponential_correlation,
    exponential_decay,
    fbm_variogram,
    generalized_cauchy,
    powered_erfc,
    powered_exponential,
    radial_from_callable,
    tent,
    truncated_power,
    variogram_from_callable,
    whittle_matern,
)
from .distributions import (
    Distribution1D,
    exponential_dist,
    from_cdf,
    from_pdf,
    point_mass,
    scale_distribution,
)
from .models import (
    BRModel,
    EBGModel,
    EGModel,
    M2rModel,
    M3bModel,
    M3rModel,
    MPSModel,
    ShapeEnsemble,
    TcfModel,
    VBRModel,
    classify_parameters,
    h_d,
    parametric_bounds,
    parametric_tcf,
    tcf,
    tcf_result,
)
from .recovery import (
    RecoveryInput,
    recover_radius_density,
    recover_radius_law,
    recover_shape,
    radius_normalization,
    shape_normalization,
)
from .operators import (
    S_ADMISSIBLE_LIMIT,
    T_ADMISSIBLE_LIMIT,
    TransformSpec,
    TurningBandsSpec,
    apply_transform,
    chi_d,
    chi_d_radial,
    gneiting_c,
    implied_br_variogram,
    is_admissible,
    multiply_overlap,
    phi_d,
    phi_d_radial,
    taylor_abs_monotone,
    transform_R,
    transform_S,
    transform_T,
    transform_bound,
    turning_bands,
    turning_bands_mc,
)
from .membership import (
    MembershipReport,
    Verdict,
    classify,
    spectral_density,
    test_completely_monotone,
    test_positive_definite,
    test_triangle,
)
from .simulate import (
    GridField,
    GridSpec,
    LagEstimate,
    SimConfig,
    Truncation,
    estimate_chi,
    simulate,
    transform_margins,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "TailcorrError",
    "DomainError",
    "QuadratureError",
    "KinkError",
    "ModelError",
    "NotInClassError",
    "SimulationError",
    "ConfigError",
    # numerics
    "SpecialFnResult",
    "erf",
    "erfc",
    "erf_inv",
    "erfc_inv",
    "bessel_k",
    "quadrature",
    "num_derivative",
    # radial functions and traces
    "RadialFunction",
    "Variogram",
    "Correlation",
    "radial_from_callable",
    "tent",
    "exponential_decay",
    "erfc_sqrt",
    "powered_erfc",
    "powered_exponential",
    "whittle_matern",
    "generalized_cauchy",
    "truncated_power",
    "ball_indicator",
    "fbm_variogram",
    "bounded_variogram",
    "variogram_from_callable",
    "exponential_correlation",
    "correlation_from_callable",
    # distributions
    "Distribution1D",
    "point_mass",
    "exponential_dist",
    "from_pdf",
    "from_cdf",
    "scale_distribution",
    # models
    "h_d",
    "ShapeEnsemble",
    "M3rModel",
    "M2rModel",
    "M3bModel",
    "MPSModel",
    "BRModel",
    "VBRModel",
    "EGModel",
    "EBGModel",
    "TcfModel",
    "tcf",
    "tcf_result",
    "parametric_tcf",
    "parametric_bounds",
    "classify_parameters",
    # recovery
    "RecoveryInput",
    "recover_shape",
    "recover_radius_density",
    "recover_radius_law",
    "shape_normalization",
    "radius_normalization",
    # operators
    "S_ADMISSIBLE_LIMIT",
    "T_ADMISSIBLE_LIMIT",
    "transform_R",
    "transform_S",
    "transform_T",
    "TransformSpec",
    "transform_bound",
    "is_admissible",
    "apply_transform",
    "taylor_abs_monotone",
    "TurningBandsSpec",
    "turning_bands",
    "turning_bands_mc",
    "phi_d",
    "phi_d_radial",
    "chi_d",
    "chi_d_radial",
    "gneiting_c",
    "implied_br_variogram",
    "multiply_overlap",
    # membership
    "Verdict",
    "MembershipReport",
    "classify",
    "spectral_density",
    "test_completely_monotone",
    "test_positive_definite",
    "test_triangle",
    # simulate
    "GridSpec",
    "GridField",
    "Truncation",
    "SimConfig",
    "LagEstimate",
    "simulate",
    "transform_margins",
    "estimate_chi",
]
