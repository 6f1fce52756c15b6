"""skinfx: exact solution of the half-space skin-effect problem for a
Maxwellian plasma with diffuse electron reflection, plus an independent
discrete-ordinates solver used to validate it.

Public API re-exported here; see the module docstrings for the mathematics.
"""

from .errors import (
    DegenerateCoefficientError,
    InconsistencyError,
    NearCutError,
    NonConvergenceError,
    OracleDivergenceError,
    ParameterDomainError,
    RegularizationError,
    RootSelectionError,
    SkinfxError,
    SpectralBoundaryError,
    TruncationError,
)
from .params import (
    KineticParams,
    PhysicalParams,
    from_plasma,
    from_transport,
)
from .specfun import p_pv, p_value, q_value
from .dispersion import (
    BranchTable,
    build_branch_table,
    g_coefficient,
    lambda_boundary,
    lambda_value,
)
from .spectrum import (
    CurvePoints,
    DomainClass,
    SpectrumReport,
    classify_delta,
    find_discrete_zeros,
    index_kappa,
    l_curve,
    lambda_curve,
    y_root,
)
from .factor import (
    FactorRep,
    build_factor,
    v_value,
    x_at_zero,
    x_boundary,
    x_logderiv_at_zero,
    x_value,
)
from .solution import (
    ImpedanceReport,
    ProfileTable,
    SolutionPayload,
    build_solution,
    distribution,
    efield_profile,
    impedance,
    local_limit_impedance,
)
from .oracle import OracleConfig, OracleResult, default_config, solve_bvp

__version__ = "1.0.0"

__all__ = [
    "SkinfxError", "ParameterDomainError", "SpectralBoundaryError",
    "DegenerateCoefficientError", "NonConvergenceError", "InconsistencyError",
    "RootSelectionError", "NearCutError", "RegularizationError",
    "TruncationError", "OracleDivergenceError",
    "PhysicalParams", "KineticParams", "from_transport", "from_plasma",
    "p_value", "p_pv", "q_value",
    "lambda_value", "lambda_boundary", "g_coefficient", "BranchTable",
    "build_branch_table",
    "SpectrumReport", "DomainClass", "CurvePoints", "index_kappa",
    "find_discrete_zeros", "classify_delta", "lambda_curve", "y_root",
    "l_curve",
    "FactorRep", "build_factor", "v_value", "x_value", "x_boundary",
    "x_at_zero", "x_logderiv_at_zero",
    "ImpedanceReport", "SolutionPayload", "ProfileTable", "build_solution",
    "impedance", "local_limit_impedance", "efield_profile", "distribution",
    "OracleConfig", "OracleResult", "default_config", "solve_bvp",
    "__version__",
]
