"""Diaphony, dyadic diaphony and L2-discrepancy of point sets in the unit cube."""
from .constants import (
    PLANAR_L2_CONSTANT,
    ConstantTable,
    const_alpha,
    const_beta,
    const_C,
    const_delta,
    const_gamma,
    const_mu,
    constant_table,
    diaphony_constant_bounds,
)
from .core import (
    CapabilityError,
    ConfigError,
    DomainError,
    HaarIndex,
    LatticeIndex,
    MeasureResult,
    Point,
    PointSet,
    ShapeError,
    UniformityError,
    VerificationReport,
    WalshIndex,
    read_point_set,
    validate_point_set,
    write_point_set,
)
from .generators import GeneratorSpec, generate, is_symmetric, symmetric_prefix, symmetrize
from .haar import (
    haar_coeff_discrepancy,
    haar_coeff_indicator,
    haar_coeff_monomial,
    haar_eval,
    roth_haar_bound,
)
from .l2disc import discrepancy_function, l2_exact, l2_quadrature_oracle, prefix_inequality_check
from .trig import TruncationParams, diaphony_exact, diaphony_truncated, trig_sum
from .verify import (
    check_lower_bound_diaphony,
    check_lower_bound_l2,
    check_theorem1,
    check_theorem2,
    check_theorem8,
    check_theorem9,
    track_ratio,
)
from .walsh import (
    WalshTruncation,
    dyadic_diaphony_exact,
    dyadic_diaphony_truncated,
    walsh_coeff_discrepancy,
    walsh_coeff_g0,
    walsh_eval,
    walsh_integral_A,
    walsh_integral_B,
)

__version__ = "0.1.0"
