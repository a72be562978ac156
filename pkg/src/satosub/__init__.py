"""Tempered stable laws, Sato subordinators, and factor-based subordinated
Brownian motions with closed-form characteristic functions and a Monte Carlo
cross-validation oracle."""

from .errors import DomainError, ValidationError, Violation
from .factor import (
    BrownianFactor,
    CorrelationCurve,
    FactorSubordinator,
    NigFactorModel,
    NigMarginal,
    SubordinatorMoments,
    a_max,
    baseline_levy_correlation,
    baseline_marginal_sato_correlation,
    correlation,
    correlation_curve,
    correlation_limits,
    factor_subordinated_bm_cf,
    ig_cf,
    model_subordinated_bm_cf,
    nig_model_cf,
    process_std,
    subordinated_bm_cf,
    subordinator_moments,
)
from .montecarlo import (
    McCheck,
    McConfig,
    McReport,
    empirical_cf,
    empirical_correlation,
    empirical_mean_var,
    mc_check_report,
    sample_ig,
    sample_process,
    sample_subordinator,
)
from .sato import SatoSubordinator, make_sato
from .serialization import (
    ParseError,
    distribution_from_dict,
    distribution_to_dict,
    load_path,
    model_from_dict,
    model_to_dict,
    object_from_dict,
    subordinator_from_dict,
    subordinator_to_dict,
)
from .tempered import (
    Atom,
    ExpTemperedStable,
    SpectralAtom,
    SupportProperties,
    VariationClass,
    convolve,
    scale,
)

__version__ = "0.1.0"
