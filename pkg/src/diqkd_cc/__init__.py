"""Upper bounds on device-independent QKD key rates for d-outcome Bell
scenarios via convex-combination attacks: ideal quantum correlations, LP
maximization of the eavesdropper's local weight over the local polytope,
closed-form key-rate bounds, and critical visibilities up to the d->infinity
limit.
"""

from .scenario import (
    CorrelationTable,
    Scenario,
    ValidationReport,
    default_scenario,
    k_shift_probability,
    marginal,
    mix_with_white_noise,
    table_from_text,
    table_to_text,
    uniform_table,
    validate,
)
from .quantum import (
    BellOperatorMatrix,
    MeasurementBasis,
    PureState,
    bell_operator,
    born_table,
    cglmp_bell_operator,
    cglmp_born_table,
    cglmp_optimal_phases,
    cglmp_state,
    fourier_basis,
    max_eigenpair,
    maximally_entangled_state,
    reduced_eigenvalues,
    schmidt_coefficients,
    state_to_text,
)
from .cglmp import (
    CATALAN,
    LOCAL_BOUND,
    CglmpResult,
    cglmp_coefficients,
    cglmp_value,
    evaluate_cglmp,
    idmax_asymptotic,
    idmax_closed_form,
    local_visibility_max_entangled,
)
from .polytope import (
    STRATEGY_CAP,
    CcDecomposition,
    DecompositionInfeasible,
    DeterministicStrategy,
    StrategyCapExceeded,
    decomposition_to_text,
    enumerate_strategies,
    is_local,
    local_residual,
    max_local_weight,
    strategy_from_id,
    strategy_id,
    strategy_table,
)
from .keyrate import (
    ANALYTIC_MAX_ENTANGLED,
    BRANCHES,
    LP_CGLMP_STATE,
    LP_MAX_ENTANGLED,
    BracketError,
    CriticalVisibility,
    KeyRatePoint,
    critical_visibility,
    ec_term_general,
    ec_term_isotropic,
    keyrate_curve,
    keyrate_point,
    local_visibility,
    pa_term_cc,
    pa_zero_visibility,
    qL_analytic,
    rub_analytic,
    rub_asymptotic,
    rub_lp,
    shannon_base_d,
    thread_count,
    vcrit_asymptotic,
)

__version__ = "0.1.0"
