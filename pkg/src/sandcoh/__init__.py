"""Coherence measures built on the sandwiched Renyi relative entropy."""

from .axioms import (
    AxiomReport,
    MeasureFn,
    ScalarFn,
    check_c1,
    check_c2,
    check_c3,
    check_c4,
    check_c5,
    check_dpi,
    linearization_counterexample,
    qubit_function_measure,
    standard_measure,
)
from .channels import (
    KrausSet,
    apply_channel,
    dephasing_channel,
    is_incoherent_kraus,
    random_cptp_channel,
    random_incoherent_channel,
    selective_outcomes,
)
from .entropy import Alpha, Regime, sandwiched_renyi
from .matcore import (
    fidelity,
    frac_power,
    herm_eig,
    q_rho_sandwich,
    q_sigma_sandwich,
)
from .measures import (
    MeasureResult,
    c_s,
    c_s1,
    c_s1_pure,
    c_s_pure,
    geometric_coherence,
    l1_coherence_qubit,
)
from .simplexopt import (
    OptimizationReport,
    OptimizerConfig,
    Sense,
    SimplexObjective,
    grid_search,
    holder_check,
    holder_two_block,
    mirror_ascend,
)
from .states import (
    DensityMatrix,
    ProbVector,
    PureState,
    block_direct_sum,
    dephase,
    load_state,
    maximally_coherent,
    random_density,
    random_pure,
    save_state,
)

__version__ = "0.1.0"
