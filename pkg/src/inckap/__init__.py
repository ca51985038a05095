"""Incremental knapsack orderings for monotone fractionally subadditive objectives."""
from .algscale import (
    Constants,
    IncrementalOrdering,
    PhaseSchedule,
    build_ordering,
    compute_constants,
    make_ordering,
    phase_schedule,
)
from .evaluator import RatioCurve, best_ordering, competitive_ratio, prefix_value
from .flows import (
    FlowInstance,
    IncrementTrace,
    PotentialInstance,
    best_flow_ordering,
    fig1_graph,
    flow_ratio,
    max_flow,
    min_edges_for_value,
    potential_eval_oracle,
    potential_to_xos,
    quickest_increment,
)
from .instances import gen_coverage, gen_m_bound, gen_random_xos, gen_sqrt6
from .objective import (
    CapabilityError,
    DualCertificate,
    Instance,
    InputError,
    dual_solution,
    evaluate,
    make_instance,
    validate,
    verify_dual_feasible,
)
from .optimum import BreakpointTable, OptimumPoint, breakpoints, optimum, ordered_optimum, prefix_set

__version__ = "0.1.0"
