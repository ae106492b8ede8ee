"""Utility-proportional-fairness rate allocation for a single cell.

A base station prices its total rate R from the users' bids
(p = sum of bids / R), each user replies with the rate maximizing
log U(r) - p*r and the bid p*r, and the exchange repeats until the bids
settle. Sigmoid utilities model inelastic real-time traffic,
logarithmic utilities model elastic traffic, and an optional
fluctuation-decay envelope keeps the loop convergent where the undamped
exchange would cycle.
"""

from .utility import LogUtility, SigmoidUtility, UtilityFunction, sigmoid_from_qoe
from .solver import NoRootError, SolverConfig, grid_oracle, solve_user_rate
from .protocol import (
    CONVERGED,
    ITERATION_CAP,
    AllocationConfig,
    AllocationResult,
    DecayPolicy,
    ExponentialDecay,
    IterationRecord,
    RationalDecay,
    apply_decay,
    check_convergence,
    compute_shadow_price,
    run_allocation,
    user_respond,
)
from .sim import (
    FluctuationReport,
    Scenario,
    SweepError,
    SweepResult,
    canonical_scenario,
    find_nonconvergent_rate,
    fluctuation_probe,
    run_sweep,
)
from .scenario_io import ScenarioFormatError, load_scenario, parse_scenario, scenario_to_dict

__version__ = "0.1.0"

__all__ = [
    "SigmoidUtility",
    "LogUtility",
    "UtilityFunction",
    "sigmoid_from_qoe",
    "SolverConfig",
    "NoRootError",
    "solve_user_rate",
    "grid_oracle",
    "AllocationConfig",
    "AllocationResult",
    "IterationRecord",
    "DecayPolicy",
    "ExponentialDecay",
    "RationalDecay",
    "CONVERGED",
    "ITERATION_CAP",
    "compute_shadow_price",
    "user_respond",
    "apply_decay",
    "check_convergence",
    "run_allocation",
    "Scenario",
    "SweepResult",
    "SweepError",
    "FluctuationReport",
    "canonical_scenario",
    "run_sweep",
    "fluctuation_probe",
    "find_nonconvergent_rate",
    "ScenarioFormatError",
    "parse_scenario",
    "load_scenario",
    "scenario_to_dict",
    "__version__",
]
