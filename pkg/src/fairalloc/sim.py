"""Scenario harness: named user populations and sweeps over the cell rate.

A Scenario bundles an ordered user population (id, utility) with the
list of total rates to evaluate and the loop configuration. Runs are
independent per rate value (no warm starting), so any single point of a
sweep can be reproduced in isolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .protocol import (
    AllocationConfig,
    AllocationResult,
    ExponentialDecay,
    run_allocation,
)
from .utility import LogUtility, SigmoidUtility, UtilityFunction

__all__ = [
    "Scenario",
    "SweepResult",
    "FluctuationReport",
    "SweepError",
    "canonical_scenario",
    "run_sweep",
    "fluctuation_probe",
    "find_nonconvergent_rate",
]


class SweepError(RuntimeError):
    """An allocation inside a sweep failed; carries the offending rate value."""

    def __init__(self, total_rate: float, cause: Exception):
        super().__init__(f"allocation failed at R={total_rate!r}: {cause}")
        self.total_rate = total_rate


@dataclass(frozen=True)
class Scenario:
    name: str
    users: tuple[tuple[str, UtilityFunction], ...]
    r_values: tuple[float, ...]
    config: AllocationConfig = field(default_factory=AllocationConfig)

    def __post_init__(self):
        object.__setattr__(self, "users", tuple((str(i), u) for i, u in self.users))
        object.__setattr__(self, "r_values", tuple(float(r) for r in self.r_values))
        if not self.users:
            raise ValueError("scenario needs at least one user")
        ids = [i for i, _ in self.users]
        if len(set(ids)) != len(ids):
            raise ValueError(f"user ids must be unique, got {ids}")
        for i, u in self.users:
            if not isinstance(u, (SigmoidUtility, LogUtility)):
                raise ValueError(f"user {i!r}: not a utility function: {u!r}")
        if not self.r_values:
            raise ValueError("r_values must be nonempty")
        if self.r_values[0] <= 0.0:
            raise ValueError("r_values must be positive")
        if any(b <= a for a, b in zip(self.r_values, self.r_values[1:])):
            raise ValueError(f"r_values must be strictly ascending, got {self.r_values}")

    @property
    def utilities(self) -> tuple[UtilityFunction, ...]:
        return tuple(u for _, u in self.users)

    @property
    def user_ids(self) -> tuple[str, ...]:
        return tuple(i for i, _ in self.users)


@dataclass(frozen=True)
class SweepResult:
    scenario: Scenario
    results: dict[float, AllocationResult]


@dataclass(frozen=True)
class FluctuationReport:
    converged_plain: bool
    converged_robust: bool
    max_late_oscillation: float


def canonical_scenario(r_values=None, config: AllocationConfig | None = None) -> Scenario:
    """The six-user reference population: three sigmoid, three logarithmic.

    Sig1 a=5, b=10 (a near step at rate 10, VoIP-like), Sig2 a=3, b=20
    (SD video), Sig3 a=1, b=30 (HD video), and Log1/2/3 with
    k = 15, 3, 0.5, all reaching full satisfaction at rate 100 (file
    transfer at varying impatience). Default sweep: R = 5, 10, ..., 100.
    """
    if r_values is None:
        r_values = tuple(float(r) for r in range(5, 101, 5))
    return Scenario(
        name="canonical-six-user",
        users=(
            ("Sig1", SigmoidUtility(a=5.0, b=10.0)),
            ("Sig2", SigmoidUtility(a=3.0, b=20.0)),
            ("Sig3", SigmoidUtility(a=1.0, b=30.0)),
            ("Log1", LogUtility(k=15.0, r_max=100.0)),
            ("Log2", LogUtility(k=3.0, r_max=100.0)),
            ("Log3", LogUtility(k=0.5, r_max=100.0)),
        ),
        r_values=tuple(r_values),
        config=config if config is not None else AllocationConfig(),
    )


def run_sweep(scenario: Scenario) -> SweepResult:
    """One independent allocation per rate value, in ascending order."""
    results: dict[float, AllocationResult] = {}
    for r in scenario.r_values:
        try:
            results[r] = run_allocation(scenario.utilities, r, scenario.config)
        except (ValueError, RuntimeError) as exc:
            raise SweepError(r, exc) from exc
    return SweepResult(scenario=scenario, results=results)


def _late_oscillation(result: AllocationResult) -> float:
    """Largest max-norm bid step over the last tenth of a run's rounds."""
    traj = result.trajectory
    if len(traj) < 2:
        return 0.0
    steps = [
        max(abs(w1 - w0) for w0, w1 in zip(a.bids, b.bids))
        for a, b in zip(traj, traj[1:])
    ]
    window = max(1, len(steps) // 10)
    return max(steps[-window:])


def fluctuation_probe(scenario: Scenario, total_rate: float) -> FluctuationReport:
    """Run one rate point twice, undamped and with the exponential envelope.

    Reports whether each variant settled, plus the largest late bid step
    of the undamped run (well above delta exactly when the bids locked
    into a cycle instead of settling).
    """
    if total_rate <= 0.0:
        raise ValueError(f"total rate must be positive, got {total_rate}")
    plain_cfg = replace(scenario.config, decay=None)
    robust_cfg = replace(scenario.config, decay=ExponentialDecay(l1=5.0, l2=10.0))
    plain = run_allocation(scenario.utilities, total_rate, plain_cfg)
    robust = run_allocation(scenario.utilities, total_rate, robust_cfg)
    return FluctuationReport(
        converged_plain=plain.converged,
        converged_robust=robust.converged,
        max_late_oscillation=_late_oscillation(plain),
    )


def find_nonconvergent_rate(
    scenario: Scenario,
    start: float = 100.0,
    step: float = 100.0,
    limit: float = 10_000.0,
) -> float | None:
    """First rate in start, start+step, ... <= limit where the undamped loop hits its cap.

    Returns None when every probed rate converges. For populations whose
    sigmoid users sum their inflection rates to B, the undamped loop is
    empirically a contraction for R well above B, so upward searches
    typically exhaust the limit; the cycling region sits at R < B where
    one sigmoid user is marginal.
    """
    plain_cfg = replace(scenario.config, decay=None)
    r = float(start)
    while r <= limit:
        if not run_allocation(scenario.utilities, r, plain_cfg).converged:
            return r
        r += step
    return None
