"""Per-user optimal rate for a given shadow price.

A user charged price p per unit rate maximizes log U(r) - p*r. The
log-utility slope is strictly decreasing, so the maximizer is the
unique root of

    d/dr log U(r) = p

found here by bisection. Bisection is deterministic and keeps working
through the nearly flat stretch a sigmoid's log-slope develops below
its inflection, where faster secant-style updates stall.

Boundary handling:

* price above the slope at the lower bracket: the user can afford
  essentially nothing, so the rate pins to ``bracket_lo`` (returned
  exactly, which is how callers recognize a pinned user);
* price below the slope at the upper bracket: the bracket doubles
  until it encloses the root, up to ``hi_cap``; running past the cap
  raises NoRootError, which signals a pathologically small price.

``grid_oracle`` is the brute-force cross-check used by the tests: it
scans an explicit rate grid for the best objective value and never
touches the derivative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .utility import UtilityFunction

__all__ = ["SolverConfig", "NoRootError", "solve_user_rate", "grid_oracle"]


class NoRootError(RuntimeError):
    """Raised when bracket expansion exceeds the hard cap without enclosing a root."""


@dataclass(frozen=True)
class SolverConfig:
    bracket_lo: float = 1e-3
    bracket_hi: float = 1e3
    hi_cap: float = 1e9
    rel_tol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self):
        if not 0.0 < self.bracket_lo < self.bracket_hi <= self.hi_cap:
            raise ValueError(
                f"need 0 < bracket_lo < bracket_hi <= hi_cap, got "
                f"({self.bracket_lo}, {self.bracket_hi}, {self.hi_cap})"
            )
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError(f"rel_tol must be in (0, 1), got {self.rel_tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


_DEFAULT = SolverConfig()


def solve_user_rate(u: UtilityFunction, price: float, config: SolverConfig = _DEFAULT) -> float:
    """Rate maximizing log U(r) - price*r, via bisection on the log-slope.

    Maintains the bracket invariant log_slope(lo) >= price >= log_slope(hi)
    and stops once the bracket width falls below rel_tol of its midpoint.
    Identical inputs give bit-identical results.
    """
    if price <= 0.0 or not np.isfinite(price):
        raise ValueError(f"price must be positive and finite, got {price}")
    lo = config.bracket_lo
    hi = config.bracket_hi
    if u.log_slope(lo) < price:
        return lo  # pinned: even the smallest tradable rate is too expensive
    while u.log_slope(hi) > price:
        hi *= 2.0
        if hi > config.hi_cap:
            raise NoRootError(
                f"log-slope still above price {price} at rate {config.hi_cap}; "
                "price too small to meet within the bracket cap"
            )
    for _ in range(config.max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= config.rel_tol * mid:
            break
        if u.log_slope(mid) >= price:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def grid_oracle(u: UtilityFunction, price: float, r_grid) -> float:
    """Grid point maximizing log U(r) - price*r by exhaustive scan.

    The grid must be nonempty, strictly ascending and entirely positive.
    Rates where U underflows to zero score -inf and can never win.
    """
    if price <= 0.0 or not np.isfinite(price):
        raise ValueError(f"price must be positive and finite, got {price}")
    grid = np.asarray(r_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("r_grid must be a nonempty 1-d array")
    if grid[0] <= 0.0 or np.any(np.diff(grid) <= 0.0):
        raise ValueError("r_grid must be strictly ascending and positive")
    with np.errstate(divide="ignore"):
        objective = np.log(u.value(grid)) - price * grid
    return float(grid[int(np.argmax(objective))])
