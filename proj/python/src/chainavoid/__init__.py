"""Colored chain-avoidance toolkit for the Boolean lattice."""

from chainavoid._core import (
    BudgetError,
    CounterexampleError,
    PreconditionError,
    best_anchor,
    big_l,
    containers_union_bound,
    expectation_exponent,
    layered_omega,
    mu_valid,
    omega_crit,
    sparsity,
    supersat_constants,
)

__all__ = [
    "BudgetError",
    "CounterexampleError",
    "PreconditionError",
    "best_anchor",
    "big_l",
    "containers_union_bound",
    "expectation_exponent",
    "layered_omega",
    "mu_valid",
    "omega_crit",
    "sparsity",
    "supersat_constants",
]
