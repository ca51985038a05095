"""Exhaustive optimum oracle for ``max f(S) s.t. w(S) <= C``.

``f*`` is a nondecreasing step function of the capacity whose jumps sit at
subset weights, so it is tabulated once per instance on the finite set of
distinct subset weights (the breakpoints).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .objective import (
    EPS,
    Instance,
    InputError,
    dual_solution,
    evaluate,
    members,
    subset_values,
    subset_weights,
)


@dataclass(frozen=True)
class OptimumPoint:
    capacity: float
    value: float
    set: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class BreakpointTable:
    """Distinct subset weights ``capacities`` (ascending, starting at 0) with ``f*`` at each."""

    capacities: np.ndarray
    values: np.ndarray

    def __len__(self) -> int:
        return self.capacities.size

    def fstar(self, C: float) -> float:
        """Optimum value for capacity ``C``: f* at the largest breakpoint <= C."""
        i = int(np.searchsorted(self.capacities, C + EPS, side="right")) - 1
        return float(self.values[i]) if i >= 0 else 0.0

    def to_csv(self) -> str:
        lines = ["capacity,optimum_value"]
        lines += [f"{c:.17g},{v:.17g}" for c, v in zip(self.capacities, self.values)]
        return "\n".join(lines) + "\n"


def breakpoints(instance: Instance) -> BreakpointTable:
    cache = instance.__dict__.setdefault("_cache", {})
    if "breakpoints" in cache:
        return cache["breakpoints"]
    W = subset_weights(instance)
    V = subset_values(instance)
    order = np.argsort(W, kind="stable")
    w_sorted = W[order]
    best = np.maximum.accumulate(V[order])
    # group weights that agree to within EPS of the group's smallest member
    caps, vals = [], []
    start = 0
    n = w_sorted.size
    while start < n:
        end = int(np.searchsorted(w_sorted, w_sorted[start] + EPS, side="right"))
        caps.append(w_sorted[start])
        vals.append(best[end - 1])
        start = end
    table = BreakpointTable(np.array(caps), np.array(vals))
    table.capacities.setflags(write=False)
    table.values.setflags(write=False)
    cache["breakpoints"] = table
    return table


def optimum(instance: Instance, C: float) -> OptimumPoint:
    """A canonical optimum set for capacity ``C``.

    Ties are broken by maximum value, then minimum total weight, then the
    lexicographically smallest sorted index tuple.
    """
    if C < 0:
        raise InputError(f"capacity must be nonnegative, got {C}")
    W = subset_weights(instance)
    V = subset_values(instance)
    feasible = W <= C + EPS
    best = V[feasible].max()
    cand = np.flatnonzero(feasible & (V >= best - EPS))
    lightest = W[cand].min()
    cand = cand[W[cand] <= lightest + EPS]
    chosen = min(members(int(mask)) for mask in cand)
    return OptimumPoint(capacity=float(C), value=evaluate(instance, chosen), set=chosen)


def ordered_optimum(instance: Instance, C_prime: float) -> tuple[int, ...]:
    """The optimum set for ``C_prime`` sorted by nonincreasing dual density gamma/w.

    Ties go to the larger dual value, then to the lower element index.
    """
    S = optimum(instance, C_prime).set
    if not S:
        return ()
    cert = dual_solution(instance, S)
    w = instance.weights
    key = {e: (-g / w[e], -g, e) for e, g in zip(cert.subset, cert.gamma)}
    return tuple(sorted(S, key=key.__getitem__))


def prefix_set(instance: Instance, C_prime: float, C: float) -> tuple[int, ...]:
    """Longest density-ordered prefix of the ``C_prime`` optimum that fits in ``C``."""
    if C < 0:
        raise InputError(f"capacity must be nonnegative, got {C}")
    if C > C_prime + EPS:
        raise InputError(f"prefix capacity {C} exceeds the optimum's capacity {C_prime}")
    out = []
    load = 0.0
    for e in ordered_optimum(instance, C_prime):
        load += instance.weights[e]
        if load > C + EPS:
            break
        out.append(e)
    return tuple(out)
