"""Capacity- and value-scaling construction of an incremental ordering.

The ordering is assembled phase by phase.  Phase capacities grow at least
geometrically (factor ``delta``) and their optimum values by a factor
``rho(M)``; each phase appends the optimum set of its capacity, in an order
driven by the dual certificate of that set.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .objective import EPS, Instance, InputError, as_indices, evaluate, validate
from .optimum import breakpoints, optimum, ordered_optimum

# lam**7 - 2 lam**6 - 3 lam**5 - 3 lam**4 - 3 lam**3 - 2 lam**2 - lam - 1
SCALING_POLY = (1, -2, -3, -3, -3, -2, -1, -1)


def scaling_polynomial(x: float) -> float:
    acc = 0.0
    for c in SCALING_POLY:
        acc = acc * x + c
    return acc


def polynomial_residual(x: float) -> float:
    """Residual of the scaling polynomial at the double ``x``, evaluated exactly."""
    q = Fraction(x)
    acc = Fraction(0)
    for c in SCALING_POLY:
        acc = acc * q + c
    return float(acc)


@dataclass(frozen=True)
class Constants:
    lam: float
    delta: float

    def rho(self, M: float) -> float:
        return max(self.lam * math.sqrt(M), 2.0 * M)


def compute_constants() -> Constants:
    lam = brentq(scaling_polynomial, 3.0, 4.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return Constants(lam=lam, delta=lam**3 / (lam**2 + 1))


@dataclass(frozen=True)
class PhaseSchedule:
    capacities: tuple[float, ...]
    targets: tuple[tuple[int, ...], ...]
    values: tuple[float, ...]
    rho: float
    delta: float

    @property
    def N(self) -> int:
        return len(self.capacities)


def _require_valid(instance: Instance) -> None:
    report = validate(instance)
    if not report.ok:
        raise InputError("invalid instance: " + "; ".join(report.violations))


def phase_schedule(instance: Instance, constants: Constants | None = None) -> PhaseSchedule:
    _require_valid(instance)
    consts = constants or compute_constants()
    rho = consts.rho(instance.M)
    table = breakpoints(instance)
    total = instance.total_weight

    caps = [float(instance.weights.min())]
    while caps[-1] < total - EPS:
        lower = consts.delta * caps[-1]
        need = rho * table.fstar(caps[-1]) - EPS
        nxt = total
        if lower < total - EPS:
            # f* only jumps at subset weights, so the minimum is attained
            # at delta*C_prev or at a later breakpoint
            if table.fstar(lower) >= need:
                nxt = lower
            else:
                later = table.capacities > lower
                hits = np.flatnonzero(later & (table.values >= need))
                if hits.size:
                    nxt = float(table.capacities[hits[0]])
        if nxt >= total - EPS:
            caps.append(total)
            break
        caps.append(nxt)

    targets, values = [], []
    for C in caps:
        point = optimum(instance, C)
        targets.append(point.set)
        values.append(point.value)
    return PhaseSchedule(tuple(caps), tuple(targets), tuple(values), rho, consts.delta)


@dataclass(frozen=True, eq=False)
class IncrementalOrdering:
    order: tuple[int, ...]
    prefix_weights: np.ndarray
    prefix_values: np.ndarray
    schedule: PhaseSchedule | None = None

    def to_json(self, instance: Instance) -> str:
        ids = instance.element_ids
        doc = {"order": [ids[e] for e in self.order], "phases": []}
        if self.schedule is not None:
            doc["phases"] = [
                {"capacity": float(C), "target": [ids[e] for e in target]}
                for C, target in zip(self.schedule.capacities, self.schedule.targets)
            ]
        return json.dumps(doc, indent=2) + "\n"


def make_ordering(
    instance: Instance, order: Sequence[int], schedule: PhaseSchedule | None = None
) -> IncrementalOrdering:
    """Wrap a permutation of the ground set with its prefix weights and values."""
    order = tuple(int(e) for e in order)
    if len(order) != instance.m or as_indices(instance, order) != tuple(range(instance.m)):
        raise InputError("ordering must be a permutation of the ground set")
    pw = np.cumsum(instance.weights[list(order)])
    pv = np.array([evaluate(instance, order[: j + 1]) for j in range(len(order))])
    return IncrementalOrdering(order, pw, pv, schedule)


def build_ordering(instance: Instance, constants: Constants | None = None) -> IncrementalOrdering:
    schedule = phase_schedule(instance, constants)
    single = instance.singleton_values
    w = instance.weights
    placed: list[int] = []
    seen: set[int] = set()

    def place(elements):
        for e in elements:
            if e not in seen:
                seen.add(e)
                placed.append(e)

    for i, (C, target) in enumerate(zip(schedule.capacities, schedule.targets), start=1):
        if i == 1:
            place(target)
        elif i == 2:
            # highest singleton value first: the phase-2 guarantee depends on it
            first = min(target, key=lambda e: (-single[e], -w[e], e))
            place([first])
            place(sorted(target))
        else:
            place(ordered_optimum(instance, C))

    rest = [e for e in range(instance.m) if e not in seen]
    place(sorted(rest, key=lambda e: (-single[e] / w[e], e)))
    return make_ordering(instance, placed, schedule)
