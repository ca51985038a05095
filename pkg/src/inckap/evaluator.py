"""Competitive ratios of incremental orderings, and exhaustive search for the best one.

Both ``f*`` and the value of the capacity-``C`` prefix of an ordering are
right-continuous step functions whose jumps occur at subset weights.  The
supremum of their ratio over ``C > 0`` is therefore attained on the finite
breakpoint set, which is where everything here is evaluated.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .algscale import IncrementalOrdering, build_ordering, make_ordering
from .objective import EPS, CapabilityError, Instance, InputError, evaluate, subset_values, validate
from .optimum import breakpoints

log = logging.getLogger(__name__)

SEARCH_LIMIT = 10
_TIE = 1e-12


def ratio(opt, alg):
    """Elementwise ``opt / alg`` with 0/0 -> 1 and x/0 -> inf."""
    opt = np.asarray(opt, dtype=float)
    alg = np.asarray(alg, dtype=float)
    out = np.ones(np.broadcast(opt, alg).shape)
    pos = alg > 0
    np.divide(opt, alg, out=out, where=pos)
    out[(~pos) & (opt > EPS)] = np.inf
    return out


@dataclass(frozen=True, eq=False)
class RatioCurve:
    capacities: np.ndarray
    opt: np.ndarray
    alg: np.ndarray
    ratios: np.ndarray

    @property
    def overall(self) -> float:
        return float(self.ratios.max()) if self.ratios.size else 1.0

    @property
    def worst_capacity(self) -> float:
        return float(self.capacities[int(np.argmax(self.ratios))])

    def rows(self):
        return list(zip(self.capacities.tolist(), self.opt.tolist(), self.alg.tolist(), self.ratios.tolist()))

    def to_csv(self, label: str = "capacity", skip_empty: bool = True) -> str:
        """CSV with header ``<label>,opt,alg,ratio``; rows where ``f* = 0`` are dropped by default."""
        lines = [f"{label},opt,alg,ratio"]
        for c, o, a, r in self.rows():
            if skip_empty and o <= EPS:
                continue
            lines.append(f"{_fmt(c)},{_fmt(o)},{_fmt(a)},{_fmt(r)}")
        return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    return "inf" if np.isinf(x) else format(float(x), ".17g")


def _as_ordering(instance: Instance, ordering) -> IncrementalOrdering:
    if isinstance(ordering, IncrementalOrdering):
        return ordering
    return make_ordering(instance, ordering)


def prefix_value(instance: Instance, ordering, C: float) -> float:
    """Value of the longest prefix of ``ordering`` whose weight is at most ``C``."""
    if C < 0:
        raise InputError(f"capacity must be nonnegative, got {C}")
    order = ordering.order if isinstance(ordering, IncrementalOrdering) else tuple(ordering)
    load = 0.0
    taken = []
    for e in order:
        load += instance.weights[e]
        if load > C + EPS:
            break
        taken.append(e)
    return evaluate(instance, taken)


def step_curve(caps: np.ndarray, fstar: np.ndarray, prefix_weights, prefix_values) -> RatioCurve:
    j = np.searchsorted(np.asarray(prefix_weights, dtype=float), caps + EPS, side="right")
    alg = np.concatenate([[0.0], np.asarray(prefix_values, dtype=float)])[j]
    return RatioCurve(caps, fstar, alg, ratio(fstar, alg))


def competitive_ratio(instance: Instance, ordering) -> RatioCurve:
    table = breakpoints(instance)
    o = _as_ordering(instance, ordering)
    return step_curve(table.capacities, table.values, o.prefix_weights, o.prefix_values)


def search_orderings(
    weights: np.ndarray,
    value_of_mask: Callable[[int], float],
    caps: np.ndarray,
    fstar: np.ndarray,
    seed_order: Sequence[int],
    seed_ratio: float,
) -> tuple[tuple[int, ...], float]:
    """Depth-first branch and bound over all orderings, minimizing the competitive ratio.

    Children are explored in increasing element index and only strict
    improvements replace the incumbent, so the result is the
    lexicographically smallest optimal ordering.  The seed only provides
    the initial bound.
    """
    n = len(weights)
    weights = [float(x) for x in weights]
    top = float(fstar[-1])

    def seg_ratio(lo: float, hi: float, value: float) -> float:
        # worst ratio over breakpoints C with lo - EPS <= C < hi - EPS
        first = int(np.searchsorted(caps, lo - EPS, side="left"))
        last = int(np.searchsorted(caps, hi - EPS, side="left")) - 1
        if last < first:
            return 1.0
        return float(ratio(fstar[last], value))

    bound_cut = seed_ratio * (1 + 1e-9) + _TIE if np.isfinite(seed_ratio) else np.inf
    best = [bound_cut, None]
    prefix: list[int] = []
    stats = {"nodes": 0}

    def dfs(mask: int, load: float, value: float, worst: float) -> None:
        stats["nodes"] += 1
        if len(prefix) == n:
            final = max(worst, float(ratio(top, value)))
            if final < best[0] - _TIE:
                best[0], best[1] = final, tuple(prefix)
            return
        rest = [e for e in range(n) if not mask >> e & 1]
        lookahead = seg_ratio(load, load + min(weights[e] for e in rest), value)
        if max(worst, lookahead) >= best[0] - _TIE:
            return
        for e in rest:
            step = seg_ratio(load, load + weights[e], value)
            w2 = max(worst, step)
            if w2 >= best[0] - _TIE:
                continue
            prefix.append(e)
            dfs(mask | 1 << e, load + weights[e], value_of_mask(mask | 1 << e), w2)
            prefix.pop()

    dfs(0, 0.0, 0.0, 1.0)
    log.debug("ordering search visited %d nodes", stats["nodes"])
    if best[1] is None:
        return tuple(seed_order), float(seed_ratio)
    return best[1], best[0]


def best_ordering(instance: Instance) -> tuple[IncrementalOrdering, float]:
    """An ordering of minimum competitive ratio, by exhaustive branch and bound (m <= 10)."""
    if instance.m > SEARCH_LIMIT:
        raise CapabilityError(f"best_ordering supports m <= {SEARCH_LIMIT}, instance has m={instance.m}")
    table = breakpoints(instance)
    V = subset_values(instance)

    seeds = [make_ordering(instance, sorted(range(instance.m), key=lambda e: (instance.weights[e], e)))]
    if validate(instance).ok:
        seeds.append(build_ordering(instance))
    seed = min(seeds, key=lambda o: competitive_ratio(instance, o).overall)
    seed_ratio = competitive_ratio(instance, seed).overall

    order, r = search_orderings(
        instance.weights, lambda mask: float(V[mask]), table.capacities, table.values, seed.order, seed_ratio
    )
    ordering = make_ordering(instance, order)
    # report the ratio of the returned ordering as evaluated on the full curve
    return ordering, competitive_ratio(instance, ordering).overall
