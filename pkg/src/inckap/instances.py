"""Built-in lower-bound instances and seeded random generators.

All randomness comes from :class:`SplitMix64`, a 64-bit generator fully
specified by three constants, so a seed reproduces the same instance in any
implementation that follows the documented draw order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .objective import Instance, InputError, make_instance

_MASK = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea & Flood).

    state += 0x9E3779B97F4A7C15; z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output z ^ (z >> 31)                      (all arithmetic mod 2**64)

    ``random()`` maps the top 53 bits to [0, 1); ``below(n)`` is ``u64 % n``.
    """

    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def below(self, n: int) -> int:
        return self.next_u64() % n


def gen_m_bound(M: float) -> Instance:
    """Two elements of weight 1 and 2 with modular values 1 and ``M``."""
    if not M >= 1:
        raise InputError(f"M must be at least 1, got {M}")
    return make_instance([1.0, 2.0], [[1.0, float(M)]])


def gen_sqrt6() -> Instance:
    """Ten unit-valued elements on which no ordering beats sqrt(6).

    Group sizes 1, 3, 6 with weights 101, 102, 103.  Clauses: the indicator
    of each group (the middle one scaled by sqrt(6)/3) plus a singleton
    clause for each middle-group element.
    """
    weights = [101.0] + [102.0] * 3 + [103.0] * 6
    g1 = np.array([1.0] + [0.0] * 9)
    g2 = np.array([0.0, 1.0, 1.0, 1.0] + [0.0] * 6)
    g3 = np.array([0.0] * 4 + [1.0] * 6)
    rows = [g1, math.sqrt(6) / 3 * g2, g3]
    for e in (1, 2, 3):
        r = np.zeros(10)
        r[e] = 1.0
        rows.append(r)
    return make_instance(weights, np.array(rows))


def gen_random_xos(m: int, k: int, M: float, seed: int, density: float = 0.5) -> Instance:
    """Random XOS instance with weights in [1, 10] and singleton values in [1, M].

    Draw order: ``m`` weights; then the clause matrix row by row, one coin
    per entry (nonzero when ``random() < density``) followed by a value in
    [0, M] for nonzero entries; then one target singleton value in [1, M]
    per element.  Each column is rescaled so its maximum equals the target;
    an all-zero column gets the target in clause ``below(k)``.
    """
    if m < 1 or k < 1:
        raise InputError("need m >= 1 and k >= 1")
    if not M >= 1:
        raise InputError(f"M must be at least 1, got {M}")
    rng = SplitMix64(seed)
    weights = [rng.uniform(1.0, 10.0) for _ in range(m)]
    clauses = np.zeros((k, m))
    for i in range(k):
        for e in range(m):
            if rng.random() < density:
                clauses[i, e] = rng.uniform(0.0, M)
    targets = [rng.uniform(1.0, M) for _ in range(m)]
    for e in range(m):
        top = clauses[:, e].max()
        if top > 0:
            clauses[:, e] *= targets[e] / top
        else:
            clauses[rng.below(k), e] = targets[e]
    return make_instance(weights, clauses)


def coverage_value(sets: Sequence[Sequence[int]], S, item_values=None) -> float:
    covered = set()
    for x in S:
        covered.update(sets[x])
    if item_values is None:
        return float(len(covered))
    return float(sum(item_values[u] for u in covered))


COVERAGE_LIMIT = 12


def coverage_instance(sets: Sequence[Sequence[int]], weights=None, item_values=None) -> Instance:
    """Exact XOS encoding of the coverage function ``S -> v(union of S)``.

    One clause per nonempty family T of sets: every item covered by T is
    credited to the lowest-indexed set of T containing it.  Each clause
    underestimates coverage, and the clause for ``T = S`` is exact on S.
    Exponential in the number of sets; meant for small test instances.
    """
    m = len(sets)
    if m < 1:
        raise InputError("need at least one set")
    if m > 14:
        raise InputError(f"coverage compilation supports at most 14 sets, got {m}")
    items = sorted({u for X in sets for u in X})
    if len(items) > COVERAGE_LIMIT:
        raise InputError(f"coverage compilation supports a universe of at most {COVERAGE_LIMIT} items")
    value = (lambda u: 1.0) if item_values is None else (lambda u: float(item_values[u]))
    owners = {u: [x for x in range(m) if u in set(sets[x])] for u in items}
    rows = []
    for T in range(1, 1 << m):
        row = np.zeros(m)
        for u, xs in owners.items():
            for x in xs:
                if T >> x & 1:
                    row[x] += value(u)
                    break
        rows.append(row)
    clauses = np.unique(np.array(rows), axis=0)
    if weights is None:
        weights = np.ones(m)
    return make_instance(weights, clauses)


def gen_coverage(universe_size: int, m: int, seed: int) -> tuple[Instance, list[list[int]]]:
    """Random coverage instance over ``universe_size`` unit-value items.

    Draw order: ``m`` weights in [1, 10]; then per set one coin per item
    (included when ``random() < 0.5``), and for an empty set one extra
    ``below(universe_size)`` draw.  Returns the compiled instance and the sets.
    """
    if not 1 <= universe_size <= COVERAGE_LIMIT:
        raise InputError(f"universe size must be in [1, {COVERAGE_LIMIT}]")
    rng = SplitMix64(seed)
    weights = [rng.uniform(1.0, 10.0) for _ in range(m)]
    sets = []
    for _ in range(m):
        X = [u for u in range(universe_size) if rng.random() < 0.5]
        if not X:
            X = [rng.below(universe_size)]
        sets.append(X)
    return coverage_instance(sets, weights), sets


@dataclass(frozen=True)
class GeneratorConfig:
    kind: str
    seed: int = 0
    m: int = 6
    k: int = 3
    M: float = 1.0
    universe_size: int = 6


def generate(config: GeneratorConfig) -> Instance:
    if config.kind == "m_bound":
        return gen_m_bound(config.M)
    if config.kind == "sqrt6":
        return gen_sqrt6()
    if config.kind == "random_xos":
        return gen_random_xos(config.m, config.k, config.M, config.seed)
    if config.kind == "coverage":
        return gen_coverage(config.universe_size, config.m, config.seed)[0]
    raise InputError(f"unknown generator kind {config.kind!r}")
