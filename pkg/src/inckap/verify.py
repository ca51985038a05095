"""Reproducible certification checks for the library's guarantees.

Each ``check_*`` function runs one exhaustive or randomized certification
and returns a :class:`Check` carrying the measured and expected values.
``SUITES`` groups them the way ``inckap verify`` exposes them.
"""
from __future__ import annotations

import functools
import inspect
import math
import time
from dataclasses import dataclass
from itertools import combinations

from .algscale import build_ordering, compute_constants, polynomial_residual
from .evaluator import best_ordering, competitive_ratio
from .flows import (
    best_flow_ordering,
    fig1_graph,
    flow_ratio,
    gen_random_graph,
    gen_random_potential,
    batch_bound_violations,
    max_flow,
    min_edges_exhaustive,
    min_edges_for_value,
    potential_eval_oracle,
    potential_to_xos,
    quickest_increment,
)
from .instances import SplitMix64, gen_m_bound, gen_random_xos, gen_sqrt6
from .objective import dual_solution, evaluate, validate, verify_dual_feasible
from .optimum import breakpoints, prefix_set

SQRT6_BOUND = 2.449


@dataclass
class Check:
    name: str
    passed: bool
    measured: str
    expected: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: {self.measured} (expected {self.expected}; {self.seconds:.2f}s)"


def _timed(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        check = fn(*args, **kwargs)
        check.seconds = time.perf_counter() - t0
        return check

    return wrapper


def _random_subset(rng: SplitMix64, pool, nonempty=True):
    while True:
        S = [e for e in pool if rng.random() < 0.5]
        if S or not nonempty or not pool:
            return S


def _sample_instance(s: int, max_m: int = 12):
    M = (1.0, 2.0, 4.0)[s % 3]
    return gen_random_xos(2 + s % (max_m - 1), 1 + s % 4, M, s)


@_timed
def check_constants() -> Check:
    t0 = time.perf_counter()
    reps = 20
    for _ in range(reps):
        c = compute_constants()
    per_call = (time.perf_counter() - t0) / reps
    res = abs(polynomial_residual(c.lam))
    ok = res <= 1e-12 and 3.2923 < c.lam < 3.2925 and 3.0142 < c.delta < 3.0144 and per_call < 1e-3
    return Check(
        "constants",
        ok,
        f"lambda={c.lam:.12f} |p(lambda)|={res:.2e} delta={c.delta:.12f} {per_call * 1e3:.3f} ms/call",
        "residual <= 1e-12, lambda in (3.2923, 3.2925), delta in (3.0142, 3.0144), < 1 ms",
    )


@_timed
def check_upper_bound(n_per_M: int = 100, seed: int = 0) -> Check:
    c = compute_constants()
    worst = 0.0
    failures = []
    for M in (1.0, 2.0, 4.0, 8.0):
        for s in range(n_per_M):
            inst = gen_random_xos(2 + s % 11, 1 + s % 4, M, seed + 1000 * int(M) + s)
            r = competitive_ratio(inst, build_ordering(inst)).overall
            rho = c.rho(inst.M)
            worst = max(worst, r / rho)
            if r > rho + 1e-6:
                failures.append((M, s, r, rho))
    return Check(
        f"upper bound rho(M) on {4 * n_per_M} random instances",
        not failures,
        f"max ratio/rho = {worst:.4f}, violations = {len(failures)}",
        "ratio <= rho(M) + 1e-6 everywhere",
    )


@_timed
def check_m_lower_bound() -> Check:
    got = {M: best_ordering(gen_m_bound(M))[1] for M in (1.0, 2.0, 4.0)}
    ok = all(abs(r - M) <= 1e-9 for M, r in got.items())
    return Check(
        "M lower bound instance",
        ok,
        ", ".join(f"M={M:g}: best ratio {r:.12g}" for M, r in got.items()),
        "best ratio = M +- 1e-9",
    )


@_timed
def check_sqrt6_lower_bound() -> Check:
    ordering, r = best_ordering(gen_sqrt6())
    return Check(
        "sqrt6 lower bound instance",
        r >= SQRT6_BOUND,
        f"best ratio {r:.12f} achieved by {[e + 1 for e in ordering.order]}",
        f">= {SQRT6_BOUND}",
    )


@_timed
def check_dual_subset_bound(n: int = 200, seed: int = 0) -> Check:
    worst = -math.inf
    for s in range(n):
        inst = _sample_instance(seed + s)
        rng = SplitMix64(seed + s)
        Y = _random_subset(rng, range(inst.m))
        X = _random_subset(rng, Y, nonempty=False)
        cert = dual_solution(inst, Y)
        g = dict(zip(cert.subset, cert.gamma))
        worst = max(worst, sum(g[e] for e in X) - evaluate(inst, X))
    return Check(
        f"subset consistency of duals ({n} samples)",
        worst <= 1e-6,
        f"max sum(gamma_Y over X) - f(X) = {worst:.3e}",
        "<= 1e-6",
    )


def _capacity_pair(rng: SplitMix64, total: float) -> tuple[float, float]:
    C_prime = total * (1.0 - rng.random())
    C = C_prime * (1.0 - rng.random())
    return C, C_prime


@_timed
def check_prefix_bound(n: int = 200, seed: int = 0) -> Check:
    worst = -math.inf
    for s in range(n):
        inst = _sample_instance(seed + s, max_m=10)
        rng = SplitMix64(seed + 7919 * (s + 1))
        C, Cp = _capacity_pair(rng, inst.total_weight)
        lhs = breakpoints(inst).fstar(Cp)
        rhs = Cp / C * (evaluate(inst, prefix_set(inst, Cp, C)) + inst.M)
        worst = max(worst, lhs - rhs)
    return Check(
        f"density-prefix bound ({n} samples)",
        worst <= 1e-6,
        f"max f*(C') - (C'/C)(f(prefix) + M) = {worst:.3e}",
        "<= 1e-6",
    )


@_timed
def check_growth_bound(n: int = 200, seed: int = 0) -> Check:
    worst = -math.inf
    for s in range(n):
        inst = _sample_instance(seed + s, max_m=10)
        rng = SplitMix64(seed + 104729 * (s + 1))
        C, Cp = _capacity_pair(rng, inst.total_weight)
        table = breakpoints(inst)
        worst = max(worst, table.fstar(Cp) - Cp / C * (table.fstar(C) + inst.M))
    return Check(
        f"optimum growth bound ({n} samples)",
        worst <= 1e-6,
        f"max f*(C') - (C'/C)(f*(C) + M) = {worst:.3e}",
        "<= 1e-6",
    )


@_timed
def check_dual_certificates(n: int = 100, seed: int = 0) -> Check:
    failures = 0
    for s in range(n):
        inst = _sample_instance(seed + 31 * s)
        X = _random_subset(SplitMix64(seed + s), range(inst.m))
        cert = dual_solution(inst, X)
        if abs(cert.total() - evaluate(inst, X)) > 1e-9 or not verify_dual_feasible(inst, cert):
            failures += 1
    return Check(
        f"dual certificates ({n} pairs)",
        failures == 0,
        f"{n - failures}/{n} certificates exact and feasible",
        f"{n}/{n}",
    )


def _dag_sample(s: int):
    n = 3 + s % 8
    m = min(20, n * (n - 1) // 2, 3 + (7 * s) % 18)
    return gen_random_graph(n, m, s)


@_timed
def check_flow_upper_bound(n: int = 50, seed: int = 0) -> Check:
    graphs = [fig1_graph()] + [_dag_sample(seed + s) for s in range(n)]
    worst, bad_batches = 0.0, 0
    for fi in graphs:
        trace = quickest_increment(fi)
        worst = max(worst, flow_ratio(fi, trace.order).overall)
        bad_batches += bool(batch_bound_violations(trace))
    return Check(
        f"Quickest-Increment ratio on {len(graphs)} graphs",
        worst <= 2 + 1e-9 and bad_batches == 0,
        f"max ratio {worst:.6g}, traces violating batch bound: {bad_batches}",
        "ratio <= 2 + 1e-9, no batch-bound violations",
    )


@_timed
def check_flow_lower_bound() -> Check:
    order, r = best_flow_ordering(fig1_graph())
    return Check(
        "best edge ordering on the two-path graph",
        abs(r - 2) <= 1e-9,
        f"best ratio {r:g} via edge order {list(order)}",
        "exactly 2",
    )


@_timed
def check_potential_xos(n: int = 50, seed: int = 0) -> Check:
    worst, invalid = 0.0, 0
    for s in range(n):
        psi = ("identity", "quadratic")[s % 2]
        pi = gen_random_potential(1 + s % 8, 1.0 + (s % 4), psi, seed + s)
        inst = potential_to_xos(pi)
        invalid += not validate(inst).ok
        for size in range(pi.n_edges + 1):
            for S in combinations(range(pi.n_edges), size):
                worst = max(worst, abs(evaluate(inst, S) - potential_eval_oracle(pi, S)))
    return Check(
        f"potential flows as XOS ({n} instances)",
        worst <= 1e-9 and invalid == 0,
        f"max |xos - oracle| = {worst:.2e}, invalid instances: {invalid}",
        "<= 1e-9 on every subset, all valid",
    )


@_timed
def check_min_edges_oracle(n: int = 20, seed: int = 0) -> Check:
    mismatches, compared = 0, 0
    for s in range(n):
        nv = 3 + s % 5
        acyclic = s % 2 == 0
        cap = nv * (nv - 1) // (2 if acyclic else 1)
        fi = gen_random_graph(nv, min(12, cap, 4 + s % 9), seed + s, acyclic=acyclic)
        for j in range(1, max_flow(fi, range(fi.n_edges)) + 1):
            compared += 1
            mismatches += min_edges_for_value(fi, j) != min_edges_exhaustive(fi, j)
    return Check(
        f"min-cost-flow edge counts vs exhaustive ({n} graphs)",
        mismatches == 0,
        f"{compared - mismatches}/{compared} flow values agree",
        "all agree",
    )


SUITES = {
    "paperbounds": [check_constants, check_upper_bound, check_m_lower_bound, check_sqrt6_lower_bound],
    "lemmas": [check_dual_subset_bound, check_prefix_bound, check_growth_bound, check_dual_certificates],
    "flows": [
        check_flow_upper_bound,
        check_flow_lower_bound,
        check_potential_xos,
        check_min_edges_oracle,
    ],
}


def run_suite(name: str, seed: int = 0) -> list[Check]:
    if name == "all":
        return [c for suite in SUITES for c in run_suite(suite, seed)]
    out = []
    for fn in SUITES[name]:
        kwargs = {"seed": seed} if "seed" in inspect.signature(fn).parameters else {}
        out.append(fn(**kwargs))
    return out
