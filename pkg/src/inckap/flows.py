"""Incremental s-t flows.

Two settings live here:

* classical unit-capacity, unit-weight s-t flows, built up by
  Quickest-Increment (repeatedly add a fewest-edges set that raises the
  maximum flow by one), with exact competitive certification;
* potential-based flows on parallel s-t edges, compiled to an XOS instance
  with one clause per candidate potential difference.

Augmenting-path max flow and successive-shortest-path min-cost flow are
implemented directly on an edge-indexed residual graph (parallel edges are
allowed).  With unit capacities a min-cost flow whose edges cost 1 (or 0
for already-built edges) uses exactly the fewest new edges that support the
requested flow value, which is what Quickest-Increment needs.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .evaluator import RatioCurve, ratio, search_orderings
from .instances import SplitMix64
from .objective import EPS, CapabilityError, Instance, InputError, make_instance


class InfeasibleError(InputError):
    """The requested flow value cannot be reached."""


@dataclass(frozen=True)
class FlowInstance:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    s: str
    t: str

    def __post_init__(self):
        vertices = tuple(str(v) for v in self.vertices)
        edges = tuple((str(u), str(v)) for u, v in self.edges)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        known = set(vertices)
        if self.s == self.t:
            raise InputError("source and sink must differ")
        if self.s not in known or self.t not in known:
            raise InputError("source and sink must be vertices")
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop at {u}")
            if u not in known or v not in known:
                raise InputError(f"edge ({u}, {v}) has an unknown endpoint")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @classmethod
    def from_edges(cls, edges: Sequence[tuple[str, str]], s: str = "s", t: str = "t") -> "FlowInstance":
        vertices = [s, t]
        for u, v in edges:
            for x in (u, v):
                if x not in vertices:
                    vertices.append(x)
        return cls(tuple(vertices), tuple(edges), s, t)

    @classmethod
    def parse(cls, text: str) -> "FlowInstance":
        """Edge-list text: first line ``s t``, then one ``u v`` pair per line; ``#`` starts a comment."""
        rows = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InputError(f"line {lineno}: expected two names, got {line!r}")
            rows.append(tuple(parts))
        if not rows:
            raise InputError("empty graph file")
        (s, t), edges = rows[0], rows[1:]
        return cls.from_edges(edges, s, t)

    def dump(self) -> str:
        return "\n".join([f"{self.s} {self.t}"] + [f"{u} {v}" for u, v in self.edges]) + "\n"


def fig1_graph() -> FlowInstance:
    """Two disjoint 4-edge s-t paths plus the chord u1 -> v3 (9 edges)."""
    return FlowInstance.from_edges(
        [
            ("s", "u1"), ("u1", "u2"), ("u2", "u3"), ("u3", "t"),
            ("s", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "t"),
            ("u1", "v3"),
        ]
    )


def gen_random_graph(n_vertices: int, n_edges: int, seed: int, acyclic: bool = True) -> FlowInstance:
    """Random simple digraph on ``v0 .. v{n-1}`` with s = v0 and t = v{n-1}.

    Candidate pairs are the forward pairs (i < j) when ``acyclic``, else
    all ordered pairs i != j.  They are shuffled by Fisher-Yates with
    :class:`SplitMix64` and the first ``n_edges`` kept.  If t is then
    unreachable the last kept edge is replaced by (s, t).
    """
    if n_vertices < 2:
        raise InputError("need at least two vertices")
    pairs = [(i, j) for i in range(n_vertices) for j in range(n_vertices) if (i < j if acyclic else i != j)]
    if not 1 <= n_edges <= len(pairs):
        raise InputError(f"n_edges must be in [1, {len(pairs)}]")
    rng = SplitMix64(seed)
    for i in range(len(pairs) - 1, 0, -1):
        j = rng.below(i + 1)
        pairs[i], pairs[j] = pairs[j], pairs[i]
    chosen = pairs[:n_edges]
    names = [f"v{i}" for i in range(n_vertices)]
    fi = FlowInstance(tuple(names), tuple((names[u], names[v]) for u, v in chosen), names[0], names[-1])
    if max_flow(fi, range(fi.n_edges)) == 0:
        chosen[-1] = (0, n_vertices - 1)
        fi = FlowInstance(tuple(names), tuple((names[u], names[v]) for u, v in chosen), names[0], names[-1])
    return fi


# -- residual graph machinery -------------------------------------------------


class _Network:
    """Residual graph of a subset of edges; arc ``2i`` is edge i, arc ``2i+1`` its reverse."""

    def __init__(self, fi: FlowInstance, edge_ids: Iterable[int]):
        self.index = {v: n for n, v in enumerate(fi.vertices)}
        self.n = len(fi.vertices)
        self.edges = fi.edges
        self.s = self.index[fi.s]
        self.t = self.index[fi.t]
        self.active = sorted(set(int(i) for i in edge_ids))
        self.flow = {i: 0 for i in self.active}
        self.out: list[list[int]] = [[] for _ in range(self.n)]
        for i in self.active:
            u, v = (self.index[x] for x in fi.edges[i])
            self.out[u].append(2 * i)
            self.out[v].append(2 * i + 1)

    def head(self, arc: int) -> int:
        u, v = self.edges[arc >> 1]
        return self.index[u if arc & 1 else v]

    def residual(self, arc: int) -> int:
        f = self.flow[arc >> 1]
        return 1 - f if not arc & 1 else f

    def push(self, arcs: Sequence[int]) -> None:
        for a in arcs:
            self.flow[a >> 1] += -1 if a & 1 else 1

    def _path(self, pred: list[int]) -> list[int]:
        arcs = []
        x = self.t
        while x != self.s:
            a = pred[x]
            arcs.append(a)
            x = self.head(a ^ 1)
        return arcs[::-1]

    def bfs_path(self) -> list[int] | None:
        pred = [-1] * self.n
        seen = [False] * self.n
        seen[self.s] = True
        queue = deque([self.s])
        while queue:
            x = queue.popleft()
            for a in self.out[x]:
                y = self.head(a)
                if not seen[y] and self.residual(a):
                    seen[y] = True
                    pred[y] = a
                    if y == self.t:
                        return self._path(pred)
                    queue.append(y)
        return None

    def cheapest_path(self, cost: Sequence[float]) -> list[int] | None:
        # Bellman-Ford: reverse arcs carry negated costs
        dist = [math.inf] * self.n
        pred = [-1] * self.n
        dist[self.s] = 0.0
        for _ in range(self.n):
            changed = False
            for x in range(self.n):
                if dist[x] == math.inf:
                    continue
                for a in self.out[x]:
                    if not self.residual(a):
                        continue
                    c = -cost[a >> 1] if a & 1 else cost[a >> 1]
                    y = self.head(a)
                    if dist[x] + c < dist[y] - 1e-12:
                        dist[y] = dist[x] + c
                        pred[y] = a
                        changed = True
            if not changed:
                break
        if dist[self.t] == math.inf:
            return None
        return self._path(pred)


def max_flow(fi: FlowInstance, built: Iterable[int]) -> int:
    """Maximum integral s-t flow using only the edges in ``built``."""
    built = list(built)
    for i in built:
        if not 0 <= int(i) < fi.n_edges:
            raise InputError(f"unknown edge index {i}")
    net = _Network(fi, built)
    value = 0
    while (path := net.bfs_path()) is not None:
        net.push(path)
        value += 1
    return value


def _min_cost_flow(fi: FlowInstance, value: int, cost: Sequence[float]) -> dict[int, int] | None:
    net = _Network(fi, range(fi.n_edges))
    for _ in range(value):
        path = net.cheapest_path(cost)
        if path is None:
            return None
        net.push(path)
    return net.flow


def min_edges_for_value(fi: FlowInstance, j: int) -> int:
    """Fewest edges whose subgraph carries an s-t flow of value ``j``."""
    if j < 1:
        raise InputError(f"flow value must be at least 1, got {j}")
    flow = _min_cost_flow(fi, j, [1.0] * fi.n_edges)
    if flow is None:
        raise InfeasibleError(f"flow value {j} exceeds the maximum flow")
    return sum(flow.values())


def min_edges_exhaustive(fi: FlowInstance, j: int) -> int:
    """Smallest |S| with max_flow(S) >= j, by enumerating edge subsets by size."""
    for size in range(fi.n_edges + 1):
        for S in itertools.combinations(range(fi.n_edges), size):
            if max_flow(fi, S) >= j:
                return size
    raise InfeasibleError(f"flow value {j} exceeds the maximum flow")


def _traversal_order(fi: FlowInstance, flow: dict[int, int]) -> list[int]:
    """Flow-carrying edges, path by path from s, lowest edge index first at each vertex."""
    unused = {i for i, f in flow.items() if f}
    by_tail: dict[str, list[int]] = {}
    for i in sorted(unused):
        by_tail.setdefault(fi.edges[i][0], []).append(i)
    order = []
    while any(i in unused for i in by_tail.get(fi.s, [])):
        x = fi.s
        while x != fi.t:
            i = next(i for i in by_tail.get(x, []) if i in unused)
            unused.discard(i)
            order.append(i)
            x = fi.edges[i][1]
    order += sorted(unused)
    return order


@dataclass(frozen=True)
class IncrementTrace:
    batches: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.batches)

    @property
    def r(self) -> int:
        return len(self.batches) - 1

    @property
    def x_max(self) -> int:
        return len(self.c)

    def c_of(self, j: int) -> int:
        return self.c[j - 1]


def quickest_increment(fi: FlowInstance) -> IncrementTrace:
    x_max = max_flow(fi, range(fi.n_edges))
    if x_max == 0:
        raise InfeasibleError(f"{fi.t} is unreachable from {fi.s}")
    built: set[int] = set()
    batches = []
    order: list[int] = []
    for target in range(1, x_max + 1):
        cost = [0.0 if i in built else 1.0 for i in range(fi.n_edges)]
        flow = _min_cost_flow(fi, target, cost)
        batch = tuple(i for i in _traversal_order(fi, flow) if i not in built)
        built.update(batch)
        batches.append(batch)
        order.extend(batch)
    order += [i for i in range(fi.n_edges) if i not in built]
    c = tuple(min_edges_for_value(fi, j) for j in range(1, x_max + 1))
    return IncrementTrace(tuple(batches), tuple(order), c)


def batch_bound_violations(trace: IncrementTrace) -> list[tuple[int, int]]:
    """Pairs (i, j), 0 <= i < j <= x_max, where batch i is larger than c_j / (j - i)."""
    bad = []
    sizes = trace.sizes
    for j in range(1, trace.x_max + 1):
        for i in range(min(j, len(sizes))):
            if sizes[i] > trace.c_of(j) / (j - i) + EPS:
                bad.append((i, j))
    return bad


FLOW_RATIO_LIMIT = 24
FLOW_SEARCH_LIMIT = 10


def optimum_by_count(fi: FlowInstance) -> np.ndarray:
    """f*(k) for k = 0..|E|: the largest j with c_j <= k."""
    x_max = max_flow(fi, range(fi.n_edges))
    c = [min_edges_for_value(fi, j) for j in range(1, x_max + 1)]
    return np.array([sum(1 for cj in c if cj <= k) for k in range(fi.n_edges + 1)], dtype=float)


def flow_ratio(fi: FlowInstance, ordering: Sequence[int]) -> RatioCurve:
    if fi.n_edges > FLOW_RATIO_LIMIT:
        raise CapabilityError(f"flow_ratio supports at most {FLOW_RATIO_LIMIT} edges")
    order = [int(i) for i in ordering]
    if sorted(order) != list(range(fi.n_edges)):
        raise InputError("ordering must be a permutation of the edges")
    opt = optimum_by_count(fi)[1:]
    alg = np.array([max_flow(fi, order[:k]) for k in range(1, fi.n_edges + 1)], dtype=float)
    ks = np.arange(1, fi.n_edges + 1, dtype=float)
    return RatioCurve(ks, opt, alg, ratio(opt, alg))


def best_flow_ordering(fi: FlowInstance) -> tuple[tuple[int, ...], float]:
    """Edge ordering of minimum competitive ratio, by branch and bound (|E| <= 10)."""
    n = fi.n_edges
    if n > FLOW_SEARCH_LIMIT:
        raise CapabilityError(f"best_flow_ordering supports at most {FLOW_SEARCH_LIMIT} edges")
    values = [float(max_flow(fi, [i for i in range(n) if mask >> i & 1])) for mask in range(1 << n)]
    fstar = optimum_by_count(fi)
    if values[-1] > 0:
        seed = quickest_increment(fi).order
    else:
        seed = tuple(range(n))
    seed_ratio = flow_ratio(fi, seed).overall
    order, _ = search_orderings(
        np.ones(n), values.__getitem__, np.arange(n + 1, dtype=float), fstar, seed, seed_ratio
    )
    return order, flow_ratio(fi, order).overall


# -- potential-based flows on parallel edges ----------------------------------


def _signed_square(x):
    return x * abs(x)


def _signed_sqrt(y):
    return math.copysign(math.sqrt(abs(y)), y)


PSI = {
    "identity": (lambda x: x, lambda y: y),
    "quadratic": (_signed_square, _signed_sqrt),
}


@dataclass(frozen=True)
class PotentialInstance:
    """Parallel s-t edges with loss coefficients ``beta`` and capacities ``mu``.

    Flow on edge e under potential difference p is psi^-1(p / beta_e), and
    it must not exceed mu_e.  ``weights`` are the construction costs used on
    the knapsack side (unit when omitted).
    """

    beta: tuple[float, ...]
    mu: tuple[float, ...]
    psi: str = "identity"
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        beta = tuple(float(b) for b in self.beta)
        mu = tuple(float(x) for x in self.mu)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "mu", mu)
        if not beta or len(beta) != len(mu):
            raise InputError("beta and mu must be nonempty and of equal length")
        if any(not b > 0 for b in beta):
            raise InputError("beta must be positive")
        if any(not x > 0 for x in mu):
            raise InputError("mu must be positive")
        if self.psi not in PSI:
            raise InputError(f"psi must be one of {sorted(PSI)}, got {self.psi!r}")
        if self.weights is not None:
            weights = tuple(float(w) for w in self.weights)
            if len(weights) != len(beta):
                raise InputError("need one weight per edge")
            object.__setattr__(self, "weights", weights)

    @property
    def n_edges(self) -> int:
        return len(self.beta)

    def flow_at(self, e: int, p: float) -> float:
        return PSI[self.psi][1](p / self.beta[e])

    def candidate_potentials(self) -> list[float]:
        forward = PSI[self.psi][0]
        return [b * forward(m) for b, m in zip(self.beta, self.mu)]

    @classmethod
    def from_dict(cls, data: dict) -> "PotentialInstance":
        try:
            return cls(tuple(data["beta"]), tuple(data["mu"]), data.get("psi", "identity"), data.get("weights"))
        except KeyError as exc:
            raise InputError(f"potential instance JSON is missing {exc}") from None


def potential_value_at(pi: PotentialInstance, S: Iterable[int], p: float) -> float:
    """Flow for potential difference ``p`` with every edge of S that would overflow switched off."""
    total = 0.0
    for e in S:
        x = pi.flow_at(e, p)
        if x <= pi.mu[e] + EPS:
            total += x
    return total


def potential_to_xos(pi: PotentialInstance) -> Instance:
    rows = []
    for p in pi.candidate_potentials():
        row = []
        for e in range(pi.n_edges):
            x = pi.flow_at(e, p)
            row.append(min(x, pi.mu[e]) if x <= pi.mu[e] + EPS else 0.0)
        rows.append(row)
    weights = pi.weights if pi.weights is not None else [1.0] * pi.n_edges
    return make_instance(weights, rows)


def potential_eval_oracle(pi: PotentialInstance, S: Iterable[int]) -> float:
    """Brute force over every sub-selection S' of S and every candidate potential."""
    S = sorted(set(int(e) for e in S))
    if len(S) > 15:
        raise CapabilityError("potential_eval_oracle supports |S| <= 15")
    best = 0.0
    cands = pi.candidate_potentials()
    for size in range(1, len(S) + 1):
        for sub in itertools.combinations(S, size):
            for p in cands:
                flows = [pi.flow_at(e, p) for e in sub]
                if all(x <= pi.mu[e] + EPS for x, e in zip(flows, sub)):
                    best = max(best, sum(flows))
    return best


def gen_random_potential(n_edges: int, M: float, psi: str, seed: int) -> PotentialInstance:
    """Draw order: per edge beta in [0.5, 4], then mu in [1, M], then weight in [1, 10]."""
    rng = SplitMix64(seed)
    beta, mu, weights = [], [], []
    for _ in range(n_edges):
        beta.append(rng.uniform(0.5, 4.0))
        mu.append(rng.uniform(1.0, M))
        weights.append(rng.uniform(1.0, 10.0))
    return PotentialInstance(tuple(beta), tuple(mu), psi, tuple(weights))
