import itertools

import numpy as np
import pytest

from inckap.flows import (
    FlowInstance,
    InfeasibleError,
    PotentialInstance,
    best_flow_ordering,
    fig1_graph,
    flow_ratio,
    gen_random_graph,
    gen_random_potential,
    batch_bound_violations,
    max_flow,
    min_edges_exhaustive,
    min_edges_for_value,
    optimum_by_count,
    potential_eval_oracle,
    potential_to_xos,
    potential_value_at,
    quickest_increment,
)
from inckap.objective import CapabilityError, InputError, evaluate, validate


def graph(n, m, seed, acyclic=True):
    cap = n * (n - 1) // (2 if acyclic else 1)
    return gen_random_graph(n, min(m, cap), seed, acyclic=acyclic)


def path_packing(fi, S):
    """Max number of edge-disjoint s-t paths in S, by trying every family of simple paths."""
    S = set(S)
    paths = []

    def walk(x, used, seen):
        if x == fi.t:
            paths.append(frozenset(used))
            return
        for i in S:
            u, v = fi.edges[i]
            if u == x and i not in used and v not in seen:
                walk(v, used | {i}, seen | {v})

    walk(fi.s, frozenset(), {fi.s})
    best = 0

    def pack(start, used, count):
        nonlocal best
        best = max(best, count)
        for idx in range(start, len(paths)):
            if not paths[idx] & used:
                pack(idx + 1, used | paths[idx], count + 1)

    pack(0, frozenset(), 0)
    return best


def test_fig1_max_flow():
    fi = fig1_graph()
    assert fi.n_edges == 9
    assert max_flow(fi, range(9)) == 2
    assert max_flow(fi, []) == 0
    assert max_flow(fi, [0, 8, 7]) == 1
    assert max_flow(fi, [0, 1, 2, 3]) == 1


@pytest.mark.parametrize("seed", range(15))
def test_max_flow_matches_path_packing(seed):
    fi = graph(3 + seed % 4, 3 + seed % 6, seed, acyclic=seed % 2 == 0)
    rng = np.random.default_rng(seed)
    for _ in range(5):
        S = [i for i in range(fi.n_edges) if rng.random() < 0.7]
        assert max_flow(fi, S) == path_packing(fi, S)


def test_min_edges_fig1():
    fi = fig1_graph()
    assert min_edges_for_value(fi, 1) == 3
    assert min_edges_for_value(fi, 2) == 8
    with pytest.raises(InfeasibleError):
        min_edges_for_value(fi, 3)
    with pytest.raises(InputError):
        min_edges_for_value(fi, 0)


def test_min_edges_parallel():
    fi = FlowInstance.from_edges([("s", "t"), ("s", "t")])
    assert min_edges_for_value(fi, 2) == 2
    assert min_edges_exhaustive(fi, 2) == 2


@pytest.mark.parametrize("seed", range(10))
def test_min_edges_exhaustive_agreement(seed):
    fi = graph(3 + seed % 5, 4 + seed % 7, 50 + seed, acyclic=seed % 2 == 1)
    for j in range(1, max_flow(fi, range(fi.n_edges)) + 1):
        assert min_edges_for_value(fi, j) == min_edges_exhaustive(fi, j)


def test_quickest_increment_fig1():
    trace = quickest_increment(fig1_graph())
    assert trace.sizes == (3, 6)
    assert trace.batches[0] == (0, 8, 7)
    assert trace.c == (3, 8)
    assert trace.r == 1 and trace.x_max == 2
    assert sorted(trace.order) == list(range(9))
    assert not batch_bound_violations(trace)


def test_quickest_increment_parallel_and_path():
    assert quickest_increment(FlowInstance.from_edges([("s", "t"), ("s", "t")])).sizes == (1, 1)
    for L in (1, 2, 5):
        names = ["s"] + [f"x{i}" for i in range(1, L)] + ["t"]
        fi = FlowInstance.from_edges(list(zip(names, names[1:])))
        trace = quickest_increment(fi)
        assert trace.sizes == (L,)
        assert flow_ratio(fi, trace.order).overall == 1.0


def test_quickest_increment_unreachable():
    fi = FlowInstance(("s", "t", "a"), (("s", "a"),), "s", "t")
    with pytest.raises(InfeasibleError):
        quickest_increment(fi)


@pytest.mark.parametrize("seed", range(40))
def test_quickest_increment_ratio_and_batches(seed):
    fi = graph(3 + seed % 7, 3 + seed % 15, seed)
    trace = quickest_increment(fi)
    assert not batch_bound_violations(trace)
    assert flow_ratio(fi, trace.order).overall <= 2 + 1e-9
    assert len(trace.batches) == max_flow(fi, range(fi.n_edges))


def test_optimum_by_count_fig1():
    assert optimum_by_count(fig1_graph()).tolist() == [0, 0, 0, 1, 1, 1, 1, 1, 2, 2]


def test_flow_ratio_fig1():
    fi = fig1_graph()
    assert flow_ratio(fi, quickest_increment(fi).order).overall == 2.0
    # any order that does not open with the chord path is unbounded or at least 2
    for first in itertools.permutations(range(9), 3):
        if set(first) == {0, 8, 7}:
            continue
        rest = [i for i in range(9) if i not in first]
        assert flow_ratio(fi, list(first) + rest).overall >= 2.0


def test_flow_ratio_rejects_non_permutation():
    with pytest.raises(InputError):
        flow_ratio(fig1_graph(), [0, 1, 2])


def test_best_flow_ordering():
    order, r = best_flow_ordering(fig1_graph())
    assert r == 2.0 and order[:3] == (0, 7, 8)
    assert best_flow_ordering(FlowInstance.from_edges([("s", "t"), ("s", "t")]))[1] == 1.0
    assert best_flow_ordering(FlowInstance.from_edges([("s", "a"), ("a", "t")]))[1] == 1.0


def test_best_flow_ordering_limit():
    fi = FlowInstance.from_edges([("s", "t")] * 11)
    with pytest.raises(CapabilityError):
        best_flow_ordering(fi)


def test_parse_and_dump():
    text = "# graph\ns t\ns a  # first\na t\n\ns t\n"
    fi = FlowInstance.parse(text)
    assert fi.edges == (("s", "a"), ("a", "t"), ("s", "t"))
    assert FlowInstance.parse(fi.dump()) == fi


@pytest.mark.parametrize(
    "text",
    ["", "# only a comment\n", "s t\ns a b\n", "s s\ns a\n", "s t\na a\n"],
)
def test_parse_errors(text):
    with pytest.raises(InputError):
        FlowInstance.parse(text)


def test_potential_identity_example():
    pi = PotentialInstance((1.0, 1.0), (1.0, 2.0))
    inst = potential_to_xos(pi)
    assert sorted(map(tuple, inst.clauses.tolist())) == [(0.0, 2.0), (1.0, 1.0)]
    assert evaluate(inst, [0, 1]) == 2.0
    assert evaluate(inst, [0]) == 1.0
    assert evaluate(inst, [1]) == 2.0


def test_potential_quadratic_example():
    # beta=(1, 1/4), mu=(1, 2): p=1 gives flows 1 and 2, both within capacity
    pi = PotentialInstance((1.0, 0.25), (1.0, 2.0), "quadratic")
    inst = potential_to_xos(pi)
    assert evaluate(inst, [0, 1]) == pytest.approx(3.0)
    assert potential_eval_oracle(pi, [0, 1]) == pytest.approx(3.0)


@pytest.mark.parametrize("seed", range(20))
def test_potential_xos_matches_oracle(seed):
    psi = ("identity", "quadratic")[seed % 2]
    pi = gen_random_potential(1 + seed % 6, 1.0 + seed % 4, psi, seed)
    inst = potential_to_xos(pi)
    assert validate(inst).ok
    grid = np.linspace(0.0, max(pi.candidate_potentials()) * 1.1, 400)
    for size in range(pi.n_edges + 1):
        for S in itertools.combinations(range(pi.n_edges), size):
            exact = potential_eval_oracle(pi, S)
            assert evaluate(inst, S) == pytest.approx(exact, abs=1e-9)
            # sweeping p never beats the candidate potentials
            sweep = max(
                potential_value_at(pi, sub, p)
                for k in range(size + 1)
                for sub in itertools.combinations(S, k)
                for p in grid[:: max(1, len(grid) // 40)]
            )
            assert sweep <= exact + 1e-9


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(beta=(0.0,), mu=(1.0,)),
        dict(beta=(-1.0,), mu=(1.0,)),
        dict(beta=(1.0,), mu=(0.0,)),
        dict(beta=(1.0, 1.0), mu=(1.0,)),
        dict(beta=(1.0,), mu=(1.0,), psi="cubic"),
    ],
)
def test_potential_rejects(kwargs):
    with pytest.raises(InputError):
        PotentialInstance(**kwargs)


def test_potential_from_dict_missing_key():
    with pytest.raises(InputError):
        PotentialInstance.from_dict({"beta": [1.0]})
