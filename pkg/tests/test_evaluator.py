import itertools
import math

import numpy as np
import pytest

from conftest import all_subsets, brute_fstar, brute_value
from inckap.algscale import build_ordering
from inckap.evaluator import best_ordering, competitive_ratio, prefix_value, ratio
from inckap.instances import gen_m_bound, gen_random_xos
from inckap.objective import CapabilityError, make_instance

SQRT6 = math.sqrt(6)


def brute_ratio(inst, order):
    """Sup over C of f*(C)/f(prefix(C)), sampled at subset weights and the midpoints between them."""
    w = inst.weights.tolist()
    sums = sorted({sum(w[e] for e in S) for S in all_subsets(inst.m)})
    caps = sums + [(a + b) / 2 for a, b in zip(sums, sums[1:])] + [sums[-1] + 1]
    worst = 1.0
    for C in caps:
        if C <= 0:
            continue
        load, taken = 0.0, []
        for e in order:
            load += w[e]
            if load > C + 1e-9:
                break
            taken.append(e)
        opt, alg = brute_fstar(inst, C), brute_value(inst, taken)
        if alg == 0:
            r = math.inf if opt > 1e-9 else 1.0
        else:
            r = opt / alg
        worst = max(worst, r)
    return worst


def test_ratio_conventions():
    assert ratio(0.0, 0.0) == 1.0
    assert ratio(2.0, 0.0) == math.inf
    assert ratio(3.0, 2.0) == 1.5


def test_prefix_value_examples(m4, sqrt6):
    assert prefix_value(m4, (0, 1), 2.0) == 1.0
    assert prefix_value(m4, (0, 1), 0.0) == 0.0
    order = tuple(range(10))
    assert prefix_value(sqrt6, order, 305.0) == pytest.approx(2 * SQRT6 / 3)


def test_curve_m_instance(m4):
    curve = competitive_ratio(m4, (0, 1))
    assert curve.capacities.tolist() == [0.0, 1.0, 2.0, 3.0]
    assert curve.opt.tolist() == [0.0, 1.0, 4.0, 5.0]
    assert curve.alg.tolist() == [0.0, 1.0, 1.0, 5.0]
    assert curve.overall == 4.0
    assert curve.worst_capacity == 2.0


def test_curve_wrong_first_element(m4):
    curve = competitive_ratio(m4, (1, 0))
    assert curve.overall == math.inf
    assert curve.worst_capacity == 1.0


def test_curve_single_element():
    assert competitive_ratio(make_instance([1.0], [[1.0]]), (0,)).overall == 1.0


def test_curve_csv(m4):
    lines = competitive_ratio(m4, (1, 0)).to_csv().splitlines()
    assert lines == ["capacity,opt,alg,ratio", "1,1,0,inf", "2,4,4,1", "3,5,5,1"]


@pytest.mark.parametrize("seed", range(30))
def test_curve_matches_brute_force(seed):
    inst = gen_random_xos(1 + seed % 7, 1 + seed % 3, 2.0, seed)
    rng = np.random.default_rng(seed)
    for order in [build_ordering(inst).order, tuple(rng.permutation(inst.m))]:
        r = competitive_ratio(inst, order).overall
        expected = brute_ratio(inst, order)
        if math.isinf(expected):
            assert math.isinf(r)
        else:
            assert r == pytest.approx(expected, rel=1e-9)
        assert r >= 1.0


def test_best_ordering_m_instance():
    for M in (1.0, 2.0, 2.449, 4.0):
        ordering, r = best_ordering(gen_m_bound(M))
        assert r == pytest.approx(M, abs=1e-9)
        assert ordering.order == (0, 1)


def test_best_ordering_single():
    ordering, r = best_ordering(make_instance([3.0], [[2.0]]))
    assert r == 1.0 and ordering.order == (0,)


def test_best_ordering_sqrt6(sqrt6):
    ordering, r = best_ordering(sqrt6)
    assert r >= SQRT6 - 1e-9
    assert r == pytest.approx(competitive_ratio(sqrt6, ordering).overall)
    assert r <= competitive_ratio(sqrt6, build_ordering(sqrt6)).overall + 1e-12


def test_sqrt6_forced_first_element(sqrt6):
    rng = np.random.default_rng(0)
    for _ in range(50):
        order = tuple(rng.permutation(10))
        if order[0] == 0:
            continue
        curve = competitive_ratio(sqrt6, order)
        assert curve.ratios[curve.capacities.tolist().index(101.0)] == math.inf


def test_sqrt6_forced_second_and_third(sqrt6):
    rest = [e for e in range(1, 10)]
    for a, b in itertools.permutations(rest, 2):
        if {a, b} <= {1, 2, 3}:
            continue
        tail = [e for e in rest if e not in (a, b)]
        curve = competitive_ratio(sqrt6, (0, a, b, *tail))
        at306 = curve.ratios[curve.capacities.tolist().index(306.0)]
        assert at306 >= SQRT6 - 1e-12


def test_best_ordering_limit():
    with pytest.raises(CapabilityError):
        best_ordering(make_instance(np.ones(11), np.ones((1, 11))))


@pytest.mark.parametrize("seed", range(20))
def test_best_ordering_matches_permutation_enumeration(seed):
    inst = gen_random_xos(2 + seed % 4, 1 + seed % 3, (1.0, 2.0, 4.0)[seed % 3], 100 + seed)
    scored = [(brute_ratio(inst, p), p) for p in itertools.permutations(range(inst.m))]
    best = min(r for r, _ in scored)
    first = min(p for r, p in scored if r <= best * (1 + 1e-9))
    ordering, r = best_ordering(inst)
    assert r == pytest.approx(best, rel=1e-9)
    assert ordering.order == first
    assert r <= competitive_ratio(inst, build_ordering(inst)).overall + 1e-12
