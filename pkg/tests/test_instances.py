import math

import pytest

from conftest import all_subsets
from inckap.instances import (
    GeneratorConfig,
    SplitMix64,
    coverage_instance,
    coverage_value,
    gen_coverage,
    gen_m_bound,
    gen_random_xos,
    gen_sqrt6,
    generate,
)
from inckap.objective import InputError, evaluate, validate
from inckap.optimum import breakpoints


def test_splitmix_reference_values():
    # published SplitMix64 outputs for seed 0
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_splitmix_ranges():
    rng = SplitMix64(42)
    xs = [rng.random() for _ in range(1000)]
    assert 0.0 <= min(xs) and max(xs) < 1.0
    assert all(0 <= rng.below(7) < 7 for _ in range(100))


def test_m_bound():
    inst = gen_m_bound(1.0)
    assert inst.singleton_values.tolist() == [1.0, 1.0]
    inst = gen_m_bound(4.0)
    assert inst.weights.tolist() == [1.0, 2.0]
    assert inst.clauses.tolist() == [[1.0, 4.0]]
    with pytest.raises(InputError):
        gen_m_bound(0.5)


def test_sqrt6_shape_and_values():
    inst = gen_sqrt6()
    assert inst.m == 10 and inst.k == 6
    assert sorted(inst.weights.tolist()) == [101.0] + [102.0] * 3 + [103.0] * 6
    assert validate(inst).ok
    assert all(evaluate(inst, [e]) == pytest.approx(1.0) for e in range(10))
    table = breakpoints(inst)
    assert table.fstar(306) == pytest.approx(math.sqrt(6))
    assert table.fstar(618) == 6.0
    assert table.fstar(515) == 5.0


def test_random_xos_is_reproducible_and_valid():
    a = gen_random_xos(6, 3, 1.0, seed=7)
    b = gen_random_xos(6, 3, 1.0, seed=7)
    assert a.to_json() == b.to_json()
    report = validate(a)
    assert report.ok and report.M <= 1 + 1e-9
    assert a.weights.min() >= 1.0 and a.weights.max() <= 10.0


def test_random_xos_single():
    inst = gen_random_xos(1, 1, 1.0, seed=0)
    assert evaluate(inst, [0]) == pytest.approx(1.0)


@pytest.mark.parametrize("seed", range(100))
def test_random_xos_valid(seed):
    M = 1.0 + seed % 5
    inst = gen_random_xos(1 + seed % 12, 1 + seed % 5, M, seed)
    report = validate(inst)
    assert report.ok and report.M <= M + 1e-9


@pytest.mark.parametrize("bad", [(0, 1, 1.0), (1, 0, 1.0), (2, 2, 0.9)])
def test_random_xos_rejects(bad):
    with pytest.raises(InputError):
        gen_random_xos(*bad, seed=0)


def test_coverage_disjoint_is_modular():
    inst = coverage_instance([[1], [2]])
    assert evaluate(inst, [0]) == 1.0 and evaluate(inst, [1]) == 1.0
    assert evaluate(inst, [0, 1]) == 2.0


def test_coverage_identical_sets():
    inst = coverage_instance([[0, 1], [0, 1]])
    assert evaluate(inst, [0, 1]) == evaluate(inst, [0]) == 2.0


def test_coverage_random_matches_union():
    inst, sets = gen_coverage(6, 5, seed=3)
    assert validate(inst).ok
    for S in all_subsets(5):
        assert evaluate(inst, S) == coverage_value(sets, S)


@pytest.mark.parametrize("seed", range(10))
def test_coverage_random_exhaustive(seed):
    inst, sets = gen_coverage(1 + seed, 2 + seed % 5, seed)
    for S in all_subsets(inst.m):
        assert evaluate(inst, S) == coverage_value(sets, S)


def test_coverage_weighted_items():
    sets = [[0, 1], [1, 2]]
    values = {0: 1.0, 1: 3.0, 2: 2.0}
    inst = coverage_instance(sets, item_values=values)
    for S in all_subsets(2):
        assert evaluate(inst, S) == coverage_value(sets, S, values)


def test_coverage_limits():
    with pytest.raises(InputError):
        gen_coverage(13, 3, 0)


def test_generate_dispatch():
    assert generate(GeneratorConfig("m_bound", M=3.0)).clauses.tolist() == [[1.0, 3.0]]
    assert generate(GeneratorConfig("sqrt6")).m == 10
    assert generate(GeneratorConfig("random_xos", seed=2, m=4)).m == 4
    assert generate(GeneratorConfig("coverage", seed=1, m=3, universe_size=4)).m == 3
    with pytest.raises(InputError):
        generate(GeneratorConfig("matroid"))
