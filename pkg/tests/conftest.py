import itertools

import pytest

from inckap.instances import gen_m_bound, gen_sqrt6


@pytest.fixture
def sqrt6():
    return gen_sqrt6()


@pytest.fixture
def m4():
    return gen_m_bound(4.0)


def all_subsets(m):
    for size in range(m + 1):
        yield from itertools.combinations(range(m), size)


def brute_value(inst, S):
    """f(S) straight from the clause matrix, without numpy reductions."""
    S = list(S)
    if not S:
        return 0.0
    return max(sum(row[e] for e in S) for row in inst.clauses.tolist())


def brute_fstar(inst, C):
    w = inst.weights.tolist()
    return max(brute_value(inst, S) for S in all_subsets(inst.m) if sum(w[e] for e in S) <= C + 1e-9)
