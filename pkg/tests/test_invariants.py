from itertools import combinations

import pytest

from grpcover.fields import prime_factors
from grpcover.group import generate
from grpcover.invariants import (
    fitting,
    is_cyclic_hall_fitting,
    is_dedekind,
    is_nilpotent,
    is_p_group,
    is_solvable,
    min_generators,
    min_generators_exhaustive,
    structure_report,
)

SAMPLE = ["cyclic(6)", "symmetric(3)", "symmetric(4)", "dihedral(8)", "dicyclic(8)", "alternating(4)",
          "alternating(5)", "dihedral(12)", "heisenberg(3)", "affine(2,3)", "product(symmetric(3),cyclic(4))",
          "semidirect(cyclic(7),3:[2])", "abelian(2,2,2)", "dicyclic(12)", "affine(5,1)"]


def fitting_oracle(G, L):
    """Product of the O_p, each the intersection of the Sylow p-subgroups."""
    seed = []
    for p in prime_factors(G.order):
        n, size = G.order, 1
        while n % p == 0:
            n //= p
            size *= p
        inter = G.full_mask
        for H in L.subgroups:
            if H.order == size:
                inter &= H.mask
        seed += [x for x in range(G.order) if (inter >> x) & 1]
    return generate(G, seed)[1]


def min_generators_oracle(G):
    for k in range(0, 5):
        for combo in combinations(range(G.order), k):
            if generate(G, combo)[1] == G.full_mask:
                return k
    return None


@pytest.mark.parametrize("expr,size", [("symmetric(3)", 3), ("symmetric(4)", 4), ("alternating(5)", 1),
                                       ("dihedral(8)", 8), ("heisenberg(3)", 27), ("affine(2,3)", 8),
                                       ("dihedral(12)", 6), ("semidirect(cyclic(7),3:[2])", 7)])
def test_fitting_examples(lat, expr, size):
    G, L = lat(expr)
    assert len(fitting(G, L)) == size


@pytest.mark.parametrize("expr", SAMPLE)
def test_fitting_matches_oracle(lat, expr):
    G, L = lat(expr)
    assert fitting(G, L).mask == fitting_oracle(G, L)


@pytest.mark.parametrize("expr,nil,solv", [("dihedral(8)", True, True), ("symmetric(3)", False, True),
                                           ("symmetric(4)", False, True), ("alternating(5)", False, False),
                                           ("symmetric(5)", False, False), ("heisenberg(3)", True, True),
                                           ("product(dihedral(8),cyclic(3))", True, True)])
def test_nilpotent_solvable(lat, expr, nil, solv):
    G, L = lat(expr)
    assert is_nilpotent(G, L) is nil and is_solvable(G) is solv


def test_dedekind_and_p_group(lat):
    assert is_dedekind(lat("dicyclic(8)")[1]) and is_dedekind(lat("cyclic(12)")[1])
    assert is_dedekind(lat("product(dicyclic(8),cyclic(2))")[1])
    assert not is_dedekind(lat("dihedral(8)")[1])
    assert is_p_group(lat("dihedral(8)")[0]) == 2
    assert is_p_group(lat("heisenberg(3)")[0]) == 3
    assert is_p_group(lat("cyclic(6)")[0]) is None
    assert is_p_group(lat("cyclic(1)")[0]) is None


@pytest.mark.parametrize("expr,value", [("symmetric(3)", True), ("dihedral(8)", False), ("cyclic(6)", True),
                                        ("affine(5,1)", True), ("symmetric(4)", False), ("dihedral(10)", True),
                                        ("dihedral(12)", False)])
def test_cyclic_hall_fitting(lat, expr, value):
    assert is_cyclic_hall_fitting(*lat(expr)) is value


@pytest.mark.parametrize("expr,k", [("cyclic(8)", 1), ("abelian(2,2,2)", 3), ("dihedral(8)", 2),
                                    ("heisenberg(3)", 2), ("cyclic(1)", 0), ("abelian(2,2,2,2)", 4)])
def test_min_generators_examples(lat, expr, k):
    assert min_generators(*lat(expr)) == k


@pytest.mark.parametrize("expr", ["dihedral(8)", "dicyclic(8)", "abelian(2,4)", "modular2(16)", "abelian(2,2,2)",
                                  "semidirect(cyclic(8),2:[3])", "heisenberg(3)",
                                  "symmetric(4)", "cyclic(6)", "affine(2,2)", "alternating(4)"])
def test_min_generators_cross_check(lat, expr):
    G, L = lat(expr)
    exact = min_generators_exhaustive(G, L)
    assert exact == min_generators(G, L)
    if G.order <= 24:
        assert exact == min_generators_oracle(G)


def test_structure_report(lat):
    G, L = lat("symmetric(4)")
    r = structure_report(G, L).to_dict()
    assert r == {"order": 24, "is_abelian": False, "is_nilpotent": False, "is_solvable": True,
                 "is_dedekind": False, "is_p_group": None, "center_size": 1, "commutator_size": 12,
                 "frattini_size": 1, "fitting_size": 4, "min_generators": 2}
    r = structure_report(*lat("dicyclic(8)"))
    assert (r.center_size, r.frattini_size, r.commutator_size, r.min_generators) == (2, 2, 2, 2)


def test_min_generators_budget(lat):
    G, L = lat("affine(3,2)")
    from grpcover.errors import OrderBudgetExceeded

    with pytest.raises(OrderBudgetExceeded):
        min_generators(G, L)
    assert structure_report(G, L).min_generators is None
    assert min_generators_exhaustive(G, L) == 2
