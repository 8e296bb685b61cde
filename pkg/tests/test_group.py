from collections import Counter
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import s3_cayley, s3_permutations
from grpcover.constructions import build, cyclic, dihedral
from grpcover.elements import ElementSet
from grpcover.errors import BadIndex, DegreeMismatch, NotAGroup, NotASubgroup, NotNormal, OrderBudgetExceeded
from grpcover.group import (
    GroupTable,
    Permutation,
    center,
    centralizer,
    commutator_subgroup,
    direct_product,
    group_from_cayley,
    group_from_generators,
    quotient_group,
)
from grpcover.lattice import enumerate_subgroups

EXPRS = ["cyclic(6)", "dihedral(8)", "dicyclic(8)", "symmetric(4)", "alternating(4)", "heisenberg(3)",
         "affine(2,3)", "product(dihedral(6),cyclic(4))", "semidirect(cyclic(7),3:[2])", "modular2(16)"]


def _pair_scan_center(G):
    return {g for g in range(G.order) if all(G.product[g][h] == G.product[h][g] for h in range(G.order))}


# -- construction and validation ----------------------------------------------

def test_trivial_and_c2_tables():
    G = group_from_cayley([[0]])
    assert G.order == 1 and G.element_order == [1]
    C2 = group_from_cayley([[0, 1], [1, 0]])
    assert C2.element_order == [1, 2]


def test_s3_any_labelling():
    perms = s3_permutations()
    for shuffled in [perms, perms[::-1], perms[2:] + perms[:2]]:
        G = group_from_cayley(s3_cayley(shuffled))
        assert sorted(G.element_order) == [1, 2, 2, 2, 3, 3]
        assert G.product[0] == list(range(6))


def test_identity_relocated():
    # C2 with the identity stored at index 1
    G = group_from_cayley([[1, 0], [0, 1]])
    assert G.product == [[0, 1], [1, 0]]


def test_axiom_failures_carry_witnesses():
    with pytest.raises(NotAGroup):
        group_from_cayley([[0, 1], [1, 1]])  # no inverse for 1
    with pytest.raises(BadIndex):
        group_from_cayley([[0, 5], [5, 0]])
    with pytest.raises(NotAGroup):
        group_from_cayley([[1, 1], [1, 1]])  # no identity
    # a Latin square with identity that is not associative (order 5 loop)
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup) as info:
        group_from_cayley(loop)
    a, b, c = info.value.witness
    t = loop
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_permutation_validation():
    with pytest.raises(NotAGroup):
        Permutation((0, 0, 1))
    p = Permutation.from_cycles(4, (0, 1, 2, 3))
    assert p.images == (1, 2, 3, 0)
    q = Permutation.from_cycles(4, (0, 1))
    assert p.then(q).images == tuple(q.images[p.images[i]] for i in range(4))


def test_group_from_generators_examples():
    c4 = group_from_generators([Permutation((1, 2, 3, 0))])
    assert c4.order == 4
    d8 = group_from_generators([Permutation((1, 2, 3, 0)), Permutation((3, 2, 1, 0))])
    assert d8.order == 8
    assert Counter(d8.element_order) == Counter(dihedral(8).element_order)
    assert len(center(d8)) == 2
    s4 = group_from_generators([Permutation((1, 0, 2, 3)), Permutation((1, 2, 3, 0))])
    assert s4.order == 24
    with pytest.raises(DegreeMismatch):
        group_from_generators([Permutation((1, 0)), Permutation((1, 2, 0))])
    with pytest.raises(OrderBudgetExceeded):
        group_from_generators([Permutation((1, 0, 2, 3)), Permutation((1, 2, 3, 0))], max_order=10)


def test_generators_label_stable():
    gens = [Permutation((1, 2, 3, 4, 0)), Permutation((1, 0, 2, 3, 4))]
    a, b = group_from_generators(gens), group_from_generators(gens)
    assert a == b and a.product == b.product


@pytest.mark.parametrize("expr", EXPRS)
def test_axioms_and_orders(expr):
    G = build(expr)
    t = G.table
    n = G.order
    assert np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))
    assert all(G.product[g][G.inverse[g]] == 0 for g in range(n))
    for g in range(n):
        k, x = 1, g
        while x != 0:
            x = G.product[x][g]
            k += 1
        assert G.element_order[g] == (k if g else 1)
        assert n % G.element_order[g] == 0


def test_full_associativity_independent():
    G = build("symmetric(4)")
    p = G.product
    for a in range(24):
        for b in range(24):
            ab = p[a][b]
            for c in range(24):
                assert p[ab][c] == p[a][p[b][c]]


def test_sampled_associativity_above_bound(monkeypatch):
    from grpcover import config

    monkeypatch.setattr(config, "FULL_ASSOCIATIVITY_BOUND", 4)
    G = GroupTable(cyclic(12).table)
    assert G.order == 12


# -- whole-group primitives -----------------------------------------------------

@pytest.mark.parametrize("expr,size", [("cyclic(6)", 6), ("dihedral(8)", 2), ("symmetric(4)", 1), ("dicyclic(8)", 2)])
def test_center_sizes(expr, size):
    G = build(expr)
    Z = center(G)
    assert len(Z) == size and 0 in Z
    assert set(Z) == _pair_scan_center(G)


def test_centralizer_examples():
    S3 = build("symmetric(3)")
    assert centralizer(S3, 0) == S3.elements()
    three = next(g for g in range(6) if S3.element_order[g] == 3)
    assert len(centralizer(S3, three)) == 3
    D8 = build("dihedral(8)")
    assert D8.element_order[1] == 4 and len(centralizer(D8, 1)) == 4
    with pytest.raises(BadIndex):
        centralizer(S3, 6)


def test_commutator_subgroup_examples():
    assert len(commutator_subgroup(cyclic(9))) == 1
    S4 = build("symmetric(4)")
    D = commutator_subgroup(S4)
    assert len(D) == 12 and all(S4.element_order[g] in (1, 2, 3) for g in D)
    D8 = dihedral(8)
    Dp = commutator_subgroup(D8)
    assert len(Dp) == 2 and Dp <= center(D8)


def _brute_commutator_closure(G):
    p, inv = G.product, G.inverse
    S = {p[p[p[inv[a]][inv[b]]][a]][b] for a in range(G.order) for b in range(G.order)}
    while True:
        T = S | {p[a][b] for a in S for b in S}
        if T == S:
            return S
        S = T


@pytest.mark.parametrize("expr", ["symmetric(4)", "heisenberg(3)", "affine(3,2)", "alternating(5)"])
def test_commutator_against_closure(expr):
    G = build(expr)
    assert set(commutator_subgroup(G)) == _brute_commutator_closure(G)


def test_quotient_examples():
    D8 = dihedral(8)
    Q, proj = quotient_group(D8, center(D8))
    assert Q.order == 4 and max(Q.element_order) == 2
    assert sorted(Q.element_order) == [1, 2, 2, 2] and Q.is_abelian()
    S4 = build("symmetric(4)")
    Q2, _ = quotient_group(S4, commutator_subgroup(S4))
    assert Q2.order == 2
    Q3, proj3 = quotient_group(S4, ElementSet([0]))
    assert Q3.order == 24 and sorted(proj3) == list(range(24))
    S3 = build("symmetric(3)")
    flip = next(g for g in range(6) if S3.element_order[g] == 2)
    with pytest.raises(NotNormal):
        quotient_group(S3, ElementSet([0, flip]))
    with pytest.raises(NotASubgroup):
        quotient_group(S4, ElementSet([0, 1, 2]))


@pytest.mark.parametrize("expr", ["symmetric(4)", "dicyclic(16)", "product(dihedral(8),cyclic(3))"])
def test_quotient_projection_is_homomorphism(expr):
    G = build(expr)
    L = enumerate_subgroups(G)
    for N in L.subgroups:
        if not N.is_normal:
            continue
        Q, proj = quotient_group(G, N.members)
        assert Q.order * N.order == G.order
        for x in range(G.order):
            for y in range(G.order):
                assert proj[G.product[x][y]] == Q.product[proj[x]][proj[y]]


def test_direct_product_examples():
    C6 = direct_product(cyclic(2), cyclic(3))
    assert C6.order == 6 and 6 in C6.element_order
    P = direct_product(dihedral(8), cyclic(3))
    assert P.order == 24 and len(center(P)) == 6
    Q = build("dicyclic(8)")
    assert direct_product(Q, Q).order == 64


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(EXPRS[:7]), st.sampled_from(["cyclic(2)", "cyclic(3)", "dihedral(6)", "dicyclic(8)"]))
def test_direct_product_center_is_product_of_centers(a, b):
    A, B = build(a), build(b)
    if A.order * B.order > 600:
        return
    P = direct_product(A, B)
    assert P.order == A.order * B.order
    expected = {x * B.order + y for x in center(A) for y in center(B)}
    assert set(center(P)) == expected


def test_regular_s3_matches_permutation_oracle():
    # the text-book S3 on 3 points against the construction
    G = build("symmetric(3)")
    perms = list(permutations(range(3)))
    assert G.order == len(perms)
    assert Counter(G.element_order) == Counter({1: 1, 2: 3, 3: 2})
