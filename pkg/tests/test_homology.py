import random

import pytest
from hypothesis import given, strategies as st

from nervekit.bicategory import double_suspension, duskin_nerve
from nervekit.category import (chaotic_category, cyclic_group, discrete_category,
                               nerve_simplicial, ordinal, poset_category)
from nervekit.errors import TruncationTooShallow
from nervekit.finspace import FinSpace
from nervekit.fixtures import bicategory_fixtures, category_fixtures
from nervekit.homology import (HomologyGroup, homology, homology_table, matmul,
                               normalized_chains, smith_normal_form)
from nervekit.simplicial import sset_disjoint_union

from oracles import bar_homology_cyclic, components_scipy, sympy_invariants

CATS = category_fixtures()

matrices = st.integers(0, 5).flatmap(
    lambda m: st.integers(0, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


# -- Smith normal form ------------------------------------------------------------------------

def test_identity_invariants():
    assert smith_normal_form([[1, 0], [0, 1]]).invariants == [1, 1]


def test_two_by_two_example():
    S = smith_normal_form([[2, 4], [6, 8]])
    assert S.invariants == [2, 4]
    assert S.verify([[2, 4], [6, 8]])


def test_zero_matrix_has_no_invariants():
    assert smith_normal_form([[0, 0, 0], [0, 0, 0]]).invariants == []
    assert smith_normal_form([]).invariants == []


@given(matrices)
def test_snf_certificates_and_divisibility(M):
    S = smith_normal_form(M)
    assert S.verify(M)
    inv = S.invariants
    assert all(d > 0 for d in inv)
    assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
    assert sorted(inv) == sympy_invariants(M)


def test_snf_on_seeded_batch():
    rng = random.Random(5)
    for _ in range(200):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]
        S = smith_normal_form(M)
        assert S.verify(M)
        assert S.invariants == sympy_invariants(M)


# -- chains ---------------------------------------------------------------------------------

def test_terminal_nerve_ranks():
    cc = normalized_chains(nerve_simplicial(CATS["terminal"], 4))
    assert cc.ranks == (1, 0, 0, 0, 0)


def test_z2_nerve_ranks_and_boundaries():
    cc = normalized_chains(nerve_simplicial(cyclic_group(2), 5))
    assert cc.ranks == (1, 1, 1, 1, 1, 1)
    assert [abs(cc.boundaries[n][0][0]) for n in range(1, 6)] == [0, 2, 0, 2, 0]


def test_double_suspension_nondegenerate_counts():
    cc = normalized_chains(duskin_nerve(double_suspension(2), 3))
    # of the 8 cells at level 3, the degenerate ones are the totally degenerate
    # simplex and the three degeneracies of the nondegenerate 2-simplex
    assert cc.ranks == (1, 0, 1, 4)


@pytest.mark.parametrize("name", sorted(bicategory_fixtures()))
def test_boundary_squares_to_zero(name):
    Y = duskin_nerve(bicategory_fixtures()[name], 3)
    cc = normalized_chains(Y)
    for n in range(2, 4):
        assert not any(any(r) for r in matmul(cc.boundaries[n - 1], cc.boundaries[n]))


def test_chains_need_depth():
    with pytest.raises(TruncationTooShallow):
        normalized_chains(nerve_simplicial(CATS["z2"], 2), 3)


# -- homology ---------------------------------------------------------------------------------

def test_z2_group_homology_matches_bar_complex():
    Y = nerve_simplicial(cyclic_group(2), 4)
    table = homology_table(Y, range(4))
    assert [str(table[n]) for n in range(4)] == ["Z", "Z/2", "0", "Z/2"]
    oracle = bar_homology_cyclic(2, 3)
    for n in range(4):
        assert (table[n].free_rank, table[n].torsion) == oracle[n]


@pytest.mark.parametrize("order", [3, 4])
def test_cyclic_group_homology_matches_bar_complex(order):
    Y = nerve_simplicial(cyclic_group(order), 3)
    oracle = bar_homology_cyclic(order, 2)
    for n in range(3):
        h = homology(Y, n)
        assert (h.free_rank, h.torsion) == oracle[n]


def test_discrete_three_objects():
    h = homology(nerve_simplicial(discrete_category(["a", "b", "c"]), 2), 0)
    assert h == HomologyGroup(3)
    assert str(h) == "Z^3"


@pytest.mark.parametrize("C", [ordinal(2), chaotic_category(["p", "q", "r"])],
                         ids=["ordinal", "chaotic"])
def test_contractible_nerves(C):
    Y = nerve_simplicial(C, 3)
    assert homology(Y, 0) == HomologyGroup(1)
    assert homology(Y, 1) == HomologyGroup(0)
    assert homology(Y, 2) == HomologyGroup(0)


def test_parallel_arrows_give_a_circle():
    Y = nerve_simplicial(CATS["kronecker"], 3)
    assert [homology(Y, n) for n in range(3)] == [HomologyGroup(1), HomologyGroup(1),
                                                  HomologyGroup(0)]


def test_circle_from_two_parallel_order_paths():
    # a <= b, a <= c, d <= b, d <= c: the nerve is a square, a circle
    X = FinSpace(["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("d", "b"), ("d", "c")])
    Y = nerve_simplicial(poset_category(X), 3)
    assert homology(Y, 0) == HomologyGroup(1)
    assert homology(Y, 1) == HomologyGroup(1)
    assert homology(Y, 2) == HomologyGroup(0)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4))
def test_h0_counts_components(sizes):
    parts = [nerve_simplicial(ordinal(k - 1), 2) for k in sizes]
    Y = sset_disjoint_union(parts)
    edges = [(Y.d(1, 1, e), Y.d(1, 0, e)) for e in Y.levels[1]]
    assert homology(Y, 0).free_rank == components_scipy(list(Y.levels[0]), edges) == len(sizes)


def test_relabelling_does_not_change_homology():
    Y = nerve_simplicial(cyclic_group(3), 4)
    b = [{x: ("cell", n, k) for k, x in enumerate(reversed(lv))} for n, lv in enumerate(Y.levels)]
    Z = Y.relabel(b)
    for n in range(3):
        assert homology(Y, n) == homology(Z, n)


def test_homology_needs_depth():
    with pytest.raises(TruncationTooShallow):
        homology(nerve_simplicial(CATS["z2"], 2), 2)
    with pytest.raises(ValueError):
        homology(nerve_simplicial(CATS["z2"], 2), -1)


def test_homology_group_validation():
    with pytest.raises(ValueError):
        HomologyGroup(0, (1,))
    with pytest.raises(ValueError):
        HomologyGroup(0, (4, 6))
    assert str(HomologyGroup(2, (2, 4))) == "Z^2 + Z/2 + Z/4"
    assert HomologyGroup(1, (3,)).to_json() == {"free_rank": 1, "torsion": [3], "text": "Z + Z/3"}
