import itertools

import pytest
from hypothesis import given, strategies as st

from nervekit.category import (FinCategory, Functor, chaotic_category, cyclic_group,
                               discrete_category, enumerate_functors, grothendieck_nerve,
                               nerve_of_order, nerve_simplicial, opposite_category, order_from_cover,
                               ordinal, product_category, reindex_pairs, trivial_order)
from nervekit.errors import (CategoryAxiomViolation, InputError, NotACover, NotLocallyTotal,
                             NotOpen)
from nervekit.finspace import FinSpace, discrete_space, sierpinski, stalk
from nervekit.fixtures import category_fixtures, order_corpus
from nervekit.simplicial import check_simplicial_identities, is_k_coskeletal, segal_map

from oracles import count_functors_from_chain, monotone_count

CATS = category_fixtures()


def test_z2_level_two_has_four_functors():
    assert len(grothendieck_nerve(cyclic_group(2), 2)) == 4


def test_ordinal_one_level_two_is_monotone_maps():
    assert len(grothendieck_nerve(ordinal(1), 2)) == monotone_count(2, 2) == 4


@pytest.mark.parametrize("name", sorted(CATS))
def test_level_zero_is_objects(name):
    C = CATS[name]
    assert len(grothendieck_nerve(C, 0)) == len(C.objects)


def test_negative_level_rejected():
    with pytest.raises(InputError):
        grothendieck_nerve(ordinal(1), -1)


@pytest.mark.parametrize("name", sorted(CATS))
@pytest.mark.parametrize("n", [1, 2, 3])
def test_nerve_counts_match_composable_strings(name, n):
    C = CATS[name]
    assert len(grothendieck_nerve(C, n)) == count_functors_from_chain(C, n)


@given(st.integers(0, 4), st.integers(1, 4))
def test_nerve_of_chain_counts_monotone_maps(n, k):
    assert len(grothendieck_nerve(ordinal(k - 1), n)) == monotone_count(n, k)


@given(st.integers(1, 4), st.integers(0, 4))
def test_cyclic_group_nerve_has_power_count(order, n):
    assert len(grothendieck_nerve(cyclic_group(order), n)) == order ** n


def test_nerve_is_sorted_and_duplicate_free():
    lv = grothendieck_nerve(CATS["kronecker"], 3)
    assert len(set(lv)) == len(lv)
    assert grothendieck_nerve(CATS["kronecker"], 3) == lv


def test_terminal_nerve_levels_are_singletons():
    N = nerve_simplicial(CATS["terminal"], 4)
    assert N.counts() == (1, 1, 1, 1, 1)


def test_z2_nerve_counts():
    assert nerve_simplicial(cyclic_group(2), 4).counts() == (1, 2, 4, 8, 16)


def test_nerve_needs_positive_maxdim():
    with pytest.raises(InputError):
        nerve_simplicial(ordinal(1), 0)


@pytest.mark.parametrize("name", sorted(CATS))
def test_nerve_satisfies_simplicial_identities(name):
    assert check_simplicial_identities(nerve_simplicial(CATS[name], 4)).ok


@pytest.mark.parametrize("name", sorted(CATS))
def test_segal_maps_are_bijective(name):
    N = nerve_simplicial(CATS[name], 4)
    for n in range(2, 5):
        assert segal_map(N, n).bijective


@pytest.mark.parametrize("name", sorted(CATS))
def test_nerve_is_two_coskeletal(name):
    rep = is_k_coskeletal(nerve_simplicial(CATS[name], 4), 2)
    assert rep.ok
    assert rep.details["range"] == [3, 4]


def test_reindexing_is_functorial():
    C = CATS["ord2"]
    for x in grothendieck_nerve(C, 3):
        for beta in itertools.combinations_with_replacement(range(4), 3):
            for alpha in itertools.combinations_with_replacement(range(3), 2):
                composite = tuple(beta[a] for a in alpha)
                step = reindex_pairs(alpha, reindex_pairs(beta, x, 3), 2)
                assert step == reindex_pairs(composite, x, 3)


def test_bad_composition_table_rejected():
    with pytest.raises(CategoryAxiomViolation):
        # not associative: (f f) g = f but f (f g) = g
        FinCategory(["a"], {"1": ("a", "a"), "f": ("a", "a"), "g": ("a", "a")},
                    {("1", "1"): "1", ("1", "f"): "f", ("f", "1"): "f", ("1", "g"): "g",
                     ("g", "1"): "g", ("f", "f"): "g", ("g", "g"): "f", ("f", "g"): "f",
                     ("g", "f"): "g"}, {"a": "1"})


def test_missing_composite_rejected():
    with pytest.raises(CategoryAxiomViolation):
        FinCategory(["a"], {"1": ("a", "a"), "f": ("a", "a")},
                    {("1", "1"): "1", ("1", "f"): "f", ("f", "1"): "f"}, {"a": "1"})


def test_functor_checks_composition():
    Z2 = cyclic_group(2)
    Functor(Z2, Z2, {"*": "*"}, {"0": "0", "1": "1"}, check=True)
    Functor(Z2, Z2, {"*": "*"}, {"0": "0", "1": "0"}, check=True)
    with pytest.raises(Exception):
        Functor(Z2, Z2, {"*": "*"}, {"0": "1", "1": "1"}, check=True)


def test_enumerated_functors_are_valid():
    A, B = CATS["ord2"], CATS["kronecker"]
    Fs = enumerate_functors(A, B)
    for F in Fs:
        F.check()
    # functors out of [2] are 2-simplices of the nerve
    assert len(Fs) == len(grothendieck_nerve(B, 2))


def test_opposite_is_an_involution_on_counts():
    for C in CATS.values():
        Cop = opposite_category(C)
        assert [len(grothendieck_nerve(Cop, n)) for n in range(4)] == \
            [len(grothendieck_nerve(C, n)) for n in range(4)]
        assert opposite_category(Cop) == C


def test_product_category_nerve_is_product_of_nerves():
    P = product_category(cyclic_group(2), ordinal(1))
    for n in range(4):
        assert len(grothendieck_nerve(P, n)) == \
            len(grothendieck_nerve(cyclic_group(2), n)) * len(grothendieck_nerve(ordinal(1), n))


def test_chaotic_and_discrete():
    assert chaotic_category(["p", "q"]).is_groupoid
    D = discrete_category(["p", "q", "r"])
    assert D.is_discrete()
    assert len(grothendieck_nerve(D, 3)) == 3


# -- linear orders --------------------------------------------------------------------

def test_point_with_two_sets_gives_two_chain():
    X = discrete_space(["p"])
    L = order_from_cover(X, FinSpace(["1", "2"], [("1", "2")]), {"1": {"p"}, "2": {"p"}})
    assert L.sorted_stalk("p") == (("1", "p"), ("2", "p"))
    assert L.le(("1", "p"), ("2", "p")) and not L.le(("2", "p"), ("1", "p"))


def test_single_set_cover_is_diagonal():
    X = sierpinski()
    L = trivial_order(X)
    assert all(len(stalk(L.L, x)) == 1 for x in X.points)
    assert L.strict() == frozenset()
    assert all((y, y) in L.O for y in L.L.total.points)


def test_cover_must_cover():
    X = sierpinski()
    with pytest.raises(NotACover):
        order_from_cover(X, FinSpace(["1"]), {"1": {"1"}})


def test_cover_must_be_locally_total():
    X = discrete_space(["p"])
    with pytest.raises(NotLocallyTotal):
        order_from_cover(X, FinSpace(["1", "2"]), {"1": {"p"}, "2": {"p"}})


def test_cover_sets_must_be_open():
    X = sierpinski()
    with pytest.raises(NotOpen):
        order_from_cover(X, FinSpace(["1", "2"], [("1", "2")]), {"1": {"0", "1"}, "2": {"0"}})


def test_two_chain_over_point_has_three_one_chains():
    X = discrete_space(["p"])
    L = order_from_cover(X, FinSpace(["1", "2"], [("1", "2")]), {"1": {"p"}, "2": {"p"}})
    assert len(nerve_of_order(L, 2).levels[1]) == 3


def test_diagonal_order_nerve_levels_are_copies_of_base():
    X = sierpinski()
    N = nerve_of_order(trivial_order(X), 3)
    assert N.counts() == (2, 2, 2, 2)
    for S in N.over:
        assert sorted(S.p(c) for c in S.total.points) == sorted(X.points)


ORDERS = order_corpus()


@pytest.mark.parametrize("name", sorted(ORDERS))
def test_order_nerve_stalks_count_monotone_maps(name):
    L = ORDERS[name]
    N = nerve_of_order(L, 3)
    assert check_simplicial_identities(N).ok
    for n in range(4):
        for x in L.base.points:
            k = len(L.sorted_stalk(x))
            brute = sum(1 for t in itertools.product(range(k), repeat=n + 1)
                        if all(a <= b for a, b in zip(t, t[1:])))
            assert len(stalk(N.over[n], x)) == brute == monotone_count(n, k)


@pytest.mark.parametrize("name", sorted(ORDERS))
def test_order_relation_is_stalkwise_linear(name):
    L = ORDERS[name]
    for x in L.base.points:
        st = L.sorted_stalk(x)
        for a, b in itertools.product(st, repeat=2):
            assert L.le(a, b) or L.le(b, a)
            if L.le(a, b) and L.le(b, a):
                assert a == b
