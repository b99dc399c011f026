import itertools

import pytest
from hypothesis import given, strategies as st

from nervekit._util import compose_maps, monotone_maps
from nervekit.bicategory import (FinBicategory, bicategory_report, double_suspension,
                                 duskin_nerve, enumerate_icons, enumerate_normal_homs,
                                 enumerate_normal_lax, is_icon, is_normal_lax, locally_discrete,
                                 lp_2nerve, lp_bisimplicial, nonstrict_bicategory,
                                 terminal_bicategory, validate_bicategory)
from nervekit.category import (cyclic_group, grothendieck_nerve, materialize, nerve_simplicial,
                               opposite_category, poset_category)
from nervekit.errors import (NonInvertibleConstraint, PentagonViolation, StructureError,
                             TriangleViolation)
from nervekit.finspace import FinSpace
from nervekit.fixtures import bicategory_fixtures, category_fixtures
from nervekit.simplicial import (CatSSet, check_bisimplicial_identities, check_lp_characterization,
                                 check_simplicial_identities, check_simplicial_map, diagonal)

from oracles import (abelian_cocycle_count, brute_force_lax_count, interchange_holds,
                     pentagon_holds, triangle_holds, vertical_assoc_holds)

BICATS = bicategory_fixtures()
CATS = category_fixtures()


# -- validation -----------------------------------------------------------------------------

def test_terminal_is_valid():
    B = validate_bicategory(terminal_bicategory())
    assert len(B.objects) == len(B.one_cells) == len(B.two_cells) == 1


def test_double_suspension_is_valid():
    B = validate_bicategory(double_suspension(2))
    assert B.objects == ("*",)
    assert sorted(B.two_cells) == ["0", "1"]


@pytest.mark.parametrize("name", sorted(BICATS))
def test_fixtures_satisfy_laws_by_oracle(name):
    B = BICATS[name]
    assert bicategory_report(B).ok
    comp = [(g, f) for g in B.one_cells for f in B.one_cells
            if B.one_cells[g][0] == B.one_cells[f][1]]
    for (f, g) in comp:
        assert triangle_holds(B, f, g)
        for h in B.one_cells:
            if B.one_cells[g][0] != B.one_cells[h][1]:
                continue
            for k in B.one_cells:
                if B.one_cells[h][0] == B.one_cells[k][1]:
                    assert pentagon_holds(B, f, g, h, k)
    cells = list(B.two_cells)
    for z, y, x in itertools.product(cells, repeat=3):
        if B.two_cells[x][1] == B.two_cells[y][0] and B.two_cells[y][1] == B.two_cells[z][0]:
            assert vertical_assoc_holds(B, z, y, x)
    for y2, y, x2, x in itertools.product(cells, repeat=4):
        if (B.two_cells[y][1] == B.two_cells[y2][0] and B.two_cells[x][1] == B.two_cells[x2][0]
                and (B.two_cells[y][0], B.two_cells[x][0]) in B.hcomp1):
            assert interchange_holds(B, y2, y, x2, x)


def test_corrupt_associator_gives_pentagon_violation():
    B = double_suspension(2)
    with pytest.raises(PentagonViolation) as e:
        B.replace(assoc={("1", "1", "1"): "1"})
    assert e.value.witness == ("1", "1", "1", "1")


def test_corrupt_unitor_gives_triangle_violation():
    B = nonstrict_bicategory()
    lunit = dict(B.lunit)
    lunit["e"] = "e1"
    with pytest.raises(TriangleViolation):
        B.replace(lunit=lunit)


def test_non_invertible_unitor_rejected():
    # monoid {0, 1} under max: 1 is not invertible
    els = ["0", "1"]
    mx = {(b, a): max(a, b) for a in els for b in els}
    with pytest.raises(NonInvertibleConstraint):
        FinBicategory(["*"], {"1": ("*", "*")}, {g: ("1", "1") for g in els}, mx, {"*": "1"},
                      {"1": "0"}, {("1", "1"): "1"}, mx, {("1", "1", "1"): "1"},
                      {"1": "0"}, {"1": "0"})


def test_missing_table_entry_is_structure_error():
    B = double_suspension(2)
    vc = dict(B.vcomp)
    del vc[("1", "1")]
    with pytest.raises(StructureError):
        B.replace(vcomp=vc)


def test_report_names_the_failure():
    B = double_suspension(2).replace(check=False, assoc={("1", "1", "1"): "1"})
    rep = bicategory_report(B)
    assert not rep.ok
    assert rep.violations[0]["error"] == "PentagonViolation"


# -- locally discrete ----------------------------------------------------------------------

def test_locally_discrete_terminal_is_terminal_shaped():
    B = locally_discrete(CATS["terminal"])
    assert (len(B.objects), len(B.one_cells), len(B.two_cells)) == (1, 1, 1)
    assert B.is_locally_discrete()


def test_locally_discrete_z2():
    B = locally_discrete(cyclic_group(2))
    assert len(B.one_cells) == 2
    assert all(f == g for (f, g) in B.two_cells.values())
    assert B.is_locally_discrete()
    assert not double_suspension(2).is_locally_discrete()


# -- normal lax functors ---------------------------------------------------------------------

def test_double_suspension_counts():
    B = double_suspension(2)
    assert [len(enumerate_normal_lax(n, B)) for n in range(5)] == [1, 1, 2, 8, 64]


@pytest.mark.parametrize("order", [2, 3])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_double_suspension_counts_match_cocycles(order, n):
    B = double_suspension(order)
    assert len(enumerate_normal_lax(n, B)) == abelian_cocycle_count(order, n)


def test_locally_discrete_z2_level_two():
    assert len(enumerate_normal_lax(2, locally_discrete(cyclic_group(2)))) == 4


@pytest.mark.parametrize("name", sorted(BICATS))
def test_level_zero_is_objects(name):
    B = BICATS[name]
    assert len(enumerate_normal_lax(0, B)) == len(B.objects)


@pytest.mark.parametrize("name", sorted(BICATS))
@pytest.mark.parametrize("n", [1, 2])
def test_counts_match_brute_force(name, n):
    B = BICATS[name]
    assert len(enumerate_normal_lax(n, B)) == brute_force_lax_count(n, B)


@pytest.mark.parametrize("name", sorted(BICATS))
def test_enumerated_functors_pass_direct_check(name):
    B = BICATS[name]
    for n in range(4):
        lv = enumerate_normal_lax(n, B)
        assert len(set(lv)) == len(lv)
        assert all(is_normal_lax(B, F) for F in lv)


def test_nonstrict_associator_orientation_is_used():
    B = nonstrict_bicategory()
    assert B.assoc[("e", "e", "e")] == "e1"
    lv = enumerate_normal_lax(3, B)
    assert lv
    assert len(lv) == brute_force_lax_count(3, B)


@pytest.mark.parametrize("name", ["sigma2_z2", "nonstrict", "ld_kronecker"])
def test_reindexing_is_functorial(name):
    B = BICATS[name]
    for F in enumerate_normal_lax(3, B):
        for m in range(4):
            for beta in monotone_maps(m, 3):
                for k in range(3):
                    for alpha in monotone_maps(k, m):
                        assert F.reindex(compose_maps(beta, alpha)) == \
                            F.reindex(beta).reindex(alpha)


@pytest.mark.parametrize("name", sorted(BICATS))
def test_reindexing_preserves_lax_functors(name):
    B = BICATS[name]
    for F in enumerate_normal_lax(3, B):
        for m in range(4):
            for beta in monotone_maps(m, 3):
                assert is_normal_lax(B, F.reindex(beta))


def test_homs_are_lax_functors_with_invertible_cells():
    B = nonstrict_bicategory()
    homs = set(enumerate_normal_homs(2, B))
    lax = enumerate_normal_lax(2, B)
    assert homs <= set(lax)
    assert homs == {F for F in lax if all(b in B.invertible2 for b in F.beta)}


# -- Duskin nerve ---------------------------------------------------------------------------------

def test_terminal_duskin_levels_are_singletons():
    assert duskin_nerve(terminal_bicategory(), 4).counts() == (1, 1, 1, 1, 1)


def test_double_suspension_duskin_levels():
    assert duskin_nerve(double_suspension(2), 4).counts() == (1, 1, 2, 8, 64)


VEE = poset_category(FinSpace(["a", "b", "c"], [("a", "b"), ("a", "c")]))


@pytest.mark.parametrize("name", ["terminal", "z2", "ord2", "kronecker", "vee"])
def test_duskin_of_locally_discrete_is_nerve_of_opposite(name):
    """1-cells of a simplex point from B_j to B_i, so the arrow data of a Duskin
    simplex of locally_discrete(C) is a simplex of the nerve of C^op."""
    C = VEE if name == "vee" else CATS[name]
    D = duskin_nerve(locally_discrete(C), 3)
    N = nerve_simplicial(opposite_category(C), 3)
    f = [{F: F.f for F in D.levels[n]} for n in range(4)]
    assert D.counts() == N.counts()
    assert all(len(set(f[n].values())) == len(D.levels[n]) for n in range(4))
    assert check_simplicial_map(f, D, N).ok


# -- icons and the 2-nerve ------------------------------------------------------------------

def test_icons_on_level_one_of_double_suspension():
    B = double_suspension(2)
    (F,) = enumerate_normal_homs(1, B)
    icons = enumerate_icons(F, F, B)
    assert len(icons) == 2
    assert all(is_icon(B, I) for I in icons)


def test_icons_on_level_two_of_double_suspension_come_in_fours():
    B = double_suspension(2)
    homs = enumerate_normal_homs(2, B)
    assert len(homs) == 2
    for F, G in itertools.product(homs, repeat=2):
        assert len(enumerate_icons(F, G, B)) == 4


@pytest.mark.parametrize("name", sorted(BICATS))
def test_identity_icon_exists(name):
    B = BICATS[name]
    X = lp_2nerve(B, 3)
    for n in range(3):
        for F in X.level(n).objects:
            I = X.level(n).identity(F)
            assert is_icon(B, I)
            assert I in X.level(n).hom(F, F)


def test_icons_need_equal_objects():
    B = nonstrict_bicategory()
    lv = enumerate_normal_homs(0, B)
    assert enumerate_icons(lv[0], lv[1], B) == []


@pytest.mark.parametrize("name", sorted(BICATS))
def test_lp_levels_are_categories(name):
    X = lp_2nerve(BICATS[name], 3)
    for n in range(3):
        materialize(X.level(n)).check()


def test_lp_level_one_of_double_suspension():
    L1 = lp_2nerve(double_suspension(2), 3).level(1)
    assert len(L1.objects) == 1
    assert len(list(L1.arrows())) == 2


@pytest.mark.parametrize("name", sorted(BICATS))
def test_lp_level_zero_is_discrete_on_objects(name):
    B = BICATS[name]
    L0 = lp_2nerve(B, 3).level(0)
    assert len(L0.objects) == len(B.objects)
    assert L0.is_discrete()


@pytest.mark.parametrize("name", ["terminal", "z2", "ord2", "kronecker"])
def test_lp_of_locally_discrete_is_levelwise_discrete(name):
    C = CATS[name]
    X = lp_2nerve(locally_discrete(C), 3)
    for n in range(4):
        assert X.level(n).is_discrete()
        assert len(X.level(n).objects) == len(grothendieck_nerve(opposite_category(C), n))


def test_lp_bisimplicial_of_double_suspension():
    Y = lp_bisimplicial(double_suspension(2), 2)
    assert len(Y.levels[(1, 1)]) == 2
    assert len(Y.levels[(1, 0)]) == len(enumerate_normal_homs(1, double_suspension(2)))
    assert check_bisimplicial_identities(Y).ok


@pytest.mark.parametrize("name", ["ld_z2", "ld_ord2"])
def test_lp_bisimplicial_of_locally_discrete_is_vertically_constant(name):
    Y = lp_bisimplicial(BICATS[name], 2)
    for n in range(3):
        counts = {len(Y.levels[(n, m)]) for m in range(3)}
        assert len(counts) == 1
    assert check_simplicial_identities(diagonal(Y)).ok


@pytest.mark.parametrize("name", ["terminal", "sigma2_z2", "ld_z2", "ld_kronecker"])
def test_lp_characterization_holds(name):
    rep = check_lp_characterization(lp_2nerve(BICATS[name], 4))
    assert rep.ok, rep.violations
    assert all(rep.details[k] for k in rep.details)


def test_characterization_flags_non_discrete_level_zero():
    from nervekit.category import chaotic_category
    X = CatSSet.discrete(nerve_simplicial(CATS["terminal"], 4)).times_constant(
        chaotic_category(["p", "q"]))
    rep = check_lp_characterization(X)
    assert not rep.details["ii_X0_discrete"]
    assert rep.details["i_3_coskeletal"]


@pytest.mark.parametrize("name", sorted(CATS))
def test_discrete_category_nerve_passes_characterization(name):
    rep = check_lp_characterization(CatSSet.discrete(nerve_simplicial(CATS[name], 4)))
    assert rep.ok


@given(st.sampled_from(sorted(BICATS)), st.data())
def test_random_simplex_faces_are_lax_functors(name, data):
    B = BICATS[name]
    lv = enumerate_normal_lax(3, B)
    F = data.draw(st.sampled_from(lv))
    for i in range(4):
        face = F.reindex(tuple(k for k in range(4) if k != i))
        assert face in enumerate_normal_lax(2, B)
