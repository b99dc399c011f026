import itertools

import pytest
from hypothesis import given, strategies as st

from nervekit.errors import CycleError, NotContinuous, NotEtale, UnknownPoint
from nervekit.finspace import (ContinuousMap, EtaleSpace, FinSpace, chain_space,
                               discrete_space, identity_etale, minimal_open, pullback_etale,
                               sierpinski, stalk, trivial_cover, validate_space)
from nervekit.category import order_from_cover


@st.composite
def posets(draw, max_points=4):
    """Random finite posets: a random DAG on 0..k-1 (edges only go up)."""
    k = draw(st.integers(1, max_points))
    pts = [str(i) for i in range(k)]
    edges = [(pts[i], pts[j]) for i in range(k) for j in range(i + 1, k)]
    chosen = draw(st.lists(st.sampled_from(edges), unique=True)) if edges else []
    return FinSpace(pts, chosen)


def test_singleton_space():
    X = validate_space(["p"])
    assert X.points == ("p",)
    assert X.opens() == [frozenset(), frozenset({"p"})]


def test_sierpinski_opens():
    X = validate_space(["0", "1"], [("0", "1")])
    assert X.opens() == [frozenset(), frozenset({"1"}), frozenset({"0", "1"})]


def test_two_cycle_rejected():
    with pytest.raises(CycleError) as e:
        validate_space(["0", "1"], [("0", "1"), ("1", "0")])
    assert set(e.value.witness) == {"0", "1"}


def test_unknown_point_in_relation():
    with pytest.raises(UnknownPoint):
        FinSpace(["a"], [("a", "b")])


def test_transitive_closure_taken():
    X = FinSpace(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert X.le("a", "c")
    assert X.covering_pairs() == [("a", "b"), ("b", "c")]


def test_minimal_open_sierpinski():
    X = sierpinski()
    assert minimal_open(X, "0") == {"0", "1"}
    assert minimal_open(X, "1") == {"1"}
    with pytest.raises(UnknownPoint):
        minimal_open(X, "2")


@given(posets())
def test_maximal_points_are_open(X):
    for m in X.points:
        if X.up(m) == {m}:
            assert X.is_open({m})
            assert minimal_open(X, m) == {m}


@given(posets())
def test_opens_closed_under_union_and_intersection(X):
    opens = X.opens()
    for U, V in itertools.product(opens, repeat=2):
        assert X.is_open(U | V)
        assert X.is_open(U & V)


@given(posets())
def test_revalidating_a_valid_poset_is_identity(X):
    assert validate_space(X.points, X.leq) == X


@given(posets())
def test_minimal_open_is_smallest_open_neighbourhood(X):
    opens = X.opens()
    for x in X.points:
        U = minimal_open(X, x)
        assert X.is_open(U)
        assert all(U <= V for V in opens if x in V)


def test_continuous_means_monotone():
    X = sierpinski()
    ContinuousMap(X, X, {"0": "0", "1": "1"})
    ContinuousMap(X, X, {"0": "1", "1": "1"})
    with pytest.raises(NotContinuous):
        ContinuousMap(X, X, {"0": "1", "1": "0"})


def test_identity_stalks_are_singletons():
    X = chain_space(["a", "b", "c"])
    S = identity_etale(X)
    assert all(len(stalk(S, x)) == 1 for x in X.points)


def test_two_sheeted_cover_of_point():
    S = trivial_cover(discrete_space(["p"]), ["u", "v"])
    assert len(stalk(S, "p")) == 2


def test_cover_stalks_on_sierpinski():
    X = sierpinski()
    L = order_from_cover(X, FinSpace(["1", "2"], [("1", "2")]),
                         {"1": {"0", "1"}, "2": {"1"}})
    assert len(stalk(L.L, "1")) == 2
    assert len(stalk(L.L, "0")) == 1


def test_non_etale_projection_rejected():
    # the total space glues two sheets over the open point: not a local homeomorphism
    X = sierpinski()
    total = FinSpace(["a", "b", "c"], [("a", "b"), ("a", "c")])
    with pytest.raises(NotEtale):
        EtaleSpace(total, X, {"a": "0", "b": "1", "c": "1"})


def etale_spaces(X, max_stalk=2):
    """Every etale space over X with stalks of size 1..max_stalk, from restriction maps."""
    from nervekit.finspace import etale_from_fibers
    cover = X.covering_pairs()
    for sizes in itertools.product(range(1, max_stalk + 1), repeat=len(X.points)):
        fibers = {x: tuple(range(s)) for x, s in zip(X.points, sizes)}
        choices = [list(itertools.product(fibers[y], repeat=len(fibers[x]))) for (x, y) in cover]
        for pick in itertools.product(*choices):
            restrict = {(x, y): dict(zip(fibers[x], r)) for (x, y), r in zip(cover, pick)}
            try:
                yield etale_from_fibers(X, fibers, restrict)
            except (NotEtale, CycleError):
                # restrictions along different paths disagree
                continue


SMALL_SPACES = [discrete_space(["p"]), sierpinski(), chain_space(["a", "b", "c"]),
                FinSpace(["a", "b", "c"], [("a", "b"), ("a", "c")]),
                FinSpace(["a", "b", "c"], [("a", "c"), ("b", "c")]),
                FinSpace(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("b", "d")])]


@pytest.mark.parametrize("X", SMALL_SPACES, ids=lambda X: "-".join(X.points))
def test_stalk_equals_sections_over_minimal_open(X):
    for S in etale_spaces(X):
        for x in X.points:
            assert len(stalk(S, x)) == len(S.sections(minimal_open(X, x)))


def test_pullback_along_identity_is_a_copy():
    X = sierpinski()
    S = trivial_cover(X, ["u", "v"])
    P = pullback_etale(S, ContinuousMap.identity(X))
    iso = {(x, e): e for (x, e) in P.total.points}
    assert sorted(iso.values()) == sorted(S.total.points)
    for a, b in P.total.leq:
        assert S.total.le(iso[a], iso[b])
    for a, b in S.total.leq:
        pa, pb = (S.p(a), a), (S.p(b), b)
        assert P.total.le(pa, pb)


def test_pullback_of_point_cover_is_trivial_cover():
    pt = discrete_space(["p"])
    X = chain_space(["a", "b", "c"])
    S = trivial_cover(pt, ["u", "v"])
    P = pullback_etale(S, ContinuousMap(X, pt, {x: "p" for x in X.points}))
    T = trivial_cover(X, ["u", "v"])
    iso = {(x, ("p", a)): (x, a) for x in X.points for a in ("u", "v")}
    assert set(iso) == set(P.total.points)
    assert {(iso[a], iso[b]) for a, b in P.total.leq} == set(T.total.leq)


@pytest.mark.parametrize("Z", SMALL_SPACES[:4], ids=lambda X: "-".join(X.points))
def test_iterated_pullback_matches_composite(Z):
    """Pull back along g then f, or along g o f: canonical bijection ((x, (y, e)) -> (x, e))."""
    X = chain_space(["a", "b", "c"])
    Y = chain_space(["u", "v", "w"])
    for S in itertools.islice(etale_spaces(Z), 12):
        for zmap in itertools.product(Z.points, repeat=3):
            g_map = dict(zip(Y.points, zmap))
            try:
                g = ContinuousMap(Y, Z, g_map)
            except NotContinuous:
                continue
            f = ContinuousMap(X, Y, {"a": "u", "b": "u", "c": "w"})
            twice = pullback_etale(pullback_etale(S, g), f)
            once = pullback_etale(S, f.then(g))
            iso = {(x, (y, e)): (x, e) for (x, (y, e)) in twice.total.points}
            assert len(set(iso.values())) == len(iso)
            assert set(iso.values()) == set(once.total.points)
            assert {(iso[a], iso[b]) for a, b in twice.total.leq} == set(once.total.leq)
