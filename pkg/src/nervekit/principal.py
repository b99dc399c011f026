"""Principal bundles over finite spaces and the augmented-linear-order side.

Covers bundles indexed by a small category, s-etale categories and their
sheaves and bundles, the Grothendieck construction, principal simplicial
sets, augmentations of nerves of linear orders, continuous normal lax
functors out of a linear order, and augmentations of products of two orders.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._util import Report, canonical, monotone_maps, pairs, sort_key, triples
from .category import FinCategory, poset_category
from .errors import (FunctorViolation, InputError, InvalidAction,
                     MonotonicityViolation, TruncationTooShallow)
from .finspace import ContinuousMap, EtaleSpace, FinSpace, SheafMap, open_inclusion


# -- C-bundles -----------------------------------------------------------------------

class CBundle:
    """A functor E from a finite category C to sheaves on X.

    ``E[c]`` is an EtaleSpace over X and ``maps[a]`` the sheaf map E(src a) -> E(tgt a).
    """

    def __init__(self, C, X, E, maps, check=True):
        self.C = C
        self.X = X
        self.E = dict(E)
        self.maps = {a: (m.mapping if isinstance(m, SheafMap) else dict(m))
                     for a, m in maps.items()}
        if check:
            self.check()

    def check(self):
        C = self.C
        for c in C.objects:
            if c not in self.E:
                raise InputError(f"no sheaf for object {c!r}", witness=(c,))
            if self.E[c].base != self.X:
                raise InputError(f"sheaf for {c!r} lives over another space", witness=(c,))
        for a in C.arrows():
            if a not in self.maps:
                raise FunctorViolation(f"no sheaf map for arrow {a!r}", witness=(a,))
            SheafMap(self.E[C.src(a)], self.E[C.tgt(a)], self.maps[a])
        for c in C.objects:
            m = self.maps[C.identity(c)]
            if any(m[e] != e for e in self.E[c].total.points):
                raise FunctorViolation("identity arrow does not act as identity", witness=(c,))
        for f in C.arrows():
            for g in C.hom_from(C.tgt(f)):
                gf = self.maps[C.compose(g, f)]
                for e in self.E[C.src(f)].total.points:
                    if gf[e] != self.maps[g][self.maps[f][e]]:
                        raise FunctorViolation("composition not preserved", witness=(g, f, e))

    def act(self, a, y):
        return self.maps[a][y]

    def stalk(self, c, x):
        return self.E[c].fiber(x)

    def to_json(self):
        from .serialize import bundle_to_json
        return bundle_to_json(self)


def is_principal(E, x):
    """Non-emptiness, transitivity and freeness of the stalks at x."""
    C = E.C
    rep = Report("principal_at_point", details={"point": x})
    stalks = {c: E.stalk(c, x) for c in C.objects}
    if not any(stalks.values()):
        rep.add(condition="i", point=x)
        return rep
    # (ii): collect, for every w in E(b)_x, the pairs it reaches
    reach = {}
    for b in C.objects:
        for w in stalks[b]:
            reach[(b, w)] = {(C.tgt(a), E.act(a, w)) for a in C.hom_from(b)}
    elems = [(c, y) for c in C.objects for y in stalks[c]]
    for i, p in enumerate(elems):
        for q in elems[i:]:
            if not any(p in r and q in r for r in reach.values()):
                rep.add(condition="ii", point=x, pair=(p, q))
    # (iii)
    for c in C.objects:
        for d in C.objects:
            hs = C.hom(c, d)
            for ia, a in enumerate(hs):
                for b_ in hs[ia + 1:]:
                    for y in stalks[c]:
                        if E.act(a, y) != E.act(b_, y):
                            continue
                        found = False
                        for g in C.hom_into(c):
                            if C.compose(a, g) != C.compose(b_, g):
                                continue
                            if any(E.act(g, z) == y for z in stalks[C.src(g)]):
                                found = True
                                break
                        if not found:
                            rep.add(condition="iii", point=x, arrows=(a, b_), element=y)
    return rep


def is_principal_bundle(E):
    rep = Report("principal_bundle")
    for x in E.X.points:
        r = is_principal(E, x)
        rep.violations.extend(r.violations)
    return rep


def group_bundle(G, P, action):
    """A one-object category G acting on an etale space P: ``action[(g, e)] = g.e``."""
    (obj,) = G.objects
    maps = {g: {e: action[(g, e)] for e in P.total.points} for g in G.arrows()}
    return CBundle(G, P.base, {obj: P}, maps)


def torsor_check(G, P, action):
    """Every stalk is a nonempty G-set with (g, e) -> (g.e, e) bijective."""
    rep = Report("torsor")
    els = list(G.arrows())
    for x in P.base.points:
        st = P.fiber(x)
        if not st:
            rep.add(point=x, problem="empty stalk")
            continue
        img = {(action[(g, e)], e) for g in els for e in st}
        if len(img) != len(els) * len(st) or len(img) != len(st) ** 2:
            rep.add(point=x, problem="action not free and transitive")
    return rep


def group_actions_on(G, elems):
    """All left actions of the group G on a finite set, as dicts (g, e) -> e'."""
    els = list(G.arrows())
    unit = G.identity(G.objects[0])
    out = []
    perms = list(itertools.permutations(elems))
    for choice in itertools.product(perms, repeat=len(els)):
        act = {}
        for g, perm in zip(els, choice):
            act.update({(g, e): perm[k] for k, e in enumerate(elems)})
        if any(act[(unit, e)] != e for e in elems):
            continue
        if all(act[(G.compose(h, g), e)] == act[(h, act[(g, e)])]
               for g in els for h in els for e in elems):
            out.append(act)
    return out


def poset_bundle(X, P, U):
    """The bundle of opens i -> U_i for a monotone family over the poset P."""
    for (i, j) in P.leq:
        if not set(U[i]) <= set(U[j]):
            raise MonotonicityViolation(f"U_{i} is not contained in U_{j}", witness=(i, j))
    C = poset_category(P)
    E = {i: open_inclusion(X, U[i]) for i in P.points}
    maps = {(i, j): {u: u for u in U[i]} for (i, j) in P.leq}
    return CBundle(C, X, E, maps)


def is_locally_directed_cover(X, P, U):
    """U covers X and every U_i n U_j is covered by the U_k with k <= i, j."""
    for (i, j) in P.leq:
        if not set(U[i]) <= set(U[j]):
            raise MonotonicityViolation(f"U_{i} is not contained in U_{j}", witness=(i, j))
    if set().union(*(set(U[i]) for i in P.points)) != set(X.points):
        return False
    for i in P.points:
        for j in P.points:
            lower = [k for k in P.points if P.le(k, i) and P.le(k, j)]
            cov = set().union(*(set(U[k]) for k in lower)) if lower else set()
            if not (set(U[i]) & set(U[j])) <= cov:
                return False
    return True


# -- s-etale categories ----------------------------------------------------------------

class SEtaleCategory:
    """A finite topological category whose source map is etale.

    Arrows f: s(f) -> t(f); ``compose[(g, f)]`` is g after f.
    """

    def __init__(self, objects, arrows, src, tgt, identity, compose, check=True):
        self.objects = objects
        self.arrows = arrows
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.identity = dict(identity)
        self.compose = dict(compose)
        if check:
            self.check()

    def check(self):
        s = ContinuousMap(self.arrows, self.objects, self.src)
        ContinuousMap(self.arrows, self.objects, self.tgt)
        ContinuousMap(self.objects, self.arrows, self.identity)
        EtaleSpace(self.arrows, self.objects, s)
        self.underlying()

    def underlying(self):
        return FinCategory(self.objects.points,
                           {f: (self.src[f], self.tgt[f]) for f in self.arrows.points},
                           self.compose, self.identity)

    def to_json(self):
        from .serialize import setale_category_to_json
        return setale_category_to_json(self)


def discrete_setale(X):
    arrows = FinSpace([("id", x) for x in X.points],
                      [(("id", a), ("id", b)) for (a, b) in X.leq])
    ids = {x: ("id", x) for x in X.points}
    return SEtaleCategory(X, arrows, {("id", x): x for x in X.points},
                          {("id", x): x for x in X.points}, ids,
                          {(("id", x), ("id", x)): ("id", x) for x in X.points})


def action_groupoid(X, G, right_action):
    """Objects X (discrete); arrows (x, g): x.g -> x for a right action of the group G."""
    els = list(G.arrows())
    unit = G.identity(G.objects[0])
    arrows = [(x, g) for x in X.points for g in els]
    src = {(x, g): right_action[(x, g)] for (x, g) in arrows}
    tgt = {(x, g): x for (x, g) in arrows}
    comp = {}
    for (x, g) in arrows:
        y = right_action[(x, g)]
        for h in els:
            # (x, g) o (x.g, h) = (x, g h)
            comp[((x, g), (y, h))] = (x, G.compose(g, h))
    return SEtaleCategory(X, FinSpace(arrows), src, tgt, {x: (x, unit) for x in X.points},
                          comp)


class CSheaf:
    """An etale space p: S -> C_0 with a right action x.f defined when p(x) = t(f)."""

    def __init__(self, C, S, action, check=True):
        self.C = C
        self.S = S
        self.action = dict(action)
        if check:
            self.check()

    def check(self):
        C, S, a = self.C, self.S, self.action
        if S.base != C.objects:
            raise InvalidAction("sheaf is not over the object space")
        for x in S.total.points:
            for f in C.arrows.points:
                if C.tgt[f] != S.p(x):
                    continue
                if (x, f) not in a:
                    raise InvalidAction("action undefined", witness=(x, f))
                if S.p(a[(x, f)]) != C.src[f]:
                    raise InvalidAction("p(x.f) != s(f)", witness=(x, f))
            if a.get((x, C.identity[S.p(x)])) != x:
                raise InvalidAction("identity does not act trivially", witness=(x,))
        for (g, f), gf in C.compose.items():
            for x in S.total.points:
                if S.p(x) == C.tgt[g] and a[(a[(x, g)], f)] != a[(x, gf)]:
                    raise InvalidAction("(x.g).f != x.(gf)", witness=(x, g, f))


class SEtaleBundle:
    """An etale space q: E -> X with pi: E -> C_0 and a fibrewise left action
    ``action[(a, e)]`` defined when s(a) = pi(e)."""

    def __init__(self, C, E, pi, action, check=True):
        self.C = C
        self.E = E
        self.pi = dict(pi)
        self.action = dict(action)
        if check:
            self.check()

    def check(self):
        C, E, pi, act = self.C, self.E, self.pi, self.action
        ContinuousMap(E.total, C.objects, pi)
        dom = []
        for e in E.total.points:
            for a in C.arrows.points:
                if C.src[a] != pi[e]:
                    continue
                dom.append((a, e))
                if (a, e) not in act:
                    raise InvalidAction("action undefined", witness=(a, e))
                v = act[(a, e)]
                if v not in E.total:
                    raise InvalidAction("action leaves the total space", witness=(a, e))
                if pi[v] != C.tgt[a]:
                    raise InvalidAction("pi(a.e) != t(a)", witness=(a, e))
                if E.p(v) != E.p(e):
                    raise InvalidAction("action is not fibrewise", witness=(a, e))
            if act.get((C.identity[pi[e]], e)) != e:
                raise InvalidAction("identity does not act trivially", witness=(e,))
        extra = set(act) - set(dom)
        if extra:
            raise InvalidAction("action given outside its domain", witness=canonical(extra)[0])
        for (b, a), ba in C.compose.items():
            for e in E.total.points:
                if pi[e] == C.src[a] and act[(b, act[(a, e)])] != act[(ba, e)]:
                    raise InvalidAction("(ba).e != b.(a.e)", witness=(b, a, e))
        for (a, e) in dom:
            for (a2, e2) in dom:
                if C.arrows.le(a, a2) and E.total.le(e, e2) \
                        and not E.total.le(act[(a, e)], act[(a2, e2)]):
                    raise InvalidAction("action is not continuous", witness=((a, e), (a2, e2)))

    def to_json(self):
        from .serialize import setale_bundle_to_json
        return setale_bundle_to_json(self)


def is_principal_setale(Bd):
    """Non-emptiness, transitivity and freeness for each stalk of an s-etale bundle."""
    C, E, pi, act = Bd.C, Bd.E, Bd.pi, Bd.action
    rep = Report("principal_setale")
    from_obj = {}
    for a in C.arrows.points:
        from_obj.setdefault(C.src[a], []).append(a)
    for x in E.base.points:
        st = E.fiber(x)
        if not st:
            rep.add(condition="i", point=x)
            continue
        reach = {w: {act[(a, w)] for a in from_obj.get(pi[w], ())} for w in st}
        for i, y in enumerate(st):
            for z in st[i:]:
                if not any(y in r and z in r for r in reach.values()):
                    rep.add(condition="ii", point=x, pair=(y, z))
        for y in st:
            outs = from_obj.get(pi[y], ())
            for i, a in enumerate(outs):
                for b in outs[i + 1:]:
                    if act[(a, y)] != act[(b, y)]:
                        continue
                    ok = any(C.tgt[g] == pi[y] and act[(g, w)] == y
                             and C.compose[(a, g)] == C.compose[(b, g)]
                             for w in st for g in from_obj.get(pi[w], ()))
                    if not ok:
                        rep.add(condition="iii", point=x, arrows=(a, b), element=y)
    return rep


def grothendieck_construction(K, spaces, maps):
    """Category of elements of a diagram of finite spaces over K.

    Objects (k, y) with y in Y_k; arrows (a, y): (k, y) -> (l, Y(a) y).
    The object and arrow spaces carry the order of the Y_k.
    """
    for a in K.arrows():
        m = maps[a]
        if m.source != spaces[K.src(a)] or m.target != spaces[K.tgt(a)]:
            raise FunctorViolation("map has the wrong endpoints", witness=(a,))
    for k in K.objects:
        if any(maps[K.identity(k)](y) != y for y in spaces[k].points):
            raise FunctorViolation("identity not preserved", witness=(k,))
    for f in K.arrows():
        for g in K.hom_from(K.tgt(f)):
            gf = maps[K.compose(g, f)]
            for y in spaces[K.src(f)].points:
                if gf(y) != maps[g](maps[f](y)):
                    raise FunctorViolation("composition not preserved", witness=(g, f, y))
    obj_pts = [(k, y) for k in K.objects for y in spaces[k].points]
    obj_rel = [((k, a), (k, b)) for k in K.objects for (a, b) in spaces[k].leq]
    arr_pts = [(a, y) for a in K.arrows() for y in spaces[K.src(a)].points]
    arr_rel = [((a, y), (a, z)) for a in K.arrows() for (y, z) in spaces[K.src(a)].leq]
    src = {(a, y): (K.src(a), y) for (a, y) in arr_pts}
    tgt = {(a, y): (K.tgt(a), maps[a](y)) for (a, y) in arr_pts}
    ident = {(k, y): (K.identity(k), y) for (k, y) in obj_pts}
    comp = {}
    for (a, y) in arr_pts:
        z = maps[a](y)
        for b in K.hom_from(K.tgt(a)):
            comp[((b, z), (a, y))] = (K.compose(b, a), y)
    return SEtaleCategory(FinSpace(obj_pts, obj_rel), FinSpace(arr_pts, arr_rel), src, tgt,
                          ident, comp)


def constant_diagram(K, X):
    spaces = {k: X for k in K.objects}
    maps = {a: ContinuousMap.identity(X) for a in K.arrows()}
    return spaces, maps


# -- principal simplicial sets ----------------------------------------------------------

def is_principal_ssets(S, maxdim=None):
    """Principality of S viewed as a covariant functor on the opposite of the
    truncated simplex category, decided over all objects and arrows in range."""
    N = S.maxdim if maxdim is None else maxdim
    if N < 3:
        raise TruncationTooShallow("principality of simplicial sets needs truncation >= 3")
    rep = Report("principal_simplicial_set")
    cells = [(n, x) for n in range(N + 1) for x in S.levels[n]]
    if not cells:
        rep.add(condition="i")
        return rep
    bit = {c: 1 << k for k, c in enumerate(cells)}
    reach = {}
    gammas = {}
    for (b, w) in cells:
        r = 0
        for c in range(N + 1):
            for g in monotone_maps(c, b):
                y = S.act(g, w, b)
                r |= bit[(c, y)]
                gammas.setdefault((c, y), set()).add(g)
        reach[(b, w)] = r
    full = (1 << len(cells)) - 1
    covered = {c: 0 for c in cells}
    for w, r in reach.items():
        for c in cells:
            if r & bit[c]:
                covered[c] |= r
    for c in cells:
        if covered[c] != full:
            missing = next(d for d in cells if not covered[c] & bit[d])
            rep.add(condition="ii", pair=(c, missing))
            break
    for (c, y) in cells:
        gs = gammas.get((c, y), ())
        for d in range(N + 1):
            ms = monotone_maps(d, c)
            for i, u in enumerate(ms):
                yu = S.act(u, y, c)
                for v in ms[i + 1:]:
                    if S.act(v, y, c) != yu:
                        continue
                    if not any(tuple(g[a] for a in u) == tuple(g[a] for a in v) for g in gs):
                        rep.add(condition="iii", cell=(c, y), arrows=(u, v))
                        break
    return rep


def is_nerve_of_linear_order(S):
    """Independent recognizer: nonempty, Segal maps bijective, and the level-1
    relation is a linear order (endpoint map injective, antisymmetric, total)."""
    from .simplicial import segal_map
    if not S.levels[0]:
        return False
    for n in range(2, S.maxdim + 1):
        if not segal_map(S, n).bijective:
            return False
    ends = [(S.d(1, 1, e), S.d(1, 0, e)) for e in S.levels[1]]
    if len(set(ends)) != len(ends):
        return False
    rel = set(ends)
    for a in S.levels[0]:
        for b in S.levels[0]:
            if a != b and ((a, b) in rel) == ((b, a) in rel):
                return False
    return True


# -- augmentations ----------------------------------------------------------------------

@dataclass
class Augmentation:
    """Levelwise maps aug[n]: NL_n -> N_n commuting with the simplicial operators."""

    maps: list

    def key(self):
        return tuple(canonical(m.items()) for m in self.maps)


def level_blocks(space):
    """Connected components of a level space (maps into discrete targets are constant on them)."""
    return sorted((canonical(c) for c in space.components()), key=sort_key)


def enumerate_augmentations(L, N, maxdim=None):
    """All simplicial maps NL -> N in range with continuous levels (N discrete).

    The default range is min(3, N.maxdim): nerves of bicategories are
    3-coskeletal, so maps agreeing up to level 3 agree everywhere.
    """
    from .category import nerve_of_order
    from .simplicial import enumerate_simplicial_maps
    D = min(3, N.maxdim) if maxdim is None else maxdim
    NL = nerve_of_order(L, D)
    blocks = {n: level_blocks(NL.spaces[n]) for n in range(D + 1)}
    sols = enumerate_simplicial_maps(NL, N, maxdim=D, blocks=blocks)
    return [Augmentation(s) for s in sols]


@dataclass(frozen=True)
class OrderLaxFunctor:
    """Continuous normal lax functor out of the order category of L.

    Values on points, on pairs y <= z and on triples y <= z <= w of a stalk.
    """

    objects: tuple
    one_cells: tuple
    two_cells: tuple

    def as_dicts(self):
        return dict(self.objects), dict(self.one_cells), dict(self.two_cells)


def _chains(L, n):
    return L.chains(n)


def _chain_blocks(L, n):
    tot = L.L.total
    cells = _chains(L, n)
    rel = [(c, d) for c in cells for d in cells if all(tot.le(a, b) for a, b in zip(c, d))]
    return level_blocks(FinSpace(cells, rel))


def enumerate_normal_lax_from_order(L, B):
    """All continuous normal lax functors from the order category of L to B.

    Solved directly from the defining equations (objects, 1-cells, 2-cells,
    tetrahedra) with values constant on connected components.
    """
    blocks = [("o", b) for b in _chain_blocks(L, 0)] + \
             [("f", b) for b in _chain_blocks(L, 1)] + \
             [("b", b) for b in _chain_blocks(L, 2)]
    where = {}
    for k, (kind, blk) in enumerate(blocks):
        for c in blk:
            where[c] = k
    quads = {}
    for q in _chains(L, 3):
        y0, y1, y2, y3 = q
        ts = [(y0, y2, y3), (y0, y1, y2), (y0, y1, y3), (y1, y2, y3)]
        last = max(where[t] for t in ts)
        quads.setdefault(last, []).append(q)
    ob, one, two = {}, {}, {}
    vc = B.vcomp
    out = []

    def coherent(q):
        i, j, k, l = q
        lhs = vc[(two[(i, k, l)], B.whisker_right(two[(i, j, k)], one[(k, l)]))]
        rhs = vc[(two[(i, j, l)], vc[(B.whisker_left(one[(i, j)], two[(j, k, l)]),
                                      B.assoc[(one[(i, j)], one[(j, k)], one[(k, l)])])])]
        return lhs == rhs

    def allowed(kind, c):
        if kind == "o":
            return set(B.objects)
        if kind == "f":
            y, z = c
            if y == z:
                return {B.id1[ob[(y,)]]}
            return set(B.one_hom(ob[(z,)], ob[(y,)]))
        y, z, w = c
        if y == z:
            return {B.lunit[one[(z, w)]]}
        if z == w:
            return {B.runit[one[(y, z)]]}
        return set(B.two_hom(B.hcomp1[(one[(y, z)], one[(z, w)])], one[(y, w)]))

    def rec(k):
        if k == len(blocks):
            out.append(OrderLaxFunctor(canonical((c[0], v) for c, v in ob.items()),
                                       canonical(one.items()), canonical(two.items())))
            return
        kind, blk = blocks[k]
        cands = None
        for c in blk:
            a = allowed(kind, c)
            cands = a if cands is None else cands & a
        target = ob if kind == "o" else one if kind == "f" else two
        for v in canonical(cands):
            for c in blk:
                target[c] = v
            if all(coherent(q) for q in quads.get(k, ())):
                rec(k + 1)
        for c in blk:
            target.pop(c, None)

    rec(0)
    return out


def lax_to_augmentation(Phi, L, maxdim=3):
    """The augmentation NL -> Duskin nerve read off a lax functor on L."""
    from .bicategory import NormalLaxFunctor
    ob, one, two = Phi.as_dicts()
    maps = []
    for n in range(maxdim + 1):
        m = {}
        for c in L.chains(n):
            m[c] = NormalLaxFunctor(n, tuple(ob[y] for y in c),
                                    tuple(one[(c[i], c[j])] for (i, j) in pairs(n)),
                                    tuple(two[(c[i], c[j], c[k])] for (i, j, k) in triples(n)))
        maps.append(m)
    return Augmentation(maps)


def augmentation_to_lax(aug):
    """Inverse of ``lax_to_augmentation``: read objects, 1-cells and 2-cells off
    levels 0, 1 and 2."""
    ob = {c: F.objects[0] for c, F in aug.maps[0].items()}
    one = {c: F.one_cell(0, 1) for c, F in aug.maps[1].items()}
    two = {c: F.two_cell(0, 1, 2) for c, F in aug.maps[2].items()}
    return OrderLaxFunctor(canonical((c[0], v) for c, v in ob.items()),
                           canonical(one.items()), canonical(two.items()))


# -- products of two linear orders ------------------------------------------------------------

def lin2_source(L, L2, maxdim_h, maxdim_v):
    """NL x_X NL' as a bisimplicial set together with its level spaces."""
    from .category import nerve_of_order
    from .simplicial import TruncBiSSet
    if L.base != L2.base:
        raise InputError("the two orders live over different spaces")
    A = nerve_of_order(L, maxdim_h)
    Bn = nerve_of_order(L2, maxdim_v)
    levels, spaces = {}, {}
    for n in range(maxdim_h + 1):
        for m in range(maxdim_v + 1):
            cells = [(c, d) for c in A.levels[n] for d in Bn.levels[m]
                     if A.over[n].p(c) == Bn.over[m].p(d)]
            levels[(n, m)] = canonical(cells)
            rel = [(p, q) for p in cells for q in cells
                   if A.spaces[n].le(p[0], q[0]) and Bn.spaces[m].le(p[1], q[1])]
            spaces[(n, m)] = FinSpace(cells, rel)
    Y = TruncBiSSet.from_reindexing(levels, maxdim_h, maxdim_v,
                                    lambda al, x, n, m: (A.act(al, x[0], n), x[1]),
                                    lambda al, x, n, m: (x[0], Bn.act(al, x[1], m)))
    return Y, spaces


def enumerate_lin2(L, L2, Y, maxdim_h=None, maxdim_v=None):
    """All bisimplicial maps NL x_X NL' -> Y in range, continuous into discrete Y."""
    from .simplicial import enumerate_bisimplicial_maps
    H = min(3, Y.maxdim_h) if maxdim_h is None else maxdim_h
    V = min(3, Y.maxdim_v) if maxdim_v is None else maxdim_v
    src, spaces = lin2_source(L, L2, H, V)
    blocks = {g: level_blocks(S) for g, S in spaces.items()}
    return enumerate_bisimplicial_maps(src, Y, H, V, blocks=blocks)
