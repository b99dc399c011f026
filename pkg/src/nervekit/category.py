"""Finite categories, functors, the Grothendieck nerve, and linear orders over finite spaces.

Arrows compose right to left: ``compose(g, f)`` is "g after f" and is
defined when ``src(g) == tgt(f)``.

An n-simplex of a nerve is stored as the tuple of values of a functor
[n] -> C on the arrows i <= j of [n], in lexicographic order of (i, j).
Reindexing along a monotone map is then plain precomposition.
"""

from __future__ import annotations

import itertools
from functools import cached_property

from ._util import canonical, pair_index, pairs, sort_key
from .errors import (CategoryAxiomViolation, FunctorViolation, InputError,
                     InvalidLinearOrder, NotACover, NotLocallyTotal, NotOpen)
from .finspace import EtaleSpace, FinSpace


class Category:
    """Minimal interface shared by explicit and lazily generated categories.

    Subclasses provide ``objects``, ``hom``, ``compose``, ``identity``,
    ``src`` and ``tgt``. ``is_groupoid`` is a hint: True when every arrow
    is known to be invertible, otherwise None.
    """

    is_groupoid = None

    def arrows(self):
        for a in self.objects:
            for b in self.objects:
                yield from self.hom(a, b)

    def hom_into(self, b):
        for a in self.objects:
            yield from self.hom(a, b)

    def hom_from(self, a):
        for b in self.objects:
            yield from self.hom(a, b)

    def hom_nonempty(self, a, b):
        return bool(self.hom(a, b))

    def inverse(self, f):
        a, b = self.src(f), self.tgt(f)
        ida, idb = self.identity(a), self.identity(b)
        for g in self.hom(b, a):
            if self.compose(g, f) == ida and self.compose(f, g) == idb:
                return g
        return None

    def is_iso(self, f):
        return self.inverse(f) is not None

    def automorphisms(self, a):
        return self.hom(a, a)

    def is_discrete(self):
        """Only identity arrows."""
        for a in self.objects:
            for b in self.objects:
                hs = self.hom(a, b)
                if a != b and hs:
                    return False
                if a == b and tuple(hs) != (self.identity(a),):
                    return False
        return True


class FinCategory(Category):
    """An explicit finite category given by composition and identity tables."""

    def __init__(self, objects, arrows, compose, identity, check=True):
        self.objects = canonical(objects)
        self._arrows = dict(arrows)
        self._compose = dict(compose)
        self._identity = dict(identity)
        homs = {}
        for f, (a, b) in self._arrows.items():
            homs.setdefault((a, b), []).append(f)
        self._hom = {k: canonical(v) for k, v in homs.items()}
        self._into = {}
        self._from = {}
        for f, (a, b) in self._arrows.items():
            self._into.setdefault(b, []).append(f)
            self._from.setdefault(a, []).append(f)
        if check:
            self.check()

    # -- interface -------------------------------------------------------
    def hom(self, a, b):
        return self._hom.get((a, b), ())

    def hom_into(self, b):
        return iter(self._into.get(b, ()))

    def hom_from(self, a):
        return iter(self._from.get(a, ()))

    def arrows(self):
        return iter(self.arrow_ids)

    @cached_property
    def arrow_ids(self):
        return canonical(self._arrows)

    def compose(self, g, f):
        try:
            return self._compose[(g, f)]
        except KeyError:
            raise InputError(f"arrows {g!r} and {f!r} are not composable",
                             witness=(g, f)) from None

    def identity(self, a):
        return self._identity[a]

    def src(self, f):
        return self._arrows[f][0]

    def tgt(self, f):
        return self._arrows[f][1]

    @cached_property
    def is_groupoid(self):
        return all(self.is_iso(f) for f in self._arrows) or None

    def __eq__(self, other):
        return isinstance(other, FinCategory) and self._arrows == other._arrows \
            and self._compose == other._compose and self._identity == other._identity

    def __hash__(self):
        return hash((self.objects, self.arrow_ids))

    def __repr__(self):
        return f"FinCategory({len(self.objects)} objects, {len(self._arrows)} arrows)"

    # -- validation -------------------------------------------------------
    def check(self):
        obs = set(self.objects)
        for f, (a, b) in self._arrows.items():
            if a not in obs or b not in obs:
                raise CategoryAxiomViolation(f"arrow {f!r} has unknown endpoints",
                                             witness=(f,))
        for a in self.objects:
            i = self._identity.get(a)
            if i is None or self._arrows.get(i) != (a, a):
                raise CategoryAxiomViolation(f"bad identity at {a!r}", witness=(a,))
        for f, (a, b) in self._arrows.items():
            for g in self._from.get(b, ()):
                h = self._compose.get((g, f))
                if h is None:
                    raise CategoryAxiomViolation("missing composite", witness=(g, f))
                if self._arrows.get(h) != (a, self._arrows[g][1]):
                    raise CategoryAxiomViolation("composite has wrong type",
                                                 witness=(g, f, h))
        for (g, f) in self._compose:
            if self._arrows[g][0] != self._arrows[f][1]:
                raise CategoryAxiomViolation("composite of non-composable pair",
                                             witness=(g, f))
        for f, (a, b) in self._arrows.items():
            if self._compose[(f, self._identity[a])] != f or \
                    self._compose[(self._identity[b], f)] != f:
                raise CategoryAxiomViolation("identity law fails", witness=(f,))
        for f, (a, b) in self._arrows.items():
            for g in self._from.get(b, ()):
                gf = self._compose[(g, f)]
                for h in self._from.get(self._arrows[g][1], ()):
                    if self._compose[(h, gf)] != self._compose[(self._compose[(h, g)], f)]:
                        raise CategoryAxiomViolation("associativity fails",
                                                     witness=(h, g, f))

    def to_json(self):
        from .serialize import category_to_json
        return category_to_json(self)


# -- constructors ----------------------------------------------------------

def group_category(elements, mult, obj="*"):
    """One-object category of a finite group (or monoid); ``mult(g, f)`` is g.f."""
    els = list(elements)
    unit = [e for e in els if all(mult(e, x) == x == mult(x, e) for x in els)]
    if not unit:
        raise CategoryAxiomViolation("no unit element")
    return FinCategory([obj], {g: (obj, obj) for g in els},
                       {(g, f): mult(g, f) for g in els for f in els}, {obj: unit[0]})


def cyclic_group(n, obj="*"):
    return group_category([str(k) for k in range(n)],
                          lambda g, f: str((int(g) + int(f)) % n), obj)


def poset_category(X):
    """A poset (FinSpace order) as a category: one arrow (a, b) for each a <= b."""
    arrows = {(a, b): (a, b) for (a, b) in X.leq}
    comp = {((b, c), (a, b2)): (a, c) for (b, c) in X.leq for (a, b2) in X.leq if b2 == b}
    return FinCategory(X.points, arrows, comp, {a: (a, a) for a in X.points})


def ordinal(n):
    """The category [n] = {0 < 1 < ... < n}."""
    return poset_category(FinSpace(range(n + 1), [(i, i + 1) for i in range(n)]))


def discrete_category(objects):
    objs = list(objects)
    return FinCategory(objs, {("id", a): (a, a) for a in objs},
                       {(("id", a), ("id", a)): ("id", a) for a in objs},
                       {a: ("id", a) for a in objs})


def chaotic_category(objects):
    """Exactly one arrow between any two objects (a groupoid)."""
    objs = list(objects)
    arrows = {(a, b): (a, b) for a in objs for b in objs}
    comp = {((b, c), (a, b)): (a, c) for a in objs for b in objs for c in objs}
    return FinCategory(objs, arrows, comp, {a: (a, a) for a in objs})


def opposite_category(C):
    """Same objects and arrow ids with source and target swapped.

    The Duskin nerve of locally_discrete(C) is the nerve of this category,
    because 1-cells of a simplex point from B_j to B_i.
    """
    arrows = {f: (C.tgt(f), C.src(f)) for f in C.arrows()}
    comp = {(f, g): C.compose(g, f) for (g, f) in _composable(C)}
    return FinCategory(C.objects, arrows, comp, {a: C.identity(a) for a in C.objects})


def _composable(C):
    return [(g, f) for f in C.arrows() for g in C.hom_from(C.tgt(f))]


def product_category(C, D):
    objs = [(a, b) for a in C.objects for b in D.objects]
    arrows = {(f, g): ((C.src(f), D.src(g)), (C.tgt(f), D.tgt(g)))
              for f in C.arrows() for g in D.arrows()}
    comp = {}
    for (f, g), (s, t) in arrows.items():
        for f2 in C.hom_from(t[0]):
            for g2 in D.hom_from(t[1]):
                comp[((f2, g2), (f, g))] = (C.compose(f2, f), D.compose(g2, g))
    return FinCategory(objs, arrows, comp,
                       {(a, b): (C.identity(a), D.identity(b)) for (a, b) in objs})


def materialize(C):
    """Explicit FinCategory copy of any (small enough) Category."""
    arrows = {f: (C.src(f), C.tgt(f)) for f in C.arrows()}
    comp = {}
    for f, (a, b) in arrows.items():
        for g in C.hom_from(b):
            comp[(g, f)] = C.compose(g, f)
    return FinCategory(C.objects, arrows, comp, {a: C.identity(a) for a in C.objects})


# -- functors ----------------------------------------------------------------

class Functor:
    """A functor given by object and arrow assignments (mappings or callables)."""

    def __init__(self, source, target, ob, ar, check=False):
        self.source = source
        self.target = target
        self._ob = ob
        self._ar = ar
        if check:
            self.check()

    def ob(self, x):
        return self._ob(x) if callable(self._ob) else self._ob[x]

    def ar(self, f):
        return self._ar(f) if callable(self._ar) else self._ar[f]

    def check(self):
        S, T = self.source, self.target
        tobs = set(T.objects)
        for a in S.objects:
            if self.ob(a) not in tobs:
                raise FunctorViolation("object image outside target", witness=(a,))
            if self.ar(S.identity(a)) != T.identity(self.ob(a)):
                raise FunctorViolation("identity not preserved", witness=(a,))
        for f in S.arrows():
            Ff = self.ar(f)
            if T.src(Ff) != self.ob(S.src(f)) or T.tgt(Ff) != self.ob(S.tgt(f)):
                raise FunctorViolation("source/target not preserved", witness=(f,))
            for g in S.hom_from(S.tgt(f)):
                if self.ar(S.compose(g, f)) != T.compose(self.ar(g), Ff):
                    raise FunctorViolation("composition not preserved", witness=(g, f))
        return True

    @classmethod
    def identity(cls, C):
        return cls(C, C, lambda x: x, lambda f: f)


def enumerate_functors(A, B):
    """All functors A -> B between explicit finite categories, canonically sorted.

    Backtracks over object images, then over arrow images with composition
    constraints checked as soon as both factors are assigned.
    """
    ids = {A.identity(a) for a in A.objects}
    arrows = [f for f in A.arrows() if f not in ids]
    results = []
    for obimg in itertools.product(B.objects, repeat=len(A.objects)):
        obmap = dict(zip(A.objects, obimg))
        armap = {A.identity(a): B.identity(obmap[a]) for a in A.objects}
        _extend_functor(A, B, obmap, armap, arrows, 0, results)
    return sorted(results, key=lambda F: sort_key((tuple(F.ob(a) for a in A.objects),
                                                   tuple(F.ar(f) for f in A.arrows()))))


def _extend_functor(A, B, obmap, armap, arrows, k, results):
    if k == len(arrows):
        results.append(Functor(A, B, dict(obmap), dict(armap)))
        return
    f = arrows[k]
    for g in B.hom(obmap[A.src(f)], obmap[A.tgt(f)]):
        armap[f] = g
        if _consistent(A, B, armap, f):
            _extend_functor(A, B, obmap, armap, arrows, k + 1, results)
        del armap[f]


def _consistent(A, B, armap, f):
    for h in A.hom_from(A.tgt(f)):
        if h in armap:
            c = A.compose(h, f)
            if c in armap and armap[c] != B.compose(armap[h], armap[f]):
                return False
    for h in A.hom_into(A.src(f)):
        if h in armap:
            c = A.compose(f, h)
            if c in armap and armap[c] != B.compose(armap[f], armap[h]):
                return False
    # f may itself be a composite of assigned arrows
    for h in A.hom_from(A.src(f)):
        if h in armap and h != f:
            for g in A.hom_from(A.tgt(h)):
                if g in armap and A.compose(g, h) == f \
                        and armap[f] != B.compose(armap[g], armap[h]):
                    return False
    return True


# -- Grothendieck nerve --------------------------------------------------------

def simplex_from_chain(C, chain, obj=None):
    """Full pair-indexed simplex from a chain of composable arrows."""
    if not chain:
        return (C.identity(obj),)
    n = len(chain)
    objs = [C.src(chain[0])] + [C.tgt(a) for a in chain]
    val = {}
    for i in range(n + 1):
        val[(i, i)] = C.identity(objs[i])
        for j in range(i + 1, n + 1):
            val[(i, j)] = C.compose(chain[j - 1], val[(i, j - 1)])
    return tuple(val[p] for p in pairs(n))


def grothendieck_nerve(C, n):
    """All functors [n] -> C, canonically sorted (pair-indexed tuples)."""
    if n < 0:
        raise InputError("nerve level must be >= 0")
    if n == 0:
        return canonical((C.identity(a),) for a in C.objects)
    out = []

    def rec(chain):
        if len(chain) == n:
            out.append(simplex_from_chain(C, chain))
            return
        for a in C.hom_from(C.tgt(chain[-1])):
            rec(chain + [a])

    for f in C.arrows():
        rec([f])
    return canonical(out)


def reindex_pairs(alpha, cell, n):
    """Precompose a pair-indexed n-simplex with alpha: [m] -> [n]."""
    idx = pair_index(n)
    m = len(alpha) - 1
    return tuple(cell[idx[(alpha[i], alpha[j])]] for (i, j) in pairs(m))


def nerve_simplicial(C, maxdim):
    """The nerve of C truncated at maxdim, as a TruncSSet."""
    from .simplicial import TruncSSet
    if maxdim < 1:
        raise InputError("maxdim must be >= 1")
    levels = [grothendieck_nerve(C, n) for n in range(maxdim + 1)]
    return TruncSSet.from_reindexing(levels, lambda alpha, x, n: reindex_pairs(alpha, x, n))


def simplex_objects(C, cell):
    """Vertices of a pair-indexed simplex."""
    n = _dim_from_pairs(len(cell))
    idx = pair_index(n)
    return tuple(C.src(cell[idx[(i, i)]]) for i in range(n + 1))


def _dim_from_pairs(k):
    n = 0
    while (n + 1) * (n + 2) // 2 < k:
        n += 1
    return n


# -- linear orders over finite spaces ----------------------------------------

class LinearOrder:
    """An etale space L -> X with an order subsheaf O of L x_X L, stalkwise linear.

    O is stored with its reflexive pairs.
    """

    def __init__(self, L, O, check=True):
        self.L = L
        self.O = frozenset(O)
        self.base = L.base
        if check:
            self.check()
        self._chains = {}

    def check(self):
        L, O = self.L, self.O
        for (y, z) in O:
            if L.p(y) != L.p(z):
                raise InvalidLinearOrder("order relates different stalks", witness=(y, z))
        for x in L.base.points:
            st = L.fiber(x)
            if not st:
                raise InvalidLinearOrder("empty stalk", witness=(x,))
            for y in st:
                if (y, y) not in O:
                    raise InvalidLinearOrder("not reflexive", witness=(y,))
                for z in st:
                    if y != z and ((y, z) in O) == ((z, y) in O):
                        raise InvalidLinearOrder("not total/antisymmetric", witness=(y, z))
                    for w in st:
                        if (y, z) in O and (z, w) in O and (y, w) not in O:
                            raise InvalidLinearOrder("not transitive", witness=(y, z, w))
        # subsheaf: open in the fiber product
        for (y, z) in O:
            for y2 in L.total.up(y):
                for z2 in L.total.up(z):
                    if L.p(y2) == L.p(z2) and (y2, z2) not in O:
                        raise InvalidLinearOrder("order is not an open subsheaf",
                                                 witness=(y, z, y2, z2))

    def le(self, y, z):
        return (y, z) in self.O

    def strict(self):
        return frozenset((y, z) for (y, z) in self.O if y != z)

    def sorted_stalk(self, x):
        st = self.L.fiber(x)
        return tuple(sorted(st, key=lambda y: sum((z, y) in self.O for z in st)))

    def chains(self, n):
        """n-chains y0 <= ... <= yn inside single stalks, canonically sorted."""
        if n not in self._chains:
            out = []
            for x in self.base.points:
                out += itertools.combinations_with_replacement(self.sorted_stalk(x), n + 1)
            self._chains[n] = canonical(out)
        return self._chains[n]

    def order_category(self):
        """The category with objects L and arrows O (discrete topology forgotten)."""
        arrows = {(y, z): (y, z) for (y, z) in self.O}
        comp = {((z, w), (y, z2)): (y, w) for (z, w) in self.O for (y, z2) in self.O if z2 == z}
        return FinCategory(self.L.total.points, arrows, comp,
                           {y: (y, y) for y in self.L.total.points})


def order_from_cover(X, index, sets):
    """Linear order from an ordered open cover.

    ``index`` is a FinSpace (the index poset), ``sets`` maps each index to an
    open subset of X. L is the disjoint union of the U_i with points (i, x),
    and (i, x) <= (j, x) iff i <= j.
    """
    for i in index.points:
        if i not in sets:
            raise InputError(f"no set for index {i!r}", witness=(i,))
        if not X.is_open(sets[i]):
            raise NotOpen(f"U_{i} is not open", witness=(i,))
    for x in X.points:
        idx = [i for i in index.points if x in sets[i]]
        if not idx:
            raise NotACover(f"point {x!r} is not covered", witness=(x,))
        for a in idx:
            for b in idx:
                if not (index.le(a, b) or index.le(b, a)):
                    raise NotLocallyTotal(f"indices {a!r}, {b!r} incomparable at {x!r}",
                                          witness=(x, a, b))
    pts = [(i, x) for i in index.points for x in canonical(sets[i])]
    rel = [((i, x), (i, y)) for (i, x) in pts for (j, y) in pts if i == j and X.le(x, y)]
    total = FinSpace(pts, rel)
    L = EtaleSpace(total, X, {(i, x): x for (i, x) in pts})
    O = [((i, x), (j, y)) for (i, x) in pts for (j, y) in pts if x == y and index.le(i, j)]
    return LinearOrder(L, O)


def trivial_order(X):
    """L = X with the diagonal order."""
    return order_from_cover(X, FinSpace(["u"]), {"u": set(X.points)})


def nerve_of_order(L, maxdim):
    """Nerve of a linear order: a simplicial space with each level etale over X."""
    from .simplicial import SimplicialSpace
    levels = [L.chains(n) for n in range(maxdim + 1)]
    spaces = []
    etale = []
    tot = L.L.total
    for n, cells in enumerate(levels):
        rel = [(c, c2) for c in cells for c2 in cells
               if all(tot.le(a, b) for a, b in zip(c, c2))]
        S = FinSpace(cells, rel)
        spaces.append(S)
        etale.append(EtaleSpace(S, L.base, {c: L.L.p(c[0]) for c in cells}))

    def reindex(alpha, x, n):
        return tuple(x[a] for a in alpha)

    return SimplicialSpace.from_reindexing(levels, reindex, spaces=spaces, over=etale)
