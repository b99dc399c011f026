"""Finite sober spaces as posets, continuous maps, and etale spaces.

Convention: ``x <= y`` in the specialization order means x lies in the
closure of {y}. Open sets are the up-sets, so the smallest open
neighbourhood of x is the principal up-set of x.
"""

from __future__ import annotations

import itertools

from ._util import canonical, sort_key
from .errors import CycleError, InputError, NotContinuous, NotEtale, UnknownPoint


class FinSpace:
    """A finite T0 (equivalently sober) space given by its specialization order."""

    __slots__ = ("points", "leq", "_up", "_down", "_pointset")

    def __init__(self, points, leq=()):
        pts = canonical(set(points))
        pointset = frozenset(pts)
        rel = {(p, p) for p in pts}
        for a, b in leq:
            if a not in pointset or b not in pointset:
                raise UnknownPoint(f"relation mentions unknown point {(a, b)!r}",
                                   witness=(a, b))
            rel.add((a, b))
        # transitive closure; spaces are tiny so the cubic loop is fine
        up = {p: {q for (a, q) in rel if a == p} for p in pts}
        changed = True
        while changed:
            changed = False
            for p in pts:
                new = set(up[p])
                for q in up[p]:
                    new |= up[q]
                if new != up[p]:
                    up[p] = new
                    changed = True
        for p in pts:
            for q in up[p]:
                if q != p and p in up[q]:
                    raise CycleError(f"points {p!r} and {q!r} are topologically "
                                     "indistinguishable (not T0)", witness=(p, q))
        self.points = pts
        self._pointset = pointset
        self._up = {p: frozenset(up[p]) for p in pts}
        self._down = {p: frozenset(q for q in pts if p in up[q]) for p in pts}
        self.leq = frozenset((p, q) for p in pts for q in up[p])

    # -- basic queries -------------------------------------------------
    def __contains__(self, x):
        return x in self._pointset

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        return isinstance(other, FinSpace) and self.leq == other.leq \
            and self._pointset == other._pointset

    def __hash__(self):
        return hash((self._pointset, self.leq))

    def __repr__(self):
        return f"FinSpace({list(self.points)!r})"

    def le(self, a, b):
        return b in self._up[a]

    def check_point(self, x):
        if x not in self._pointset:
            raise UnknownPoint(f"unknown point {x!r}", witness=(x,))

    def up(self, x):
        self.check_point(x)
        return self._up[x]

    def down(self, x):
        self.check_point(x)
        return self._down[x]

    def is_open(self, subset):
        s = frozenset(subset)
        return all(self._up[p] <= s for p in s)

    def opens(self):
        """All up-sets, sorted by size then canonical encoding."""
        found = set()
        for r in range(len(self.points) + 1):
            for combo in itertools.combinations(self.points, r):
                if self.is_open(combo):
                    found.add(frozenset(combo))
        return sorted(found, key=lambda s: (len(s), sort_key(s)))

    def covering_pairs(self):
        """Pairs a < b with nothing strictly in between."""
        out = []
        for a in self.points:
            for b in self._up[a]:
                if a == b:
                    continue
                if not any(c not in (a, b) and b in self._up[c] for c in self._up[a]):
                    out.append((a, b))
        return out

    def components(self):
        """Connected components of the comparability graph (= topological components)."""
        seen, comps = set(), []
        for p in self.points:
            if p in seen:
                continue
            comp, stack = set(), [p]
            while stack:
                q = stack.pop()
                if q in comp:
                    continue
                comp.add(q)
                stack.extend(self._up[q] | self._down[q])
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def subspace(self, subset):
        s = set(subset)
        return FinSpace(s, [(a, b) for (a, b) in self.leq if a in s and b in s])

    def to_json(self):
        from .serialize import space_to_json
        return space_to_json(self)


def validate_space(points, leq=()):
    """Build a FinSpace from raw point ids and relation pairs.

    Takes the reflexive-transitive closure and raises CycleError on an
    antisymmetry violation.
    """
    return FinSpace(points, [tuple(p) for p in leq])


def minimal_open(X, x):
    return X.up(x)


def discrete_space(points):
    return FinSpace(points)


def chain_space(points):
    pts = list(points)
    return FinSpace(pts, list(zip(pts, pts[1:])))


def sierpinski():
    return FinSpace(["0", "1"], [("0", "1")])


def product_space(X, Y):
    pts = [(x, y) for x in X.points for y in Y.points]
    rel = [((a, y), (b, y)) for (a, b) in X.leq for y in Y.points]
    rel += [((x, a), (x, b)) for (a, b) in Y.leq for x in X.points]
    return FinSpace(pts, rel)


def disjoint_union(spaces):
    """Coproduct of a mapping tag -> space; points become (tag, point)."""
    pts, rel = [], []
    for tag, X in spaces.items():
        pts += [(tag, p) for p in X.points]
        rel += [((tag, a), (tag, b)) for (a, b) in X.leq]
    return FinSpace(pts, rel)


class ContinuousMap:
    __slots__ = ("source", "target", "mapping")

    def __init__(self, source, target, mapping, check=True):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        if check:
            self._check()

    def _check(self):
        for p in self.source.points:
            if p not in self.mapping:
                raise InputError(f"map undefined at {p!r}", witness=(p,))
            if self.mapping[p] not in self.target:
                raise UnknownPoint(f"image {self.mapping[p]!r} of {p!r} not in target",
                                   witness=(p, self.mapping[p]))
        for a, b in self.source.leq:
            if not self.target.le(self.mapping[a], self.mapping[b]):
                raise NotContinuous(f"map is not monotone on {a!r} <= {b!r}",
                                    witness=(a, b))

    def __call__(self, x):
        return self.mapping[x]

    def __eq__(self, other):
        return isinstance(other, ContinuousMap) and self.source == other.source \
            and self.target == other.target and self.mapping == other.mapping

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.mapping.items())))

    def then(self, other):
        """other o self."""
        return ContinuousMap(self.source, other.target,
                             {p: other.mapping[q] for p, q in self.mapping.items()},
                             check=False)

    @classmethod
    def identity(cls, X):
        return cls(X, X, {p: p for p in X.points}, check=False)


class EtaleSpace:
    """A sheaf presented as a local homeomorphism p: total -> base."""

    __slots__ = ("total", "base", "projection", "_fibers")

    def __init__(self, total, base, projection, check=True):
        if not isinstance(projection, ContinuousMap):
            projection = ContinuousMap(total, base, projection)
        self.total = total
        self.base = base
        self.projection = projection
        fibers = {x: [] for x in base.points}
        for e in total.points:
            fibers[projection.mapping[e]].append(e)
        self._fibers = {x: tuple(v) for x, v in fibers.items()}
        if check:
            self._check()

    def _check(self):
        p = self.projection.mapping
        for e in self.total.points:
            upe = self.total.up(e)
            img = {p[u] for u in upe}
            target = self.base.up(p[e])
            if len(img) != len(upe) or img != set(target):
                raise NotEtale(f"projection is not a bijection from the minimal open "
                               f"of {e!r} onto that of its image", witness=(e,))
            for a in upe:
                for b in upe:
                    if self.base.le(p[a], p[b]) and not self.total.le(a, b):
                        raise NotEtale(f"projection does not reflect order at "
                                       f"{(a, b)!r}", witness=(e, a, b))

    def p(self, e):
        return self.projection.mapping[e]

    def fiber(self, x):
        self.base.check_point(x)
        return self._fibers[x]

    def __eq__(self, other):
        return isinstance(other, EtaleSpace) and self.projection == other.projection

    def __hash__(self):
        return hash(self.projection)

    def __repr__(self):
        sizes = [len(self._fibers[x]) for x in self.base.points]
        return f"EtaleSpace(stalk sizes {sizes})"

    def sections(self, U):
        """All continuous sections over the open set U, as dicts."""
        U = canonical(U)
        if not self.base.is_open(U):
            raise InputError("sections are only defined over open sets", witness=tuple(U))
        out = []
        for choice in itertools.product(*(self._fibers[x] for x in U)):
            s = dict(zip(U, choice))
            if all(self.total.le(s[a], s[b]) for a in U for b in U if self.base.le(a, b)):
                out.append(s)
        return out

    def to_json(self):
        from .serialize import etale_to_json
        return etale_to_json(self)


def stalk(S, x):
    """The fiber of S over x (equal to the sections over the minimal open of x)."""
    return S.fiber(x)


def pullback_etale(S, f):
    """Inverse image of the etale space S (over Y) along f: X -> Y."""
    if f.target != S.base:
        raise InputError("pullback: map target differs from the sheaf's base")
    X = f.source
    pts = [(x, e) for x in X.points for e in S.fiber(f(x))]
    rel = [((x, e), (x2, e2)) for (x, e) in pts for (x2, e2) in pts
           if X.le(x, x2) and S.total.le(e, e2)]
    total = FinSpace(pts, rel)
    return EtaleSpace(total, X, {(x, e): x for (x, e) in pts})


def identity_etale(X):
    return EtaleSpace(X, X, ContinuousMap.identity(X))


def trivial_cover(X, fiber):
    """X x F with F discrete."""
    pts = [(x, a) for x in X.points for a in fiber]
    rel = [((x, a), (y, a)) for (x, y) in X.leq for a in fiber]
    return EtaleSpace(FinSpace(pts, rel), X, {(x, a): x for (x, a) in pts})


def open_inclusion(X, U):
    """The etale space U -> X of an open subset."""
    if not X.is_open(U):
        raise InputError("subset is not open", witness=tuple(canonical(U)))
    return EtaleSpace(X.subspace(U), X, {u: u for u in U})


def etale_from_fibers(base, fibers, restrict):
    """Etale space from a functor on the specialization order.

    ``fibers[x]`` is the stalk at x and ``restrict[(x, y)]`` maps the stalk
    at x to the stalk at y for each covering pair x < y.
    """
    pts = [(x, a) for x in base.points for a in fibers[x]]
    rel = [((x, a), (y, restrict[(x, y)][a])) for (x, y) in base.covering_pairs()
           for a in fibers[x]]
    total = FinSpace(pts, rel)
    return EtaleSpace(total, base, {(x, a): x for (x, a) in pts})


class SheafMap:
    """A continuous map of etale spaces over the same base commuting with projections."""

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source, target, mapping, check=True):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        if check:
            if source.base != target.base:
                raise InputError("sheaf map between sheaves on different bases")
            ContinuousMap(source.total, target.total, self.mapping)
            for e, v in self.mapping.items():
                if source.p(e) != target.p(v):
                    raise InputError("sheaf map does not commute with projections",
                                     witness=(e, v))

    def __call__(self, e):
        return self.mapping[e]

    def __eq__(self, other):
        return isinstance(other, SheafMap) and self.mapping == other.mapping

    def __hash__(self):
        return hash(frozenset(self.mapping.items()))

    def then(self, other):
        return SheafMap(self.source, other.target,
                        {e: other.mapping[v] for e, v in self.mapping.items()}, check=False)

    @classmethod
    def identity(cls, S):
        return cls(S, S, {e: e for e in S.total.points}, check=False)
