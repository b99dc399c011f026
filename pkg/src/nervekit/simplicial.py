"""Truncated simplicial and bisimplicial sets, coskeleta, Segal maps and Cat-valued
simplicial objects.

Operators are indexed as usual: ``d(n, i, x)`` is the i-th face of an
n-simplex and ``s(n, j, x)`` the j-th degeneracy of an n-simplex (landing in
level n + 1). A monotone map alpha: [m] -> [n] is a tuple of images and acts
contravariantly through ``act(alpha, x, n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ._util import (Report, canonical, codegeneracy, coface, compose_maps,
                    monotone_maps)
from .category import Category, Functor
from .errors import InputError, TruncationTooShallow
from .finspace import ContinuousMap, FinSpace


@lru_cache(maxsize=None)
def _ops(alpha, n):
    """Elementary operator sequence computing Y(alpha) on level n.

    Returns a tuple of ('d', level, i) / ('s', level, j) to apply left to right.
    """
    m = len(alpha) - 1
    for j in range(m):
        if alpha[j] == alpha[j + 1]:
            rest = alpha[:j + 1] + alpha[j + 2:]
            return _ops(rest, n) + (("s", m - 1, j),)
    if m < n:
        img = set(alpha)
        i = next(k for k in range(n + 1) if k not in img)
        rest = tuple(a if a < i else a - 1 for a in alpha)
        return (("d", n, i),) + _ops(rest, n - 1)
    return ()


def apply_ops(ops, x, face, degen):
    for kind, lvl, i in ops:
        x = face(lvl, i, x) if kind == "d" else degen(lvl, i, x)
    return x


class TruncSSet:
    """A simplicial set truncated at ``maxdim`` with explicit face/degeneracy tables."""

    def __init__(self, levels, faces, degens):
        self.levels = [tuple(lv) for lv in levels]
        self.maxdim = len(self.levels) - 1
        self.faces = {k: dict(v) for k, v in faces.items()}
        self.degens = {k: dict(v) for k, v in degens.items()}
        self._sets = [frozenset(lv) for lv in self.levels]

    @classmethod
    def from_reindexing(cls, levels, reindex, **kw):
        """Build the tables from ``reindex(alpha, x, n)`` (precomposition)."""
        levels = [tuple(lv) for lv in levels]
        sets = [frozenset(lv) for lv in levels]
        faces, degens = {}, {}
        top = len(levels) - 1
        for n in range(1, top + 1):
            for i in range(n + 1):
                a = coface(n, i)
                faces[(n, i)] = {x: reindex(a, x, n) for x in levels[n]}
        for n in range(top):
            for j in range(n + 1):
                a = codegeneracy(n, j)
                degens[(n, j)] = {x: reindex(a, x, n) for x in levels[n]}
        for (n, i), tab in faces.items():
            for x, y in tab.items():
                if y not in sets[n - 1]:
                    raise InputError(f"face d_{i} of {x!r} leaves level {n - 1}",
                                     witness=(n, i, x))
        for (n, j), tab in degens.items():
            for x, y in tab.items():
                if y not in sets[n + 1]:
                    raise InputError(f"degeneracy s_{j} of {x!r} leaves level {n + 1}",
                                     witness=(n, j, x))
        return cls(levels, faces, degens, **kw)

    def d(self, n, i, x):
        return self.faces[(n, i)][x]

    def s(self, n, j, x):
        return self.degens[(n, j)][x]

    def act(self, alpha, x, n):
        return apply_ops(_ops(tuple(alpha), n), x, self.d, self.s)

    def contains(self, n, x):
        return x in self._sets[n]

    def counts(self):
        return tuple(len(lv) for lv in self.levels)

    def degenerate_cells(self, n):
        out = set()
        if n >= 1:
            for j in range(n):
                out.update(self.degens[(n - 1, j)].values())
        return out

    def nondegenerate(self, n):
        deg = self.degenerate_cells(n)
        return tuple(x for x in self.levels[n] if x not in deg)

    def truncate(self, k):
        return TruncSSet(self.levels[:k + 1],
                         {key: v for key, v in self.faces.items() if key[0] <= k},
                         {key: v for key, v in self.degens.items() if key[0] < k})

    def relabel(self, bijections):
        """Isomorphic copy along per-level bijections ``bijections[n][x]``."""
        b = bijections
        return TruncSSet([[b[n][x] for x in lv] for n, lv in enumerate(self.levels)],
                         {(n, i): {b[n][x]: b[n - 1][y] for x, y in t.items()}
                          for (n, i), t in self.faces.items()},
                         {(n, j): {b[n][x]: b[n + 1][y] for x, y in t.items()}
                          for (n, j), t in self.degens.items()})

    def to_json(self):
        from .serialize import sset_to_json
        return sset_to_json(self)

    def __repr__(self):
        return f"{type(self).__name__}(counts={self.counts()})"


class SimplicialSpace(TruncSSet):
    """A truncated simplicial object in finite spaces.

    ``spaces[n]`` has the level-n cells as points. ``over``, when given, holds
    an etale space over a fixed base X for every level (a simplicial sheaf on X).
    """

    def __init__(self, levels, faces, degens, spaces=None, over=None):
        super().__init__(levels, faces, degens)
        if spaces is None:
            spaces = [FinSpace(lv) for lv in self.levels]
        self.spaces = list(spaces)
        self.over = list(over) if over is not None else None
        for n, S in enumerate(self.spaces):
            if set(S.points) != set(self.levels[n]):
                raise InputError(f"space at level {n} does not match the cells")
        for (n, i), t in self.faces.items():
            ContinuousMap(self.spaces[n], self.spaces[n - 1], t)
        for (n, j), t in self.degens.items():
            ContinuousMap(self.spaces[n], self.spaces[n + 1], t)

    def operator_map(self, alpha, n):
        """Y(alpha): Y_n -> Y_m as a ContinuousMap."""
        m = len(alpha) - 1
        return ContinuousMap(self.spaces[n], self.spaces[m],
                             {x: self.act(alpha, x, n) for x in self.levels[n]}, check=False)


def constant_sset(cells, maxdim):
    cells = canonical(cells)
    return TruncSSet.from_reindexing([cells] * (maxdim + 1), lambda a, x, n: x)


def sset_disjoint_union(parts):
    """Coproduct of truncated simplicial sets of equal maxdim; cells become (k, x)."""
    parts = list(parts)
    top = parts[0].maxdim
    if any(Y.maxdim != top for Y in parts):
        raise InputError("disjoint union needs equal truncations")
    levels = [[(k, x) for k, Y in enumerate(parts) for x in Y.levels[n]] for n in range(top + 1)]
    return TruncSSet.from_reindexing(levels, lambda a, c, n: (c[0], parts[c[0]].act(a, c[1], n)))


def attach_simplex(Y, name, faces):
    """Glue a new nondegenerate simplex along its boundary.

    ``faces`` lists d_0 x, ..., d_n x as cells of level n - 1 (empty for a
    vertex) and must be compatible. New cells are (name, sigma) for the
    surjections sigma: [m] -> [n] with m <= maxdim; existing cells keep their ids.
    """
    n = len(faces) - 1 if faces else 0
    if n > Y.maxdim:
        raise TruncationTooShallow(f"cannot attach a {n}-simplex at maxdim {Y.maxdim}")
    for i, f in enumerate(faces):
        if f not in Y._sets[n - 1]:
            raise InputError(f"face {i} is not a cell of level {n - 1}", witness=(i, f))

    def surjections(m):
        return [a for a in monotone_maps(m, n) if set(a) == set(range(n + 1))]

    added = [[(name, s) for s in surjections(m)] for m in range(Y.maxdim + 1)]
    new = {c for lv in added for c in lv}
    clash = [c for m, lv in enumerate(added) for c in lv if c in Y._sets[m]]
    if clash:
        raise InputError(f"cell id {clash[0]!r} already used", witness=(clash[0],))
    levels = [list(Y.levels[m]) + added[m] for m in range(Y.maxdim + 1)]

    def reindex(alpha, c, m):
        if c not in new:
            return Y.act(alpha, c, m)
        comp = tuple(c[1][a] for a in alpha)
        missing = [k for k in range(n + 1) if k not in comp]
        if not missing:
            return (name, comp)
        k = missing[0]
        # comp factors as delta_k o rest with rest: [len(alpha) - 1] -> [n - 1]
        rest = tuple(v if v < k else v - 1 for v in comp)
        return Y.act(rest, faces[k], n - 1)

    return TruncSSet.from_reindexing(levels, reindex)


# -- simplicial identities -----------------------------------------------------

def check_simplicial_identities(Y):
    """Every violated simplicial identity, with the witnessing cell."""
    rep = Report("simplicial_identities")
    N = Y.maxdim
    d, s = Y.d, Y.s
    for n in range(2, N + 1):
        for x in Y.levels[n]:
            for j in range(n + 1):
                for i in range(j):
                    a = d(n - 1, i, d(n, j, x))
                    b = d(n - 1, j - 1, d(n, i, x))
                    if a != b:
                        rep.add(identity=f"d{i} d{j} = d{j - 1} d{i}", level=n, cell=x,
                                lhs=a, rhs=b)
    for n in range(0, N):
        for x in Y.levels[n]:
            for j in range(n + 1):
                y = s(n, j, x)
                for i in range(n + 2):
                    if n + 1 < 1:
                        continue
                    lhs = d(n + 1, i, y)
                    if i in (j, j + 1):
                        rhs, name = x, f"d{i} s{j} = id"
                    elif i < j:
                        rhs, name = s(n - 1, j - 1, d(n, i, x)), f"d{i} s{j} = s{j - 1} d{i}"
                    else:
                        rhs, name = s(n - 1, j, d(n, i - 1, x)), f"d{i} s{j} = s{j} d{i - 1}"
                    if lhs != rhs:
                        rep.add(identity=name, level=n, cell=x, lhs=lhs, rhs=rhs)
    for n in range(0, N - 1):
        for x in Y.levels[n]:
            for j in range(n + 1):
                for i in range(j + 1):
                    a = s(n + 1, i, s(n, j, x))
                    b = s(n + 1, j + 1, s(n, i, x))
                    if a != b:
                        rep.add(identity=f"s{i} s{j} = s{j + 1} s{i}", level=n, cell=x,
                                lhs=a, rhs=b)
    return rep


def check_simplicial_map(f, Y, Z, maxdim=None):
    """Report on whether per-level dicts ``f[n]`` commute with all faces and degeneracies."""
    N = min(Y.maxdim, Z.maxdim) if maxdim is None else maxdim
    rep = Report("simplicial_map")
    for n in range(N + 1):
        for x in Y.levels[n]:
            if x not in f[n] or not Z.contains(n, f[n][x]):
                rep.add(problem="undefined or outside target", level=n, cell=x)
                continue
            if n >= 1:
                for i in range(n + 1):
                    if f[n - 1][Y.d(n, i, x)] != Z.d(n, i, f[n][x]):
                        rep.add(problem=f"d{i}", level=n, cell=x)
            if n < N:
                for j in range(n + 1):
                    if f[n + 1][Y.s(n, j, x)] != Z.s(n, j, f[n][x]):
                        rep.add(problem=f"s{j}", level=n, cell=x)
    return rep


def is_levelwise_bijection(f, Y, Z):
    return all(len(set(f[n].values())) == len(Y.levels[n]) == len(Z.levels[n])
               and set(f[n]) == set(Y.levels[n]) for n in range(len(f)))


# -- coskeleta -------------------------------------------------------------------

@dataclass
class Coskeleton:
    """Level n of Cosk_k(Y) together with the unit map Y_n -> Cosk_k(Y)_n."""

    k: int
    n: int
    cells: tuple
    unit: dict = None

    @property
    def image(self):
        return set(self.unit.values()) if self.unit is not None else None

    @property
    def injective(self):
        return len(self.image) == len(self.unit)

    @property
    def bijective(self):
        return self.injective and len(self.image) == len(self.cells)


def compatible_tuples(cells, face, n):
    """Tuples (x_0, ..., x_n) of (n-1)-cells with d_i x_j = d_{j-1} x_i for i < j."""
    cells = tuple(cells)
    if n == 1:
        return [(a, b) for a in cells for b in cells]
    by_first = {}
    for c in cells:
        by_first.setdefault(face(0, c), []).append(c)
    out = []

    def rec(tup):
        p = len(tup)
        if p == n + 1:
            out.append(tuple(tup))
            return
        cands = by_first.get(face(p - 1, tup[0]), ())
        for c in cands:
            if all(face(i, c) == face(p - 1, tup[i]) for i in range(1, p)):
                tup.append(c)
                rec(tup)
                tup.pop()

    for c in cells:
        rec([c])
    return out


def coskeleton_level(Y, k, n):
    """Cosk_k(Y)_n as compatible boundary tuples, with the unit map from Y_n."""
    if not (0 <= k < n <= Y.maxdim + 1):
        raise TruncationTooShallow(f"need k < n <= maxdim + 1 (k={k}, n={n}, "
                                   f"maxdim={Y.maxdim})")
    levels = {j: Y.levels[j] for j in range(k + 1)}

    def facefn(j):
        if j <= k:
            return lambda i, x: Y.d(j, i, x)
        return lambda i, x: x[i]

    for j in range(k + 1, n + 1):
        levels[j] = canonical(compatible_tuples(levels[j - 1], facefn(j - 1), j))
    unit = None
    if n <= Y.maxdim:
        cache = {}

        def u(j, x):
            if j <= k:
                return x
            key = (j, x)
            if key not in cache:
                cache[key] = tuple(u(j - 1, Y.d(j, i, x)) for i in range(j + 1))
            return cache[key]

        unit = {x: u(n, x) for x in Y.levels[n]}
    return Coskeleton(k, n, levels[n], unit)


def is_k_coskeletal(Y, k):
    """c_n : Y_n -> Cosk_{n-1}(Y)_n bijective for k < n <= maxdim."""
    if Y.maxdim < k + 2:
        raise TruncationTooShallow(f"checking {k}-coskeletality needs maxdim >= {k + 2}")
    rep = Report(f"{k}-coskeletal")
    for n in range(k + 1, Y.maxdim + 1):
        c = coskeleton_level(Y, n - 1, n)
        inv = {}
        for x, b in c.unit.items():
            if b in inv:
                rep.add(level=n, problem="not injective", cells=(inv[b], x))
            inv.setdefault(b, x)
        missing = [b for b in c.cells if b not in inv]
        if missing:
            rep.add(level=n, problem="not surjective", boundary=missing[0],
                    count=len(missing))
    rep.details["range"] = list(range(k + 1, Y.maxdim + 1))
    return rep


# -- Segal maps ------------------------------------------------------------------

@dataclass
class SegalMap:
    n: int
    mapping: dict
    target: tuple

    @property
    def injective(self):
        return len(set(self.mapping.values())) == len(self.mapping)

    @property
    def surjective(self):
        return set(self.mapping.values()) == set(self.target)

    @property
    def bijective(self):
        return self.injective and self.surjective


def spine(Y, x, n):
    return tuple(Y.act((k - 1, k), x, n) for k in range(1, n + 1))


def segal_map(Y, n):
    """Y_n -> Y_1 x_{Y_0} ... x_{Y_0} Y_1. Returns a SegalMap for a TruncSSet,
    a Functor for a CatSSet."""
    if n < 2:
        raise InputError("Segal maps are defined for n >= 2")
    if isinstance(Y, CatSSet):
        return segal_functor(Y, n)
    target = []

    def rec(tup):
        if len(tup) == n:
            target.append(tuple(tup))
            return
        for u in Y.levels[1]:
            if not tup or Y.d(1, 0, tup[-1]) == Y.d(1, 1, u):
                tup.append(u)
                rec(tup)
                tup.pop()

    rec([])
    return SegalMap(n, {x: spine(Y, x, n) for x in Y.levels[n]}, canonical(target))


# -- category-level predicates -----------------------------------------------------

def _components(C, objs=None):
    """Connected components of a groupoid via hom non-emptiness."""
    objs = list(C.objects if objs is None else objs)
    comps, seen = [], set()
    for a in objs:
        if a in seen:
            continue
        comp = [b for b in objs if b not in seen and (b == a or C.hom_nonempty(a, b))]
        seen.update(comp)
        comps.append(comp)
    return comps


def _both_groupoids(F):
    return bool(F.source.is_groupoid) and bool(F.target.is_groupoid)


def is_fully_faithful(F, witness=None):
    """Hom-set bijectivity. For groupoids: automorphism groups plus reflection of
    connectivity, which is equivalent and avoids enumerating every hom-set."""
    S, T = F.source, F.target
    if _both_groupoids(F):
        for a in S.objects:
            auts = S.automorphisms(a)
            imgs = {F.ar(g) for g in auts}
            if len(imgs) != len(auts):
                if witness is not None:
                    witness.append(("not faithful on automorphisms", a))
                return False
            if len(T.automorphisms(F.ob(a))) != len(auts):
                if witness is not None:
                    witness.append(("not full on automorphisms", a))
                return False
        reps = [c[0] for c in _components(S)]
        for i, a in enumerate(reps):
            for b in reps[i + 1:]:
                if T.hom_nonempty(F.ob(a), F.ob(b)) or T.hom_nonempty(F.ob(b), F.ob(a)):
                    if witness is not None:
                        witness.append(("not full: components merged", (a, b)))
                    return False
        return True
    for a in S.objects:
        for b in S.objects:
            hs = S.hom(a, b)
            imgs = {F.ar(f) for f in hs}
            if len(imgs) != len(hs):
                if witness is not None:
                    witness.append(("not faithful", (a, b)))
                return False
            if len(T.hom(F.ob(a), F.ob(b))) != len(hs):
                if witness is not None:
                    witness.append(("not full", (a, b)))
                return False
    return True


def is_essentially_surjective(F, witness=None):
    S, T = F.source, F.target
    image = {F.ob(a) for a in S.objects}
    if _both_groupoids(F):
        reps = {F.ob(c[0]) for c in _components(S)}
        for t in T.objects:
            if t in image:
                continue
            if not any(T.hom_nonempty(r, t) for r in reps):
                if witness is not None:
                    witness.append(("not essentially surjective", t))
                return False
        return True
    for t in T.objects:
        if t in image:
            continue
        if not any(T.is_iso(f) for r in image for f in T.hom(r, t)):
            if witness is not None:
                witness.append(("not essentially surjective", t))
            return False
    return True


def is_equivalence_of_categories(F, witness=None):
    return is_fully_faithful(F, witness) and is_essentially_surjective(F, witness)


def is_surjective_on_objects(F):
    return {F.ob(a) for a in F.source.objects} == set(F.target.objects)


def is_isomorphism_of_categories(F, witness=None):
    img = [F.ob(a) for a in F.source.objects]
    if len(set(img)) != len(img) or set(img) != set(F.target.objects):
        if witness is not None:
            witness.append(("not bijective on objects", None))
        return False
    return is_fully_faithful(F, witness)


def _isos_into(C, e):
    if C.is_groupoid:
        return list(C.hom_into(e))
    return [f for f in C.hom_into(e) if C.is_iso(f)]


def is_discrete_isofibration(P, witness=None):
    """Every iso b -> P(e) lifts to a unique iso e' -> e."""
    S, T = P.source, P.target
    for e in S.objects:
        lifts = {}
        for eps in _isos_into(S, e):
            lifts.setdefault(P.ar(eps), []).append(eps)
        for beta in _isos_into(T, P.ob(e)):
            got = lifts.get(beta, [])
            if len(got) != 1:
                if witness is not None:
                    witness.append((e, beta, len(got)))
                return False
    return True


# -- Cat-valued simplicial objects -------------------------------------------------

class LimitCategory(Category):
    """Tuples of objects/arrows from component categories subject to equations
    ``op_p(x_p) == op_q(x_q)``; ``ops`` act on objects and arrows alike via
    ``ob_op(op, x)`` / ``ar_op(op, f)``.
    """

    def __init__(self, components, constraints, ob_op, ar_op):
        self.components = list(components)
        self.constraints = list(constraints)
        self._ob_op = ob_op
        self._ar_op = ar_op
        self.is_groupoid = True if all(c.is_groupoid for c in self.components) else None
        self._hom = {}
        self._opcache = {}  # (which, op, x) -> value, shared by all solves
        self._later = {}
        for (p, op_p, q, op_q) in self.constraints:
            lo, hi = (p, q) if p < q else (q, p)
            op_lo, op_hi = (op_p, op_q) if p < q else (op_q, op_p)
            self._later.setdefault(hi, []).append((lo, op_lo, op_hi))
        self.objects = canonical(self._solve([c.objects for c in self.components],
                                             self._ob_op))

    def _solve(self, domains, opfn, limit=None):
        out = []
        k = len(domains)
        cache = self._opcache.setdefault(opfn, {})

        def val(op, x):
            key = (op, x)
            v = cache.get(key)
            if v is None:
                v = cache[key] = opfn(op, x)
            return v

        # candidates at position p indexed by the values their constraints must match
        index = {}
        for p in range(k):
            cons = self._later.get(p, ())
            if cons:
                idx = {}
                for c in domains[p]:
                    idx.setdefault(tuple(val(op_hi, c) for (_, _, op_hi) in cons), []).append(c)
                index[p] = idx

        def rec(tup):
            p = len(tup)
            if p == k:
                out.append(tuple(tup))
                return limit is not None and len(out) >= limit
            if p in index:
                key = tuple(val(op_lo, tup[lo]) for (lo, op_lo, _) in self._later[p])
                cands = index[p].get(key, ())
            else:
                cands = domains[p]
            for c in cands:
                tup.append(c)
                if rec(tup):
                    return True
                tup.pop()
            return False

        rec([])
        return out

    def _hom_domains(self, a, b):
        return [self.components[p].hom(a[p], b[p]) for p in range(len(a))]

    def hom(self, a, b):
        key = (a, b)
        if key not in self._hom:
            # component homs are canonical, so the solver output is already ordered
            self._hom[key] = tuple(self._solve(self._hom_domains(a, b), self._ar_op))
        return self._hom[key]

    def hom_nonempty(self, a, b):
        if (a, b) in self._hom:
            return bool(self._hom[(a, b)])
        return bool(self._solve(self._hom_domains(a, b), self._ar_op, limit=1))

    def compose(self, g, f):
        return tuple(C.compose(x, y) for C, x, y in zip(self.components, g, f))

    def identity(self, a):
        return tuple(C.identity(x) for C, x in zip(self.components, a))

    def src(self, f):
        return tuple(C.src(x) for C, x in zip(self.components, f))

    def tgt(self, f):
        return tuple(C.tgt(x) for C, x in zip(self.components, f))


class CatSSet:
    """A truncated simplicial object in finite categories.

    ``act_ob(alpha, x, n)`` / ``act_ar(alpha, f, n)`` give the action of a
    monotone alpha: [m] -> [n] on objects and arrows of level n.
    """

    def __init__(self, categories, act_ob, act_ar):
        self.categories = list(categories)
        self.maxdim = len(self.categories) - 1
        self.act_ob = act_ob
        self.act_ar = act_ar

    def level(self, n):
        return self.categories[n]

    def operator(self, alpha, n):
        m = len(alpha) - 1
        return Functor(self.categories[n], self.categories[m],
                       lambda x: self.act_ob(alpha, x, n),
                       lambda f: self.act_ar(alpha, f, n))

    def face(self, n, i):
        return self.operator(coface(n, i), n)

    def degeneracy(self, n, j):
        return self.operator(codegeneracy(n, j), n)

    def objects_sset(self):
        levels = [C.objects for C in self.categories]
        return TruncSSet.from_reindexing(levels, self.act_ob)

    def arrows_sset(self):
        levels = [canonical(C.arrows()) for C in self.categories]
        return TruncSSet.from_reindexing(levels, self.act_ar)

    @classmethod
    def discrete(cls, Y):
        """A simplicial set as a levelwise discrete Cat-valued object."""
        from .category import discrete_category
        cats = [discrete_category(lv) for lv in Y.levels]

        def act_ar(alpha, f, n):
            return ("id", Y.act(alpha, f[1], n))

        return cls(cats, Y.act, act_ar)

    def times_constant(self, E):
        """Levelwise product with a fixed category E (operators act trivially on E)."""
        from .category import product_category
        cats = [product_category(materialize_if_needed(C), E) for C in self.categories]

        def act_ob(alpha, x, n):
            return (self.act_ob(alpha, x[0], n), x[1])

        def act_ar(alpha, f, n):
            return (self.act_ar(alpha, f[0], n), f[1])

        return CatSSet(cats, act_ob, act_ar)

    def check_simplicial_identities(self):
        """Identities on the object and arrow simplicial sets (materializes arrows)."""
        a = check_simplicial_identities(self.objects_sset())
        b = check_simplicial_identities(self.arrows_sset())
        rep = Report("cat_simplicial_identities", a.violations + b.violations)
        return rep


def materialize_if_needed(C):
    from .category import FinCategory, materialize
    return C if isinstance(C, FinCategory) else materialize(C)


def coskeleton_category(X, n):
    """Cosk_{n-1}(X)_n for a CatSSet X (needs level n - 1 >= 1)."""
    if n < 2 or n - 1 > X.maxdim:
        raise TruncationTooShallow(f"Cosk_{n - 1}(X)_{n} needs 2 <= n <= maxdim + 1")
    C = X.level(n - 1)
    cons = [(i, coface(n - 1, j - 1), j, coface(n - 1, i))
            for j in range(n + 1) for i in range(j)]
    return LimitCategory([C] * (n + 1), cons,
                         lambda a, x: X.act_ob(a, x, n - 1),
                         lambda a, f: X.act_ar(a, f, n - 1))


def unit_functor(X, n):
    """c_n : X_n -> Cosk_{n-1}(X)_n."""
    K = coskeleton_category(X, n)
    faces = [coface(n, i) for i in range(n + 1)]
    return Functor(X.level(n), K,
                   lambda x: tuple(X.act_ob(a, x, n) for a in faces),
                   lambda f: tuple(X.act_ar(a, f, n) for a in faces))


def segal_category(X, n):
    """X_1 x_{X_0} ... x_{X_0} X_1 (n factors) as a LimitCategory."""
    C1 = X.level(1)
    cons = [(k, (1,), k + 1, (0,)) for k in range(n - 1)]
    return LimitCategory([C1] * n, cons,
                         lambda a, x: X.act_ob(a, x, 1),
                         lambda a, f: X.act_ar(a, f, 1))


def segal_functor(X, n):
    K = segal_category(X, n)
    edges = [(k - 1, k) for k in range(1, n + 1)]
    return Functor(X.level(n), K,
                   lambda x: tuple(X.act_ob(e, x, n) for e in edges),
                   lambda f: tuple(X.act_ar(e, f, n) for e in edges))


def cat_is_coskeletal(X, k, witness=None):
    """c_n an isomorphism of categories for k < n <= maxdim."""
    for n in range(k + 1, X.maxdim + 1):
        w = []
        if not is_isomorphism_of_categories(unit_functor(X, n), w):
            if witness is not None:
                witness.append({"level": n, "witness": w})
            return False
    return True


def is_tamsamani(X):
    if X.maxdim < 3:
        raise TruncationTooShallow("is_tamsamani needs truncation >= 3")
    if not X.level(0).is_discrete():
        return False
    return all(is_equivalence_of_categories(segal_functor(X, n))
               for n in range(2, X.maxdim + 1))


def is_simpson(X):
    """X_0 discrete and every Segal functor fully faithful and surjective on objects."""
    if X.maxdim < 3:
        raise TruncationTooShallow("is_simpson needs truncation >= 3")
    if not X.level(0).is_discrete():
        return False
    for n in range(2, X.maxdim + 1):
        S = segal_functor(X, n)
        if not (is_surjective_on_objects(S) and is_fully_faithful(S)):
            return False
    return True


def check_lp_characterization(X):
    """The four conditions characterizing 2-nerves of bicategories, evaluated in range."""
    if X.maxdim < 4:
        raise TruncationTooShallow("the characterization check needs truncation >= 4")
    rep = Report("lp_characterization")
    results = {}
    w = []
    results["i_3_coskeletal"] = cat_is_coskeletal(X, 3, w)
    if not results["i_3_coskeletal"]:
        rep.add(condition="i", witness=w)
    results["ii_X0_discrete"] = X.level(0).is_discrete()
    if not results["ii_X0_discrete"]:
        rep.add(condition="ii", witness="non-identity arrow at level 0")
    ok3 = True
    for n in range(2, X.maxdim + 1):
        w = []
        if not is_equivalence_of_categories(segal_functor(X, n), w):
            ok3 = False
            rep.add(condition="iii", level=n, witness=w)
    results["iii_segal_equivalences"] = ok3
    ok4 = True
    for n in (2, 3):
        w = []
        if not is_discrete_isofibration(unit_functor(X, n), w):
            ok4 = False
            rep.add(condition="iv", level=n, witness=w)
    results["iv_c2_c3_discrete_isofibrations"] = ok4
    rep.details.update(results)
    return rep


# -- bisimplicial sets ------------------------------------------------------------------

class TruncBiSSet:
    """Bisimplicial set Y_{n,m}, n horizontal and m vertical, truncated per axis."""

    def __init__(self, levels, maxdim_h, maxdim_v, dh, sh, dv, sv):
        self.levels = {k: tuple(v) for k, v in levels.items()}
        self.maxdim_h = maxdim_h
        self.maxdim_v = maxdim_v
        self.dh, self.sh, self.dv, self.sv = dh, sh, dv, sv

    @classmethod
    def from_reindexing(cls, levels, maxdim_h, maxdim_v, reindex_h, reindex_v):
        dh, sh, dv, sv = {}, {}, {}, {}
        for (n, m), cells in levels.items():
            for i in range(n + 1):
                if n >= 1:
                    dh[(n, m, i)] = {x: reindex_h(coface(n, i), x, n, m) for x in cells}
                if n < maxdim_h:
                    sh[(n, m, i)] = {x: reindex_h(codegeneracy(n, i), x, n, m) for x in cells}
            for i in range(m + 1):
                if m >= 1:
                    dv[(n, m, i)] = {x: reindex_v(coface(m, i), x, n, m) for x in cells}
                if m < maxdim_v:
                    sv[(n, m, i)] = {x: reindex_v(codegeneracy(m, i), x, n, m) for x in cells}
        return cls(levels, maxdim_h, maxdim_v, dh, sh, dv, sv)

    def row(self, m):
        """Horizontal simplicial set at vertical degree m."""
        return TruncSSet([self.levels[(n, m)] for n in range(self.maxdim_h + 1)],
                         {(n, i): self.dh[(n, m, i)] for n in range(1, self.maxdim_h + 1)
                          for i in range(n + 1)},
                         {(n, j): self.sh[(n, m, j)] for n in range(self.maxdim_h)
                          for j in range(n + 1)})

    def column(self, n):
        return TruncSSet([self.levels[(n, m)] for m in range(self.maxdim_v + 1)],
                         {(m, i): self.dv[(n, m, i)] for m in range(1, self.maxdim_v + 1)
                          for i in range(m + 1)},
                         {(m, j): self.sv[(n, m, j)] for m in range(self.maxdim_v)
                          for j in range(m + 1)})

    def counts(self):
        return {k: len(v) for k, v in sorted(self.levels.items())}

    def to_json(self):
        from .serialize import bisset_to_json
        return bisset_to_json(self)


def check_bisimplicial_identities(Y):
    rep = Report("bisimplicial_identities")
    for m in range(Y.maxdim_v + 1):
        for v in check_simplicial_identities(Y.row(m)).violations:
            rep.add(axis="horizontal", m=m, **v)
    for n in range(Y.maxdim_h + 1):
        for v in check_simplicial_identities(Y.column(n)).violations:
            rep.add(axis="vertical", n=n, **v)
    hops = [("d", Y.dh, -1), ("s", Y.sh, +1)]
    vops = [("d", Y.dv, -1), ("s", Y.sv, +1)]
    for (n, m), cells in Y.levels.items():
        for hk, htab, hshift in hops:
            for vk, vtab, vshift in vops:
                for i in range(n + 1):
                    if (n, m, i) not in htab:
                        continue
                    for j in range(m + 1):
                        if (n, m, j) not in vtab:
                            continue
                        n2, m2 = n + hshift, m + vshift
                        if (n2, m, j) not in vtab or (n, m2, i) not in htab:
                            continue
                        for x in cells:
                            a = vtab[(n2, m, j)][htab[(n, m, i)][x]]
                            b = htab[(n, m2, i)][vtab[(n, m, j)][x]]
                            if a != b:
                                rep.add(identity=f"{hk}h{i} {vk}v{j} commute", level=(n, m),
                                        cell=x)
    return rep


def diagonal(Y):
    N = min(Y.maxdim_h, Y.maxdim_v)
    levels = [Y.levels[(n, n)] for n in range(N + 1)]
    faces = {(n, i): {x: Y.dv[(n - 1, n, i)][Y.dh[(n, n, i)][x]] for x in levels[n]}
             for n in range(1, N + 1) for i in range(n + 1)}
    degens = {(n, j): {x: Y.sv[(n + 1, n, j)][Y.sh[(n, n, j)][x]] for x in levels[n]}
              for n in range(N) for j in range(n + 1)}
    return TruncSSet(levels, faces, degens)


def swap_axes(Y):
    levels = {(m, n): v for (n, m), v in Y.levels.items()}
    flip = lambda t: {(m, n, i): v for (n, m, i), v in t.items()}
    return TruncBiSSet(levels, Y.maxdim_v, Y.maxdim_h, flip(Y.dv), flip(Y.sv),
                       flip(Y.dh), flip(Y.sh))


def external_product(Y1, Y2):
    """(Y1 [x] Y2)_{n,m} = Y1_n x Y2_m."""
    levels = {(n, m): [(a, b) for a in Y1.levels[n] for b in Y2.levels[m]]
              for n in range(Y1.maxdim + 1) for m in range(Y2.maxdim + 1)}
    return TruncBiSSet.from_reindexing(
        levels, Y1.maxdim, Y2.maxdim,
        lambda al, x, n, m: (Y1.act(al, x[0], n), x[1]),
        lambda al, x, n, m: (x[0], Y2.act(al, x[1], m)))


def constant_bisset(cells, maxdim_h, maxdim_v):
    cells = canonical(cells)
    levels = {(n, m): cells for n in range(maxdim_h + 1) for m in range(maxdim_v + 1)}
    return TruncBiSSet.from_reindexing(levels, maxdim_h, maxdim_v,
                                       lambda a, x, n, m: x, lambda a, x, n, m: x)


# -- map enumeration ------------------------------------------------------------------

def _graded_maps(grades, blocks, src_faces, src_degen, tgt_cells, tgt_faces, tgt_degen):
    """Enumerate graded maps commuting with faces and degeneracies.

    ``blocks[g]`` partitions the source cells of grade g into groups that must
    share an image (continuity into a discrete target). Faces of a grade come
    strictly earlier in ``grades``.
    """
    index = {}
    for g in grades:
        idx = {}
        for z in tgt_cells[g]:
            idx.setdefault(tgt_faces(g, z), []).append(z)
        index[g] = idx
    order = [(g, blk) for g in grades for blk in blocks[g]]
    where = {(g, x): k for k, (g, blk) in enumerate(order) for x in blk}
    # a block is ready once every block holding one of its faces is assigned
    deps = []
    for g, blk in order:
        d = set()
        for x in blk:
            dg = src_degen(g, x)
            if dg is not None:
                d.add(where[(dg[1], dg[2])])
            else:
                d.update(where[c] for c in src_faces(g, x))
        deps.append(d)
    users = [[] for _ in order]
    for k, d in enumerate(deps):
        for j in d:
            users[j].append(k)
    waiting = [len(d) for d in deps]
    ready = {k for k, w in enumerate(waiting) if w == 0}
    sols = []
    f = {g: {} for g in grades}

    def candidates(g, x):
        dg = src_degen(g, x)
        if dg is not None:
            op, g2, y = dg
            return {tgt_degen(op, g2, f[g2][y])}
        key = tuple(f[g2][y] for (g2, y) in src_faces(g, x))
        return set(index[g].get(key, ()))

    def block_candidates(k):
        g, blk = order[k]
        cands = None
        for x in blk:
            c = candidates(g, x)
            cands = c if cands is None else cands & c
            if not cands:
                return set()
        return cands

    def rec(left):
        if not left:
            sols.append({g: dict(v) for g, v in f.items()})
            return
        # most constrained ready block first; an empty one means a dead end
        best, best_c = None, None
        for k in sorted(ready):
            c = block_candidates(k)
            if best is None or len(c) < len(best_c):
                best, best_c = k, c
                if not c:
                    return
        g, blk = order[best]
        ready.discard(best)
        opened = []
        for u in users[best]:
            waiting[u] -= 1
            if waiting[u] == 0:
                ready.add(u)
                opened.append(u)
        for z in canonical(best_c):
            for x in blk:
                f[g][x] = z
            rec(left - 1)
        for x in blk:
            f[g].pop(x, None)
        for u in users[best]:
            waiting[u] += 1
        ready.difference_update(opened)
        ready.add(best)

    rec(len(order))
    return sols


def _degen_lookup(Y, N):
    out = {}
    for n in range(N):
        for j in range(n + 1):
            for y, x in Y.degens[(n, j)].items():
                out.setdefault((n + 1, x), (j, n, y))
    return out


def enumerate_simplicial_maps(Y, Z, maxdim=None, blocks=None):
    """All simplicial maps tr Y -> tr Z (levels <= maxdim), as lists of dicts."""
    N = min(Y.maxdim, Z.maxdim) if maxdim is None else maxdim
    grades = list(range(N + 1))
    if blocks is None:
        blocks = {n: [[x] for x in Y.levels[n]] for n in grades}
    deg = _degen_lookup(Y, N)

    def src_faces(n, x):
        return [(n - 1, Y.d(n, i, x)) for i in range(n + 1)] if n else []

    def src_degen(n, x):
        r = deg.get((n, x))
        return None if r is None else (r[0], r[1], r[2])

    def tgt_faces(n, z):
        return tuple(Z.d(n, i, z) for i in range(n + 1)) if n else ()

    def tgt_degen(j, n, z):
        return Z.s(n, j, z)

    sols = _graded_maps(grades, blocks, src_faces, src_degen,
                        {n: Z.levels[n] for n in grades}, tgt_faces, tgt_degen)
    return [[s[n] for n in grades] for s in sols]


def enumerate_bisimplicial_maps(Y, Z, maxdim_h=None, maxdim_v=None, blocks=None):
    H = min(Y.maxdim_h, Z.maxdim_h) if maxdim_h is None else maxdim_h
    V = min(Y.maxdim_v, Z.maxdim_v) if maxdim_v is None else maxdim_v
    grades = sorted(((n, m) for n in range(H + 1) for m in range(V + 1)),
                    key=lambda g: (g[0] + g[1], g))
    if blocks is None:
        blocks = {g: [[x] for x in Y.levels[g]] for g in grades}
    deg = {}
    for (n, m) in grades:
        for j in range(n + 1):
            if n < H:
                for y, x in Y.sh[(n, m, j)].items():
                    deg.setdefault(((n + 1, m), x), (("h", j), (n, m), y))
        for j in range(m + 1):
            if m < V:
                for y, x in Y.sv[(n, m, j)].items():
                    deg.setdefault(((n, m + 1), x), (("v", j), (n, m), y))

    def src_faces(g, x):
        n, m = g
        out = [((n - 1, m), Y.dh[(n, m, i)][x]) for i in range(n + 1)] if n else []
        out += [((n, m - 1), Y.dv[(n, m, i)][x]) for i in range(m + 1)] if m else []
        return out

    def src_degen(g, x):
        return deg.get((g, x))

    def tgt_faces(g, z):
        n, m = g
        out = [Z.dh[(n, m, i)][z] for i in range(n + 1)] if n else []
        out += [Z.dv[(n, m, i)][z] for i in range(m + 1)] if m else []
        return tuple(out)

    def tgt_degen(op, g2, z):
        axis, j = op
        n, m = g2
        return Z.sh[(n, m, j)][z] if axis == "h" else Z.sv[(n, m, j)][z]

    return _graded_maps(grades, blocks, src_faces, src_degen,
                        {g: Z.levels[g] for g in grades}, tgt_faces, tgt_degen)


# -- sheaves on simplicial spaces ----------------------------------------------------------

@dataclass
class SheafOnSSpace:
    """Sheaves S^n on the levels of a simplicial space with structure maps.

    ``structure[(m, alpha)]`` is the map Y(alpha)^* S^n -> S^m for alpha:
    [n] -> [m], given on pairs (y, e) with y in Y_m and e in S^n over Y(alpha)(y).
    """

    base: SimplicialSpace
    sheaves: list
    structure: dict = field(default_factory=dict)

    def pullback_domain(self, alpha, m):
        n = len(alpha) - 1
        S = self.sheaves[n]
        return [(y, e) for y in self.base.levels[m]
                for e in S.fiber(self.base.act(alpha, y, m))]


def all_operators(maxdim):
    return [(m, alpha) for m in range(maxdim + 1) for n in range(maxdim + 1)
            for alpha in monotone_maps(n, m)]


def validate_sheaf_on_sspace(S):
    """Normalization and the composition square for every composable pair in range."""
    rep = Report("sheaf_on_simplicial_space")
    Y = S.base
    N = Y.maxdim
    ops = all_operators(N)
    for (m, alpha) in ops:
        tab = S.structure.get((m, alpha))
        if tab is None:
            rep.add(condition="structure", alpha=alpha, m=m, problem="missing map")
            continue
        Sm = S.sheaves[m]
        for (y, e) in S.pullback_domain(alpha, m):
            v = tab.get((y, e))
            if v is None or v not in Sm.total or Sm.p(v) != y:
                rep.add(condition="structure", alpha=alpha, m=m, point=(y, e),
                        problem="not a map over Y_m")
    if not rep.ok:
        return rep
    # continuity of each structure map on the pullback's product order
    for (m, alpha) in ops:
        tab = S.structure[(m, alpha)]
        n = len(alpha) - 1
        dom = S.pullback_domain(alpha, m)
        for (y, e) in dom:
            for (y2, e2) in dom:
                if Y.spaces[m].le(y, y2) and S.sheaves[n].total.le(e, e2) \
                        and not S.sheaves[m].total.le(tab[(y, e)], tab[(y2, e2)]):
                    rep.add(condition="structure", alpha=alpha, m=m,
                            problem="not continuous", points=((y, e), (y2, e2)))
    for m in range(N + 1):
        ident = tuple(range(m + 1))
        tab = S.structure[(m, ident)]
        for (y, e) in S.pullback_domain(ident, m):
            if tab[(y, e)] != e:
                rep.add(condition="i", alpha=ident, point=(y, e), got=tab[(y, e)])
    for (m, alpha) in ops:
        n = len(alpha) - 1
        for k in range(N + 1):
            for beta in monotone_maps(m, k):
                ba = compose_maps(beta, alpha)
                Sa = S.structure[(m, alpha)]
                Sb = S.structure[(k, beta)]
                Sba = S.structure[(k, ba)]
                for z in Y.levels[k]:
                    yb = Y.act(beta, z, k)
                    for e in S.sheaves[n].fiber(Y.act(alpha, yb, m)):
                        lhs = Sb[(z, Sa[(yb, e)])]
                        rhs = Sba[(z, e)]
                        if lhs != rhs:
                            rep.add(condition="ii", alpha=alpha, beta=beta, cell=z, point=e,
                                    lhs=lhs, rhs=rhs)
    return rep


def pulled_back_sheaf(base, T):
    """S^n = pi_n^* T for a simplicial space augmented over X (``base.over``)."""
    from .finspace import pullback_etale
    if base.over is None:
        raise InputError("base has no augmentation to a space")
    X = T.base
    sheaves = []
    for n, E in enumerate(base.over):
        pi = ContinuousMap(base.spaces[n], X, E.projection.mapping)
        sheaves.append(pullback_etale(T, pi))
    structure = {}
    for (m, alpha) in all_operators(base.maxdim):
        n = len(alpha) - 1
        tab = {}
        for y in base.levels[m]:
            y2 = base.act(alpha, y, m)
            for e in sheaves[n].fiber(y2):
                tab[(y, e)] = (y, e[1])
        structure[(m, alpha)] = tab
    return SheafOnSSpace(base, sheaves, structure)


def constant_base_sheaf(Y0, T, maxdim):
    """Constant simplicial space at Y0 with S^n = T and identity structure maps."""
    levels = [Y0.points] * (maxdim + 1)
    base = SimplicialSpace.from_reindexing(levels, lambda a, x, n: x,
                                           spaces=[Y0] * (maxdim + 1))
    structure = {}
    for (m, alpha) in all_operators(maxdim):
        structure[(m, alpha)] = {(y, e): e for y in Y0.points for e in T.fiber(y)}
    return SheafOnSSpace(base, [T] * (maxdim + 1), structure)
