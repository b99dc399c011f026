"""Finite bicategories, normal lax functors from ordinals, icons, and the
Duskin and Lack-Paoli nerves.

Conventions:
  * a 1-cell f: A -> B has ``one_cells[f] == (A, B)``; ``hcomp1[(g, f)]`` is g o f.
  * a 2-cell a: f => g has ``two_cells[a] == (f, g)``; ``vcomp[(b, a)]`` is b . a.
  * ``hcomp2[(b, a)]`` is the horizontal composite b o a.
  * ``assoc[(f, g, h)]`` is alpha: (f o g) o h => f o (g o h).
  * ``lunit[f]``: i_B o f => f and ``runit[f]``: f o i_A => f.

A normal lax functor [n] -> B has 1-cells f_ij: B_j -> B_i for i <= j and
2-cells beta_ijk: f_ij o f_jk => f_ik. All pairs and triples are stored,
degenerate ones included, so reindexing along monotone maps is plain
precomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ._util import Report, canonical, pair_index, pairs, triple_index, triples
from .category import Category, FinCategory, grothendieck_nerve, reindex_pairs
from .errors import (HomCategoryViolation, InterchangeViolation, NaturalityViolation,
                     NonInvertibleConstraint, PentagonViolation, StructureError,
                     TriangleViolation)

TABLES = ("objects", "one_cells", "two_cells", "vcomp", "id1", "id2", "hcomp1",
          "hcomp2", "assoc", "lunit", "runit")


class FinBicategory:
    """Explicit finite bicategory. Construct through ``validate_bicategory``
    (or pass ``check=True``) to get the axioms verified."""

    def __init__(self, objects, one_cells, two_cells, vcomp, id1, id2, hcomp1, hcomp2,
                 assoc, lunit, runit, check=True):
        self.objects = canonical(objects)
        self.one_cells = dict(one_cells)
        self.two_cells = dict(two_cells)
        self.vcomp = dict(vcomp)
        self.id1 = dict(id1)
        self.id2 = dict(id2)
        self.hcomp1 = dict(hcomp1)
        self.hcomp2 = dict(hcomp2)
        self.assoc = dict(assoc)
        self.lunit = dict(lunit)
        self.runit = dict(runit)
        self._index()
        if check:
            _validate(self)

    def _index(self):
        self.hom1 = {}
        for f, (a, b) in self.one_cells.items():
            self.hom1.setdefault((a, b), []).append(f)
        self.hom1 = {k: canonical(v) for k, v in self.hom1.items()}
        self.hom2 = {}
        for x, (f, g) in self.two_cells.items():
            self.hom2.setdefault((f, g), []).append(x)
        self.hom2 = {k: canonical(v) for k, v in self.hom2.items()}

    def tables(self):
        return {name: getattr(self, name) for name in TABLES}

    def replace(self, check=True, **changes):
        t = {k: (list(v) if k == "objects" else dict(v)) for k, v in self.tables().items()}
        t.update(changes)
        return FinBicategory(check=check, **t)

    # -- cell helpers -----------------------------------------------------------
    def src1(self, f):
        return self.one_cells[f][0]

    def tgt1(self, f):
        return self.one_cells[f][1]

    def one_hom(self, a, b):
        return self.hom1.get((a, b), ())

    def two_hom(self, f, g):
        return self.hom2.get((f, g), ())

    def whisker_left(self, f, a):
        """f o a (a 2-cell on the right factor)."""
        return self.hcomp2[(self.id2[f], a)]

    def whisker_right(self, a, h):
        """a o h."""
        return self.hcomp2[(a, self.id2[h])]

    def inverse2(self, a):
        f, g = self.two_cells[a]
        for b in self.two_hom(g, f):
            if self.vcomp.get((b, a)) == self.id2[f] and self.vcomp.get((a, b)) == self.id2[g]:
                return b
        return None

    @cached_property
    def invertible2(self):
        return frozenset(a for a in self.two_cells if self.inverse2(a) is not None)

    @cached_property
    def all_invertible(self):
        return len(self.invertible2) == len(self.two_cells)

    def is_locally_discrete(self):
        return all(len(v) == 1 and v[0] == self.id2[f[0]] and f[0] == f[1]
                   for f, v in self.hom2.items()) and \
            all((f, f) in self.hom2 for f in self.one_cells)

    def hom_category(self, a, b):
        """The hom-category B(a, b) as a FinCategory."""
        ones = self.one_hom(a, b)
        cells = {x: self.two_cells[x] for f in ones for g in ones for x in self.two_hom(f, g)}
        comp = {(y, x): self.vcomp[(y, x)] for x in cells for y in cells
                if cells[y][0] == cells[x][1]}
        return FinCategory(ones, cells, comp, {f: self.id2[f] for f in ones})

    def __eq__(self, other):
        return isinstance(other, FinBicategory) and self.tables_eq(other)

    def tables_eq(self, other):
        return all(getattr(self, k) == getattr(other, k) for k in TABLES)

    def __hash__(self):
        return hash((self.objects, tuple(sorted(map(repr, self.one_cells)))))

    def __repr__(self):
        return (f"FinBicategory({len(self.objects)} objects, {len(self.one_cells)} 1-cells, "
                f"{len(self.two_cells)} 2-cells)")

    def to_json(self):
        from .serialize import bicategory_to_json
        return bicategory_to_json(self)


def validate_bicategory(raw):
    """Check all bicategory axioms exhaustively; return the FinBicategory.

    Order of checks: structure, hom-categories, functoriality of horizontal
    composition, invertibility of constraints, naturality, pentagon,
    triangle. The first failure raises with a witness tuple.
    """
    if isinstance(raw, FinBicategory):
        _validate(raw)
        return raw
    if isinstance(raw, dict) and "one_cells" in raw and isinstance(raw["one_cells"], list):
        from .serialize import bicategory_from_json
        return bicategory_from_json(raw)
    return FinBicategory(**raw)


def bicategory_report(B):
    """Report-style wrapper around the validator."""
    rep = Report("bicategory")
    try:
        _validate(B)
    except (StructureError, HomCategoryViolation, InterchangeViolation,
            NonInvertibleConstraint, NaturalityViolation, PentagonViolation,
            TriangleViolation) as e:
        rep.add(error=type(e).__name__, message=str(e), witness=e.witness)
    return rep


def _validate(B):
    _check_structure(B)
    _check_hom_categories(B)
    _check_interchange(B)
    _check_invertible(B)
    _check_naturality(B)
    _check_pentagon(B)
    _check_triangle(B)


def _composable_pairs(B):
    """(g, f) with g o f defined."""
    return [(g, f) for f in B.one_cells for g in B.one_cells if B.src1(g) == B.tgt1(f)]


def _composable_triples(B):
    return [(f, g, h) for (f, g) in _composable_pairs(B) for h in B.one_cells
            if B.src1(g) == B.tgt1(h)]


def _check_structure(B):
    obs = set(B.objects)
    for f, (a, b) in B.one_cells.items():
        if a not in obs or b not in obs:
            raise StructureError(f"1-cell {f!r} has unknown endpoints", witness=("one_cells", f))
    for x, (f, g) in B.two_cells.items():
        if f not in B.one_cells or g not in B.one_cells:
            raise StructureError(f"2-cell {x!r} has unknown boundary", witness=("two_cells", x))
        if B.one_cells[f] != B.one_cells[g]:
            raise StructureError(f"2-cell {x!r} between non-parallel 1-cells",
                                 witness=("two_cells", x))
    for a in B.objects:
        i = B.id1.get(a)
        if i is None or B.one_cells.get(i) != (a, a):
            raise StructureError(f"bad identity 1-cell at {a!r}", witness=("id1", a))
    for f in B.one_cells:
        x = B.id2.get(f)
        if x is None or B.two_cells.get(x) != (f, f):
            raise StructureError(f"bad identity 2-cell on {f!r}", witness=("id2", f))

    def expect(table, key, val, src, tgt):
        if val is None:
            raise StructureError(f"{table} has no entry for {key!r}", witness=(table, key))
        if table == "hcomp1":
            ok = B.one_cells.get(val) == (src, tgt)
        else:
            ok = B.two_cells.get(val) == (src, tgt)
        if not ok:
            raise StructureError(f"{table}[{key!r}] = {val!r} has the wrong type",
                                 witness=(table, key))

    for (g, f) in _composable_pairs(B):
        expect("hcomp1", (g, f), B.hcomp1.get((g, f)), B.src1(f), B.tgt1(g))
    for key in B.hcomp1:
        g, f = key
        if g not in B.one_cells or f not in B.one_cells or B.src1(g) != B.tgt1(f):
            raise StructureError("hcomp1 entry for a non-composable pair",
                                 witness=("hcomp1", key))
    for x, (f, g) in B.two_cells.items():
        for y in B.two_cells:
            if B.two_cells[y][0] == g:
                expect("vcomp", (y, x), B.vcomp.get((y, x)), f, B.two_cells[y][1])
    for key in B.vcomp:
        y, x = key
        if x not in B.two_cells or y not in B.two_cells or B.two_cells[y][0] != B.two_cells[x][1]:
            raise StructureError("vcomp entry for a non-composable pair", witness=("vcomp", key))
    for x, (f, f2) in B.two_cells.items():
        for y, (g, g2) in B.two_cells.items():
            if B.src1(g) == B.tgt1(f):
                expect("hcomp2", (y, x), B.hcomp2.get((y, x)), B.hcomp1[(g, f)],
                       B.hcomp1[(g2, f2)])
    for key in B.hcomp2:
        y, x = key
        if x not in B.two_cells or y not in B.two_cells or \
                B.src1(B.two_cells[y][0]) != B.tgt1(B.two_cells[x][0]):
            raise StructureError("hcomp2 entry for a non-composable pair",
                                 witness=("hcomp2", key))
    for (f, g, h) in _composable_triples(B):
        fg_h = B.hcomp1[(B.hcomp1[(f, g)], h)]
        f_gh = B.hcomp1[(f, B.hcomp1[(g, h)])]
        expect("assoc", (f, g, h), B.assoc.get((f, g, h)), fg_h, f_gh)
    extra = set(B.assoc) - set(_composable_triples(B))
    if extra:
        raise StructureError("assoc entry for a non-composable triple",
                             witness=("assoc", canonical(extra)[0]))
    for f, (a, b) in B.one_cells.items():
        expect("lunit", f, B.lunit.get(f), B.hcomp1[(B.id1[b], f)], f)
        expect("runit", f, B.runit.get(f), B.hcomp1[(f, B.id1[a])], f)
    for name in ("lunit", "runit", "id2"):
        extra = set(getattr(B, name)) - set(B.one_cells)
        if extra:
            raise StructureError(f"{name} entry for an unknown 1-cell",
                                 witness=(name, canonical(extra)[0]))


def _check_hom_categories(B):
    for x, (f, g) in B.two_cells.items():
        if B.vcomp[(x, B.id2[f])] != x or B.vcomp[(B.id2[g], x)] != x:
            raise HomCategoryViolation("identity 2-cell is not a unit", witness=(x,))
    by_src = {}
    for x, (f, g) in B.two_cells.items():
        by_src.setdefault(f, []).append(x)
    for x, (f, g) in B.two_cells.items():
        for y in by_src.get(g, ()):
            h = B.two_cells[y][1]
            yx = B.vcomp[(y, x)]
            for z in by_src.get(h, ()):
                if B.vcomp[(z, yx)] != B.vcomp[(B.vcomp[(z, y)], x)]:
                    raise HomCategoryViolation("vertical composition is not associative",
                                               witness=(z, y, x))


def _check_interchange(B):
    for (g, f) in _composable_pairs(B):
        if B.hcomp2[(B.id2[g], B.id2[f])] != B.id2[B.hcomp1[(g, f)]]:
            raise InterchangeViolation("horizontal composite of identities is not an identity",
                                       witness=(B.id2[g], B.id2[f]))
    by_src = {}
    for x, (f, f2) in B.two_cells.items():
        by_src.setdefault(f, []).append(x)
    for x, (f, f2) in B.two_cells.items():
        for x2 in by_src.get(f2, ()):
            for y, (g, g2) in B.two_cells.items():
                if B.src1(g) != B.tgt1(f):
                    continue
                for y2 in by_src.get(g2, ()):
                    lhs = B.hcomp2[(B.vcomp[(y2, y)], B.vcomp[(x2, x)])]
                    rhs = B.vcomp[(B.hcomp2[(y2, x2)], B.hcomp2[(y, x)])]
                    if lhs != rhs:
                        raise InterchangeViolation("interchange law fails",
                                                   witness=(y2, y, x2, x))


def _check_invertible(B):
    for key, x in B.assoc.items():
        if B.inverse2(x) is None:
            raise NonInvertibleConstraint("associator component not invertible",
                                          witness=("assoc", key))
    for f, x in B.lunit.items():
        if B.inverse2(x) is None:
            raise NonInvertibleConstraint("left unitor not invertible", witness=("lunit", f))
    for f, x in B.runit.items():
        if B.inverse2(x) is None:
            raise NonInvertibleConstraint("right unitor not invertible", witness=("runit", f))


def _check_naturality(B):
    vc, hc, a = B.vcomp, B.hcomp2, B.assoc
    i2 = B.id2
    for (f, g, h) in _composable_triples(B):
        # one variable at a time; joint naturality follows by interchange
        for pos in range(3):
            cells = (f, g, h)
            for x in B.two_cells:
                s, t = B.two_cells[x]
                if s != cells[pos]:
                    continue
                xs = [i2[c] for c in cells]
                xs[pos] = x
                tcells = list(cells)
                tcells[pos] = t
                tkey = tuple(tcells)
                lhs = vc[(a[tkey], hc[(hc[(xs[0], xs[1])], xs[2])])]
                rhs = vc[(hc[(xs[0], hc[(xs[1], xs[2])])], a[(f, g, h)])]
                if lhs != rhs:
                    raise NaturalityViolation("associator is not natural",
                                              witness=("assoc", (f, g, h), pos, x))
    for x, (f, f2) in B.two_cells.items():
        a_, b = B.one_cells[f]
        if vc[(B.lunit[f2], hc[(i2[B.id1[b]], x)])] != vc[(x, B.lunit[f])]:
            raise NaturalityViolation("left unitor is not natural", witness=("lunit", f, x))
        if vc[(B.runit[f2], hc[(x, i2[B.id1[a_]])])] != vc[(x, B.runit[f])]:
            raise NaturalityViolation("right unitor is not natural", witness=("runit", f, x))


def _check_pentagon(B):
    vc, a, c1 = B.vcomp, B.assoc, B.hcomp1
    for (f, g, h) in _composable_triples(B):
        for k in B.one_cells:
            if B.src1(h) != B.tgt1(k):
                continue
            lhs = vc[(a[(f, g, c1[(h, k)])], a[(c1[(f, g)], h, k)])]
            rhs = vc[(B.whisker_left(f, a[(g, h, k)]),
                      vc[(a[(f, c1[(g, h)], k)], B.whisker_right(a[(f, g, h)], k))])]
            if lhs != rhs:
                raise PentagonViolation("pentagon fails", witness=(f, g, h, k))


def _check_triangle(B):
    vc = B.vcomp
    for (f, g) in _composable_pairs(B):
        i = B.id1[B.src1(f)]
        lhs = vc[(B.whisker_left(f, B.lunit[g]), B.assoc[(f, i, g)])]
        rhs = B.whisker_right(B.runit[f], g)
        if lhs != rhs:
            raise TriangleViolation("triangle fails", witness=(f, g))


# -- constructors ----------------------------------------------------------------

def locally_discrete(C):
    """A category as a bicategory with identity 2-cells only."""
    arrows = list(C.arrows())
    one = {f: (C.src(f), C.tgt(f)) for f in arrows}
    two = {("id", f): (f, f) for f in arrows}
    vcomp = {(("id", f), ("id", f)): ("id", f) for f in arrows}
    hcomp1, hcomp2 = {}, {}
    for f in arrows:
        for g in C.hom_from(C.tgt(f)):
            gf = C.compose(g, f)
            hcomp1[(g, f)] = gf
            hcomp2[(("id", g), ("id", f))] = ("id", gf)
    assoc = {}
    for (g, f) in list(hcomp1):
        for h in C.hom_into(C.src(f)):
            assoc[(g, f, h)] = ("id", hcomp1[(hcomp1[(g, f)], h)])
    return FinBicategory(C.objects, one, two, vcomp, {a: C.identity(a) for a in C.objects},
                         {f: ("id", f) for f in arrows}, hcomp1, hcomp2, assoc,
                         {f: ("id", f) for f in arrows}, {f: ("id", f) for f in arrows})


def double_suspension(n):
    """One object, one 1-cell, 2-cells the cyclic group Z/n under both compositions."""
    els = [str(k) for k in range(n)]
    add = lambda a, b: str((int(a) + int(b)) % n)
    return FinBicategory(["*"], {"1": ("*", "*")}, {g: ("1", "1") for g in els},
                         {(b, a): add(b, a) for a in els for b in els}, {"*": "1"},
                         {"1": "0"}, {("1", "1"): "1"},
                         {(b, a): add(b, a) for a in els for b in els},
                         {("1", "1", "1"): "0"}, {"1": "0"}, {"1": "0"})


def terminal_bicategory():
    return double_suspension(1)


def nonstrict_bicategory():
    """Two objects x, y; 1-cells 1x, 1y, e: y -> y idempotent, f: x -> y with e o f = f.

    Aut(e) = Z/2 = {e0, e1}; every other hom has only its identity. The
    associator is nontrivial exactly at (e, e, e), so the choice of its
    orientation in the lax-functor coherence equation is observable.
    """
    one = {"1x": ("x", "x"), "1y": ("y", "y"), "e": ("y", "y"), "f": ("x", "y")}
    two = {"i1x": ("1x", "1x"), "i1y": ("1y", "1y"), "if": ("f", "f"),
           "e0": ("e", "e"), "e1": ("e", "e")}
    id2 = {"1x": "i1x", "1y": "i1y", "f": "if", "e": "e0"}
    z2 = lambda a, b: "e1" if (a == "e1") != (b == "e1") else "e0"
    vcomp = {("i1x", "i1x"): "i1x", ("i1y", "i1y"): "i1y", ("if", "if"): "if"}
    vcomp.update({(b, a): z2(b, a) for a in ("e0", "e1") for b in ("e0", "e1")})
    hcomp1 = {("1x", "1x"): "1x", ("1y", "1y"): "1y", ("1y", "e"): "e", ("e", "1y"): "e",
              ("e", "e"): "e", ("f", "1x"): "f", ("1y", "f"): "f", ("e", "f"): "f"}
    aut = {"1x": ["i1x"], "1y": ["i1y"], "f": ["if"], "e": ["e0", "e1"]}
    hcomp2 = {}
    for (g, f2), gf in hcomp1.items():
        for b in aut[g]:
            for a in aut[f2]:
                if gf == "e":
                    # Z/2 x Z/2 -> Z/2: keep the e-factor (the left one when both are e)
                    hcomp2[(b, a)] = b if g == "e" else a
                else:
                    hcomp2[(b, a)] = id2[gf]
    assoc = {}
    for (f1, g1) in hcomp1:
        for h1 in one:
            if one[g1][0] == one[h1][1]:
                tgt = hcomp1[(f1, hcomp1[(g1, h1)])]
                assoc[(f1, g1, h1)] = "e1" if (f1, g1, h1) == ("e", "e", "e") else id2[tgt]
    return FinBicategory(["x", "y"], one, two, vcomp, {"x": "1x", "y": "1y"}, id2, hcomp1,
                         hcomp2, assoc, dict(id2), dict(id2))


# -- normal lax functors -------------------------------------------------------------

def _cached_hash(obj, fields):
    # cells are hashed constantly during nerve checks; compute once per instance
    h = obj.__dict__.get("_hash")
    if h is None:
        h = hash(fields)
        object.__setattr__(obj, "_hash", h)
    return h


@dataclass(frozen=True)
class NormalLaxFunctor:
    """(B_i, f_ij, beta_ijk) indexed by all pairs/triples of [n] in lexicographic order."""

    n: int
    objects: tuple
    f: tuple
    beta: tuple

    def __hash__(self):
        return _cached_hash(self, (self.n, self.objects, self.f, self.beta))

    def one_cell(self, i, j):
        return self.f[pair_index(self.n)[(i, j)]]

    def two_cell(self, i, j, k):
        return self.beta[triple_index(self.n)[(i, j, k)]]

    def reindex(self, alpha):
        """Precompose with a monotone alpha: [m] -> [n]."""
        m = len(alpha) - 1
        pidx, tidx = pair_index(self.n), triple_index(self.n)
        return NormalLaxFunctor(m, tuple(self.objects[a] for a in alpha),
                                tuple(self.f[pidx[(alpha[i], alpha[j])]] for (i, j) in pairs(m)),
                                tuple(self.beta[tidx[(alpha[i], alpha[j], alpha[k])]]
                                      for (i, j, k) in triples(m)))


def coherence_holds(B, F, i, j, k, l):
    """beta_ikl (beta_ijk o f_kl) == beta_ijl (f_ij o beta_jkl) alpha."""
    f, b = F.one_cell, F.two_cell
    lhs = B.vcomp[(b(i, k, l), B.whisker_right(b(i, j, k), f(k, l)))]
    rhs = B.vcomp[(b(i, j, l), B.vcomp[(B.whisker_left(f(i, j), b(j, k, l)),
                                        B.assoc[(f(i, j), f(j, k), f(k, l))])])]
    return lhs == rhs


def is_normal_lax(B, F, invertible=False):
    """Direct check of all defining conditions of a normal lax functor [n] -> B."""
    n = F.n
    for i in range(n + 1):
        if F.objects[i] not in B.objects or F.one_cell(i, i) != B.id1[F.objects[i]]:
            return False
    for (i, j) in pairs(n):
        if B.one_cells.get(F.one_cell(i, j)) != (F.objects[j], F.objects[i]):
            return False
    for (i, j, k) in triples(n):
        x = F.two_cell(i, j, k)
        want = (B.hcomp1[(F.one_cell(i, j), F.one_cell(j, k))], F.one_cell(i, k))
        if B.two_cells.get(x) != want:
            return False
        if i == j and x != B.lunit[F.one_cell(j, k)]:
            return False
        if j == k and i != j and x != B.runit[F.one_cell(i, j)]:
            return False
        if invertible and x not in B.invertible2:
            return False
    for i in range(n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                for l in range(k, n + 1):
                    if not coherence_holds(B, F, i, j, k, l):
                        return False
    return True


def enumerate_normal_lax(n, B, invertible=False):
    """All normal lax functors [n] -> B, canonically sorted.

    Variables are assigned in the order: for k = 0..n, the object B_k, then
    f_ik for i = k-1 down to 0, each followed by the beta_ijk it completes.
    Each tetrahedron equation is checked as soon as its last ingredient is set.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    P, T = pairs(n), triples(n)
    pidx, tidx = pair_index(n), triple_index(n)
    # variable schedule: ('B', k) / ('f', (i, k)) / ('b', (i, j, k))
    schedule = []
    for k in range(n + 1):
        schedule.append(("B", k))
        for i in range(k - 1, -1, -1):
            schedule.append(("f", (i, k)))
            for j in range(i + 1, k):
                schedule.append(("b", (i, j, k)))
    pos = {v: p for p, v in enumerate(schedule)}

    def var_of_pair(i, j):
        return ("B", i) if i == j else ("f", (i, j))

    def var_of_triple(i, j, k):
        if i == j == k:
            return ("B", i)
        if i == j:
            return ("f", (j, k))
        if j == k:
            return ("f", (i, j))
        return ("b", (i, j, k))

    checks = {v: [] for v in schedule}
    for i in range(n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                for l in range(k, n + 1):
                    deps = [var_of_triple(*t) for t in
                            ((i, k, l), (i, j, k), (i, j, l), (j, k, l))]
                    deps += [var_of_pair(i, j), var_of_pair(j, k), var_of_pair(k, l)]
                    last = max(deps, key=lambda v: pos[v])
                    checks[last].append((i, j, k, l))

    objs = [None] * (n + 1)
    f = [None] * len(P)
    beta = [None] * len(T)
    out = []

    class View:
        def one_cell(self, i, j):
            return f[pidx[(i, j)]]

        def two_cell(self, i, j, k):
            return beta[tidx[(i, j, k)]]

    view = View()
    inv = B.invertible2

    def set_derived_pair(i, j):
        fij = f[pidx[(i, j)]]
        beta[tidx[(i, i, j)]] = B.lunit[fij]
        beta[tidx[(i, j, j)]] = B.runit[fij]

    def ok(v):
        return all(coherence_holds(B, view, *q) for q in checks[v])

    def rec(p):
        if p == len(schedule):
            out.append(NormalLaxFunctor(n, tuple(objs), tuple(f), tuple(beta)))
            return
        kind, key = schedule[p]
        if kind == "B":
            for a in B.objects:
                objs[key] = a
                f[pidx[(key, key)]] = B.id1[a]
                beta[tidx[(key, key, key)]] = B.lunit[B.id1[a]]
                if ok(("B", key)):
                    rec(p + 1)
        elif kind == "f":
            i, k = key
            for c in B.one_hom(objs[k], objs[i]):
                f[pidx[key]] = c
                set_derived_pair(i, k)
                if ok(("f", key)):
                    rec(p + 1)
        else:
            i, j, k = key
            src = B.hcomp1[(f[pidx[(i, j)]], f[pidx[(j, k)]])]
            for x in B.two_hom(src, f[pidx[(i, k)]]):
                if invertible and x not in inv:
                    continue
                beta[tidx[key]] = x
                if ok(("b", key)):
                    rec(p + 1)

    rec(0)
    return canonical(out)


def enumerate_normal_homs(n, B):
    return enumerate_normal_lax(n, B, invertible=True)


def duskin_nerve(B, maxdim):
    """Truncated simplicial set of normal lax functors [n] -> B."""
    from .simplicial import TruncSSet
    if maxdim < 1:
        raise ValueError("maxdim must be >= 1")
    levels = [enumerate_normal_lax(n, B) for n in range(maxdim + 1)]
    return TruncSSet.from_reindexing(levels, lambda alpha, F, n: F.reindex(alpha))


# -- icons and the Lack-Paoli 2-nerve ------------------------------------------------

@dataclass(frozen=True)
class Icon:
    source: NormalLaxFunctor
    target: NormalLaxFunctor
    components: tuple  # phi_ij over pairs(n), identities on the diagonal

    def __hash__(self):
        return _cached_hash(self, (self.source, self.target, self.components))

    def component(self, i, j):
        return self.components[pair_index(self.source.n)[(i, j)]]

    def reindex(self, alpha):
        return Icon(self.source.reindex(alpha), self.target.reindex(alpha),
                    reindex_pairs(alpha, self.components, self.source.n))


def _icon_order(n):
    return sorted(((i, k) for (i, k) in pairs(n) if i < k), key=lambda p: (p[1], -p[0]))


def enumerate_icons(F, G, B, limit=None):
    """Icons F => G: phi_ij: f_ij => g_ij with phi_ii = id and
    phi_ik . beta_ijk == gamma_ijk . (phi_ij o phi_jk)."""
    if F.n != G.n or F.objects != G.objects:
        return []
    n = F.n
    pidx = pair_index(n)
    phi = [None] * len(pairs(n))
    for i in range(n + 1):
        phi[pidx[(i, i)]] = B.id2[F.one_cell(i, i)]
    order = _icon_order(n)
    out = []
    vc, hc = B.vcomp, B.hcomp2

    def rec(p):
        if p == len(order):
            out.append(Icon(F, G, tuple(phi)))
            return limit is not None and len(out) >= limit
        i, k = order[p]
        for x in B.two_hom(F.one_cell(i, k), G.one_cell(i, k)):
            phi[pidx[(i, k)]] = x
            good = True
            for j in range(i + 1, k):
                lhs = vc[(x, F.two_cell(i, j, k))]
                rhs = vc[(G.two_cell(i, j, k), hc[(phi[pidx[(i, j)]], phi[pidx[(j, k)]])])]
                if lhs != rhs:
                    good = False
                    break
            if good and rec(p + 1):
                return True
        return False

    rec(0)
    # the search runs over canonically ordered hom-sets, so ``out`` is already deterministic
    return tuple(out)


def is_icon(B, I):
    F, G = I.source, I.target
    if F.objects != G.objects:
        return False
    n = F.n
    for i in range(n + 1):
        if I.component(i, i) != B.id2[F.one_cell(i, i)]:
            return False
    for (i, j) in pairs(n):
        if B.two_cells.get(I.component(i, j)) != (F.one_cell(i, j), G.one_cell(i, j)):
            return False
    for (i, j, k) in triples(n):
        lhs = B.vcomp[(I.component(i, k), F.two_cell(i, j, k))]
        rhs = B.vcomp[(G.two_cell(i, j, k),
                       B.hcomp2[(I.component(i, j), I.component(j, k))])]
        if lhs != rhs:
            return False
    return True


class LPLevel(Category):
    """Level n of the Lack-Paoli 2-nerve: normal homomorphisms and icons, built lazily."""

    def __init__(self, B, n):
        self.B = B
        self.n = n
        self.objects = enumerate_normal_homs(n, B)
        self._by_objs = {}
        for F in self.objects:
            self._by_objs.setdefault(F.objects, []).append(F)
        self.is_groupoid = True if B.all_invertible else None
        self._hom = {}
        self._nonempty = {}

    def hom(self, F, G):
        key = (F, G)
        if key not in self._hom:
            self._hom[key] = enumerate_icons(F, G, self.B)
        return self._hom[key]

    def hom_nonempty(self, F, G):
        key = (F, G)
        if key in self._hom:
            return bool(self._hom[key])
        if key not in self._nonempty:
            self._nonempty[key] = bool(enumerate_icons(F, G, self.B, limit=1))
        return self._nonempty[key]

    def hom_into(self, G):
        for F in self._by_objs.get(G.objects, ()):
            yield from self.hom(F, G)

    def hom_from(self, F):
        for G in self._by_objs.get(F.objects, ()):
            yield from self.hom(F, G)

    def arrows(self):
        for F in self.objects:
            yield from self.hom_from(F)

    def compose(self, g, f):
        vc = self.B.vcomp
        return Icon(f.source, g.target,
                    tuple(vc[(b, a)] for b, a in zip(g.components, f.components)))

    def identity(self, F):
        return Icon(F, F, tuple(self.B.id2[c] for c in F.f))

    def src(self, f):
        return f.source

    def tgt(self, f):
        return f.target

    def __repr__(self):
        return f"LPLevel(n={self.n}, {len(self.objects)} objects)"


def lp_2nerve(B, maxdim):
    """The Lack-Paoli 2-nerve as a CatSSet truncated at maxdim."""
    from .simplicial import CatSSet
    if maxdim < 3:
        raise ValueError("maxdim must be >= 3")
    levels = [LPLevel(B, n) for n in range(maxdim + 1)]
    return CatSSet(levels, lambda alpha, F, n: F.reindex(alpha),
                   lambda alpha, I, n: I.reindex(alpha))


def lp_bisimplicial(B, maxdim, maxdim_v=None):
    """Apply the Grothendieck nerve to every level of the 2-nerve.

    Horizontal degree n is the 2-nerve level, vertical degree m the nerve
    level; a cell is a pair-indexed tuple of icons.
    """
    from .simplicial import TruncBiSSet
    V = maxdim if maxdim_v is None else maxdim_v
    cats = [LPLevel(B, n) for n in range(maxdim + 1)]
    levels = {(n, m): grothendieck_nerve(cats[n], m) for n in range(maxdim + 1)
              for m in range(V + 1)}

    def rh(alpha, x, n, m):
        return tuple(I.reindex(alpha) for I in x)

    def rv(alpha, x, n, m):
        return reindex_pairs(alpha, x, m)

    return TruncBiSSet.from_reindexing(levels, maxdim, V, rh, rv)
