"""JSON formats for every data type, with canonical output.

Cell ids are written as strings: string ids verbatim, anything else as its
compact JSON encoding. Loaded data keeps those strings as ids, so
dump -> load -> dump reproduces the file byte for byte.
"""

from __future__ import annotations

import dataclasses
import json

from ._util import canonical
from .errors import ParseError


def dumps(obj):
    """Canonical JSON text: sorted keys, compact separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def load_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}:{e.lineno}:{e.colno}: {e.msg}", witness=(path, e.lineno)) \
            from None
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}", witness=(path,)) from None


def _encode(x):
    if isinstance(x, (str, int)) or x is None:
        return x
    if isinstance(x, (tuple, list)):
        return [_encode(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return [_encode(v) for v in canonical(x)]
    if dataclasses.is_dataclass(x):
        return [_encode(getattr(x, f.name)) for f in dataclasses.fields(x)]
    raise TypeError(f"cannot encode {x!r}")


def label(x):
    if isinstance(x, str):
        return x
    return json.dumps(_encode(x), separators=(",", ":"), ensure_ascii=False)


def _labels(xs):
    return sorted((label(x) for x in xs))


def _keys(d, required, optional=(), what="object"):
    if not isinstance(d, dict):
        raise ParseError(f"{what}: expected a JSON object")
    missing = [k for k in required if k not in d]
    if missing:
        raise ParseError(f"{what}: missing field(s) {missing}", witness=tuple(missing))
    unknown = sorted(set(d) - set(required) - set(optional))
    if unknown:
        raise ParseError(f"{what}: unknown field(s) {unknown}", witness=tuple(unknown))


def _id(x, what):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(f"{what}: ids must be strings or integers, got {x!r}", witness=(x,))
    return x if isinstance(x, str) else str(x)


def _map(d, what):
    if not isinstance(d, dict):
        raise ParseError(f"{what}: expected a mapping")
    return {_id(k, what): _id(v, what) for k, v in d.items()}


# -- spaces and sheaves ---------------------------------------------------------------

def space_to_json(X):
    return {"points": _labels(X.points),
            "leq": sorted([label(a), label(b)] for (a, b) in X.covering_pairs())}


def space_from_json(d):
    from .finspace import validate_space
    _keys(d, ("points",), ("leq",), "space")
    pts = [_id(p, "space") for p in d["points"]]
    leq = []
    for pr in d.get("leq", []):
        if not isinstance(pr, list) or len(pr) != 2:
            raise ParseError("space: leq entries must be pairs", witness=(pr,))
        leq.append((_id(pr[0], "space"), _id(pr[1], "space")))
    return validate_space(pts, leq)


def etale_to_json(S):
    return {"total": space_to_json(S.total), "base": space_to_json(S.base),
            "projection": {label(e): label(x) for e, x in S.projection.mapping.items()}}


def etale_from_json(d):
    from .finspace import EtaleSpace
    _keys(d, ("total", "base", "projection"), (), "etale space")
    return EtaleSpace(space_from_json(d["total"]), space_from_json(d["base"]),
                      _map(d["projection"], "etale space"))


# -- categories, covers --------------------------------------------------------------------

def category_to_json(C):
    arrows = canonical(C.arrows())
    comp = []
    for f in arrows:
        for g in C.hom_from(C.tgt(f)):
            comp.append([label(g), label(f), label(C.compose(g, f))])
    return {"objects": _labels(C.objects),
            "arrows": sorted(({"id": label(f), "src": label(C.src(f)), "tgt": label(C.tgt(f))}
                              for f in arrows), key=lambda a: a["id"]),
            "compose": sorted(comp),
            "id": {label(a): label(C.identity(a)) for a in C.objects}}


def category_from_json(d):
    from .category import FinCategory
    _keys(d, ("objects", "arrows", "compose", "id"), (), "category")
    arrows = {}
    for a in d["arrows"]:
        _keys(a, ("id", "src", "tgt"), (), "category arrow")
        arrows[_id(a["id"], "category")] = (_id(a["src"], "category"), _id(a["tgt"], "category"))
    comp = {}
    for t in d["compose"]:
        if not isinstance(t, list) or len(t) != 3:
            raise ParseError("category: compose entries are [g, f, gf]", witness=(t,))
        g, f, gf = (_id(v, "category") for v in t)
        comp[(g, f)] = gf
    return FinCategory([_id(o, "category") for o in d["objects"]], arrows, comp,
                       _map(d["id"], "category"))


def cover_from_json(d, X=None):
    """An ordered open cover; the space may be embedded under "space"."""
    from .category import order_from_cover
    from .finspace import FinSpace
    _keys(d, ("sets",), ("index_leq", "space"), "cover")
    if X is None:
        if "space" not in d:
            raise ParseError("cover: no space given", witness=("space",))
        X = space_from_json(d["space"])
    sets = {_id(i, "cover"): [_id(p, "cover") for p in v] for i, v in d["sets"].items()}
    leq = [(_id(a, "cover"), _id(b, "cover")) for a, b in d.get("index_leq", [])]
    return order_from_cover(X, FinSpace(list(sets), leq), sets)


# -- simplicial data --------------------------------------------------------------------------

def sset_to_json(Y):
    return {"maxdim": Y.maxdim, "counts": list(Y.counts()),
            "levels": [_labels(lv) for lv in Y.levels],
            "d": [[n, i, {label(x): label(y) for x, y in t.items()}]
                  for (n, i), t in sorted(Y.faces.items())],
            "s": [[n, j, {label(x): label(y) for x, y in t.items()}]
                  for (n, j), t in sorted(Y.degens.items())]}


def sset_from_json(d):
    from .simplicial import TruncSSet
    _keys(d, ("maxdim", "levels", "d", "s"), ("counts",), "simplicial set")
    levels = [[_id(x, "simplicial set") for x in lv] for lv in d["levels"]]
    if d["maxdim"] != len(levels) - 1:
        raise ParseError("simplicial set: maxdim does not match the number of levels")
    faces = {(n, i): _map(t, "simplicial set") for n, i, t in d["d"]}
    degens = {(n, j): _map(t, "simplicial set") for n, j, t in d["s"]}
    top = len(levels) - 1
    for n in range(1, top + 1):
        for i in range(n + 1):
            if (n, i) not in faces:
                raise ParseError(f"simplicial set: missing face d_{i} at level {n}",
                                 witness=("d", n, i))
    for n in range(top):
        for j in range(n + 1):
            if (n, j) not in degens:
                raise ParseError(f"simplicial set: missing degeneracy s_{j} at level {n}",
                                 witness=("s", n, j))
    for (n, i), t in faces.items():
        _total(t, levels[n], levels[n - 1], f"d_{i} at level {n}")
    for (n, j), t in degens.items():
        _total(t, levels[n], levels[n + 1], f"s_{j} at level {n}")
    if "counts" in d and list(d["counts"]) != [len(lv) for lv in levels]:
        raise ParseError("simplicial set: counts do not match levels")
    return TruncSSet(levels, faces, degens)


def _total(t, dom, cod, what):
    dom_s, cod_s = set(dom), set(cod)
    if set(t) != dom_s:
        raise ParseError(f"{what}: not defined on exactly the cells of its level", witness=(what,))
    bad = [v for v in t.values() if v not in cod_s]
    if bad:
        raise ParseError(f"{what}: value {bad[0]!r} is not a cell", witness=(what, bad[0]))


def bisset_to_json(Y):
    def tab(t):
        return [[n, m, i, {label(x): label(y) for x, y in v.items()}]
                for (n, m, i), v in sorted(t.items())]
    return {"maxdim_h": Y.maxdim_h, "maxdim_v": Y.maxdim_v,
            "levels": [[n, m, _labels(v)] for (n, m), v in sorted(Y.levels.items())],
            "dh": tab(Y.dh), "sh": tab(Y.sh), "dv": tab(Y.dv), "sv": tab(Y.sv)}


def bisset_from_json(d):
    from .simplicial import TruncBiSSet
    _keys(d, ("maxdim_h", "maxdim_v", "levels", "dh", "sh", "dv", "sv"), (),
          "bisimplicial set")
    levels = {(n, m): [_id(x, "bisimplicial set") for x in v] for n, m, v in d["levels"]}

    def tab(rows):
        return {(n, m, i): _map(v, "bisimplicial set") for n, m, i, v in rows}

    return TruncBiSSet(levels, d["maxdim_h"], d["maxdim_v"], tab(d["dh"]), tab(d["sh"]),
                       tab(d["dv"]), tab(d["sv"]))


def catsset_to_json(X):
    """Materializes every level; meant for small truncations.

    Non-string objects and arrows (functors, icons) get short positional ids
    per level, so files stay small; string ids are written unchanged.
    """
    from ._util import codegeneracy, coface, sort_key
    names = []
    levels = []
    for C in X.categories:
        obs, ars = list(C.objects), list(C.arrows())
        nm = {}
        for prefix, xs in (("x", obs), ("f", ars)):
            if all(isinstance(x, str) for x in xs):
                nm[prefix] = {x: x for x in xs}
            else:
                nm[prefix] = {x: f"{prefix}{k}" for k, x in enumerate(sorted(xs, key=sort_key))}
        names.append(nm)
        ob, ar = nm["x"], nm["f"]
        comp = [[ar[g], ar[f], ar[C.compose(g, f)]] for f in ars for g in C.hom_from(C.tgt(f))]
        levels.append({"objects": sorted(ob.values()),
                       "arrows": sorted(({"id": ar[f], "src": ob[C.src(f)], "tgt": ob[C.tgt(f)]}
                                         for f in ars), key=lambda a: a["id"]),
                       "compose": sorted(comp),
                       "id": {ob[a]: ar[C.identity(a)] for a in obs}})

    def op(alpha, n, m):
        C, src, tgt = X.categories[n], names[n], names[m]
        return {"objects": {src["x"][x]: tgt["x"][X.act_ob(alpha, x, n)] for x in C.objects},
                "arrows": {src["f"][f]: tgt["f"][X.act_ar(alpha, f, n)] for f in C.arrows()}}

    return {"kind": "catsset", "maxdim": X.maxdim, "levels": levels,
            "d": [[n, i, op(coface(n, i), n, n - 1)] for n in range(1, X.maxdim + 1)
                  for i in range(n + 1)],
            "s": [[n, j, op(codegeneracy(n, j), n, n + 1)] for n in range(X.maxdim)
                  for j in range(n + 1)]}


def catsset_from_json(d):
    from .simplicial import CatSSet, _ops, apply_ops
    _keys(d, ("kind", "maxdim", "levels", "d", "s"), (), "cat-valued simplicial set")
    cats = [category_from_json(c) for c in d["levels"]]
    ob_f, ar_f, ob_s, ar_s = {}, {}, {}, {}
    for n, i, t in d["d"]:
        _keys(t, ("objects", "arrows"), (), "operator")
        ob_f[(n, i)] = _map(t["objects"], "operator")
        ar_f[(n, i)] = _map(t["arrows"], "operator")
    for n, j, t in d["s"]:
        _keys(t, ("objects", "arrows"), (), "operator")
        ob_s[(n, j)] = _map(t["objects"], "operator")
        ar_s[(n, j)] = _map(t["arrows"], "operator")

    def act_ob(alpha, x, n):
        return apply_ops(_ops(tuple(alpha), n), x, lambda l, i, y: ob_f[(l, i)][y],
                         lambda l, j, y: ob_s[(l, j)][y])

    def act_ar(alpha, f, n):
        return apply_ops(_ops(tuple(alpha), n), f, lambda l, i, y: ar_f[(l, i)][y],
                         lambda l, j, y: ar_s[(l, j)][y])

    return CatSSet(cats, act_ob, act_ar)


# -- bicategories ---------------------------------------------------------------------------

def bicategory_to_json(B):
    L = label
    return {"objects": _labels(B.objects),
            "one_cells": sorted(({"id": L(f), "src": L(a), "tgt": L(b)}
                                 for f, (a, b) in B.one_cells.items()), key=lambda c: c["id"]),
            "two_cells": sorted(({"id": L(x), "src": L(f), "tgt": L(g)}
                                 for x, (f, g) in B.two_cells.items()), key=lambda c: c["id"]),
            "vcomp": sorted([L(b), L(a), L(c)] for (b, a), c in B.vcomp.items()),
            "id1": {L(a): L(f) for a, f in B.id1.items()},
            "id2": {L(f): L(x) for f, x in B.id2.items()},
            "hcomp1": sorted([L(g), L(f), L(c)] for (g, f), c in B.hcomp1.items()),
            "hcomp2": sorted([L(b), L(a), L(c)] for (b, a), c in B.hcomp2.items()),
            "assoc": sorted([L(f), L(g), L(h), L(x)] for (f, g, h), x in B.assoc.items()),
            "lunit": {L(f): L(x) for f, x in B.lunit.items()},
            "runit": {L(f): L(x) for f, x in B.runit.items()}}


def bicategory_from_json(d, check=True):
    from .bicategory import FinBicategory
    w = "bicategory"
    _keys(d, ("objects", "one_cells", "two_cells", "vcomp", "id1", "id2", "hcomp1", "hcomp2",
              "assoc", "lunit", "runit"), (), w)

    def cells(rows):
        out = {}
        for c in rows:
            _keys(c, ("id", "src", "tgt"), (), w)
            out[_id(c["id"], w)] = (_id(c["src"], w), _id(c["tgt"], w))
        return out

    def table(rows, arity):
        out = {}
        for r in rows:
            if not isinstance(r, list) or len(r) != arity + 1:
                raise ParseError(f"{w}: table rows must have {arity + 1} entries", witness=(r,))
            ids = [_id(v, w) for v in r]
            out[tuple(ids[:-1])] = ids[-1]
        return out

    return FinBicategory([_id(o, w) for o in d["objects"]], cells(d["one_cells"]),
                         cells(d["two_cells"]), table(d["vcomp"], 2), _map(d["id1"], w),
                         _map(d["id2"], w), table(d["hcomp1"], 2), table(d["hcomp2"], 2),
                         table(d["assoc"], 3), _map(d["lunit"], w), _map(d["runit"], w),
                         check=check)


# -- bundles ----------------------------------------------------------------------------------

def bundle_to_json(E):
    return {"category": category_to_json(E.C), "space": space_to_json(E.X),
            "E": {label(c): etale_to_json(S) for c, S in E.E.items()},
            "E_arrows": {label(a): {label(e): label(v) for e, v in m.items()}
                         for a, m in E.maps.items()}}


def bundle_from_json(d):
    from .principal import CBundle
    _keys(d, ("category", "space", "E", "E_arrows"), (), "bundle")
    return CBundle(category_from_json(d["category"]), space_from_json(d["space"]),
                   {_id(c, "bundle"): etale_from_json(S) for c, S in d["E"].items()},
                   {_id(a, "bundle"): _map(m, "bundle") for a, m in d["E_arrows"].items()})


def setale_category_to_json(C):
    L = label
    return {"objects": space_to_json(C.objects), "arrows": space_to_json(C.arrows),
            "src": {L(f): L(x) for f, x in C.src.items()},
            "tgt": {L(f): L(x) for f, x in C.tgt.items()},
            "identity": {L(x): L(f) for x, f in C.identity.items()},
            "compose": sorted([L(g), L(f), L(c)] for (g, f), c in C.compose.items())}


def setale_category_from_json(d):
    from .principal import SEtaleCategory
    w = "s-etale category"
    _keys(d, ("objects", "arrows", "src", "tgt", "identity", "compose"), (), w)
    comp = {}
    for r in d["compose"]:
        g, f, c = (_id(v, w) for v in r)
        comp[(g, f)] = c
    return SEtaleCategory(space_from_json(d["objects"]), space_from_json(d["arrows"]),
                          _map(d["src"], w), _map(d["tgt"], w), _map(d["identity"], w), comp)


def setale_bundle_to_json(Bd):
    L = label
    return {"category": setale_category_to_json(Bd.C), "bundle": etale_to_json(Bd.E),
            "pi": {L(e): L(c) for e, c in Bd.pi.items()},
            "action": sorted([L(a), L(e), L(v)] for (a, e), v in Bd.action.items())}


def setale_bundle_from_json(d):
    from .principal import SEtaleBundle
    w = "s-etale bundle"
    _keys(d, ("category", "bundle", "pi", "action"), (), w)
    act = {}
    for r in d["action"]:
        a, e, v = (_id(x, w) for x in r)
        act[(a, e)] = v
    return SEtaleBundle(setale_category_from_json(d["category"]), etale_from_json(d["bundle"]),
                        _map(d["pi"], w), act)


def sheaf_on_sspace_to_json(S):
    L = label
    return {"base": {"sset": sset_to_json(S.base),
                     "spaces": [space_to_json(X) for X in S.base.spaces]},
            "sheaves": [etale_to_json(T) for T in S.sheaves],
            "structure": [[m, list(alpha), sorted([L(y), L(e), L(v)] for (y, e), v in t.items())]
                          for (m, alpha), t in sorted(S.structure.items())]}


def sheaf_on_sspace_from_json(d):
    from .simplicial import SheafOnSSpace, SimplicialSpace
    w = "sheaf on simplicial space"
    _keys(d, ("base", "sheaves", "structure"), (), w)
    _keys(d["base"], ("sset", "spaces"), (), w)
    Y = sset_from_json(d["base"]["sset"])
    spaces = [space_from_json(X) for X in d["base"]["spaces"]]
    base = SimplicialSpace(Y.levels, Y.faces, Y.degens, spaces=spaces)
    structure = {}
    for m, alpha, rows in d["structure"]:
        structure[(m, tuple(alpha))] = {(_id(y, w), _id(e, w)): _id(v, w) for y, e, v in rows}
    return SheafOnSSpace(base, [etale_from_json(T) for T in d["sheaves"]], structure)
