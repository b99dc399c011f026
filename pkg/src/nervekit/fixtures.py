"""Named example data used by the tests, the demos and the CLI.

``write_fixtures(directory)`` dumps the JSON versions; the same files ship
inside the package under ``nervekit/fixtures``.
"""

from __future__ import annotations

import os
from importlib import resources

from .bicategory import double_suspension, locally_discrete, nonstrict_bicategory, \
    terminal_bicategory
from .category import FinCategory, cyclic_group, order_from_cover, ordinal
from .finspace import FinSpace, chain_space, discrete_space, sierpinski
from .serialize import dumps


def terminal_category():
    return FinCategory(["*"], {"1": ("*", "*")}, {("1", "1"): "1"}, {"*": "1"})


def kronecker():
    """Two objects and two parallel arrows a, b: 0 -> 1."""
    arrows = {"1_0": ("0", "0"), "1_1": ("1", "1"), "a": ("0", "1"), "b": ("0", "1")}
    comp = {("1_0", "1_0"): "1_0", ("1_1", "1_1"): "1_1"}
    for f in ("a", "b"):
        comp[(f, "1_0")] = f
        comp[("1_1", f)] = f
    return FinCategory(["0", "1"], arrows, comp, {"0": "1_0", "1": "1_1"})


def category_fixtures():
    return {"terminal": terminal_category(), "z2": cyclic_group(2), "ord2": ordinal(2),
            "kronecker": kronecker()}


def bicategory_fixtures():
    out = {"terminal": terminal_bicategory(), "sigma2_z2": double_suspension(2),
           "sigma2_z3": double_suspension(3), "nonstrict": nonstrict_bicategory()}
    for name, C in category_fixtures().items():
        out[f"ld_{name}"] = locally_discrete(C)
    return out


def _cover(X, index_points, index_leq, sets):
    return order_from_cover(X, FinSpace(index_points, index_leq), sets)


def order_corpus():
    """Linear orders over spaces with at most 3 points, stalks of size at most 4."""
    out = {}
    pt = discrete_space(["p"])
    for k in range(1, 5):
        idx = [str(i) for i in range(k)]
        out[f"point_{k}"] = _cover(pt, idx, [(idx[i], idx[i + 1]) for i in range(k - 1)],
                                   {i: {"p"} for i in idx})
    S = sierpinski()
    hi = "1"  # the open point
    out["sierpinski_trivial"] = _cover(S, ["u"], [], {"u": set(S.points)})
    out["sierpinski_grow"] = _cover(S, ["u", "v"], [("u", "v")], {"u": set(S.points), "v": {hi}})
    out["sierpinski_grow_low"] = _cover(S, ["u", "v"], [("v", "u")],
                                        {"u": set(S.points), "v": {hi}})
    D2 = discrete_space(["a", "b"])
    out["two_points_2_1"] = _cover(D2, ["u", "v"], [("u", "v")], {"u": {"a", "b"}, "v": {"a"}})
    C3 = chain_space(["a", "b", "c"])
    out["chain3_staircase"] = _cover(C3, ["0", "1", "2"], [("0", "1"), ("1", "2")],
                                     {"0": {"a", "b", "c"}, "1": {"b", "c"}, "2": {"c"}})
    V = FinSpace(["a", "b", "c"], [("a", "b"), ("a", "c")])
    out["vee_split"] = _cover(V, ["u", "v", "w"], [("u", "v"), ("u", "w")],
                              {"u": {"a", "b", "c"}, "v": {"b"}, "w": {"c"}})
    D3 = discrete_space(["a", "b", "c"])
    out["three_points_3_1_2"] = _cover(D3, ["0", "1", "2"], [("0", "1"), ("1", "2")],
                                       {"0": {"a", "b", "c"}, "1": {"a", "c"}, "2": {"a"}})
    return out


def cyclic_space_json():
    """A preorder with a 2-cycle; rejected by the space validator."""
    return {"points": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]}


def write_fixtures(directory):
    os.makedirs(directory, exist_ok=True)
    files = {}
    for name, B in bicategory_fixtures().items():
        files[f"bicat_{name}.json"] = B.to_json()
    for name, C in category_fixtures().items():
        files[f"cat_{name}.json"] = C.to_json()
    files["space_sierpinski.json"] = sierpinski().to_json()
    files["space_cyclic.json"] = cyclic_space_json()
    for name, text in files.items():
        with open(os.path.join(directory, name), "w", encoding="utf-8") as fh:
            fh.write(dumps(text))
    return sorted(files)


def fixture_path(name):
    """Path of a shipped fixture file."""
    return str(resources.files("nervekit").joinpath("fixtures", name))
