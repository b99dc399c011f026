import io
import json
import os
import subprocess
import sys

import pytest

from nervekit import serialize as ser
from nervekit.category import cyclic_group, nerve_simplicial
from nervekit.cli import run
from nervekit.finspace import discrete_space, trivial_cover
from nervekit.fixtures import fixture_path
from nervekit.principal import group_bundle

SIGMA = fixture_path("bicat_sigma2_z2.json")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    return code, json.loads(out), err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(ser.dumps(obj))
    return str(p)


def point_chain(k):
    names = [str(i) for i in range(1, k + 1)]
    return {"space": {"points": ["p"], "leq": []},
            "sets": {n: ["p"] for n in names},
            "index_leq": [[a, b] for a, b in zip(names, names[1:])]}


def test_nerve_of_double_suspension():
    code, res, _ = call_json("nerve", "--bicategory", SIGMA, "--maxdim", "4")
    assert code == 0
    assert res["counts"] == [1, 1, 2, 8, 64]
    assert res["nerve"] == "duskin" and res["schema_version"] == 1
    assert res["artifact"]["counts"] == [1, 1, 2, 8, 64]


def test_nerve_of_category():
    code, res, _ = call_json("nerve", "--category", fixture_path("cat_z2.json"), "--maxdim", "3")
    assert code == 0 and res["counts"] == [1, 2, 4, 8]


def test_nerve_needs_exactly_one_source():
    code, res, err = call_json("nerve", "--maxdim", "2")
    assert code == 2 and res["error"] == "UsageError" and err.startswith("nervekit:")


def test_output_writes_artifact(tmp_path):
    dest = tmp_path / "nerve.json"
    code, res, _ = call_json("--output", str(dest), "nerve", "--bicategory", SIGMA,
                             "--maxdim", "3")
    assert code == 0 and res["output"] == str(dest) and "artifact" not in res
    Y = ser.sset_from_json(json.loads(dest.read_text()))
    assert list(Y.counts()) == [1, 1, 2, 8]


def test_format_flag_after_subcommand():
    code, out, _ = call("validate", "--category", fixture_path("cat_ord2.json"),
                        "--format", "text")
    assert code == 0
    assert "ok: True" in out.splitlines()


def test_csv_output():
    code, out, _ = call("--format", "csv", "nerve", "--category",
                        fixture_path("cat_terminal.json"), "--maxdim", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "key,value"
    assert "counts,1 1 1" in lines
    assert not any(l.startswith("artifact") for l in lines)


def test_lp_characterization_passes():
    code, res, _ = call_json("check", "lp-characterization", "--bicategory", SIGMA)
    assert code == 0 and res["ok"]


def test_lp_characterization_needs_depth():
    code, res, _ = call_json("check", "lp-characterization", "--bicategory", SIGMA,
                             "--maxdim", "3")
    assert code == 2 and res["error"] == "TruncationTooShallow"


def test_lp_nerve_counts():
    code, res, _ = call_json("lp-nerve", "--bicategory", fixture_path("bicat_terminal.json"),
                             "--maxdim", "3")
    assert code == 0 and res["counts"] == [[1, 1]] * 4
    code, res, _ = call_json("lp-nerve", "--bicategory", fixture_path("bicat_terminal.json"),
                             "--maxdim", "2")
    assert code == 2 and res["error"] == "ValueError"
    code, res, _ = call_json("lp-nerve", "--bicategory", SIGMA, "--maxdim", "1",
                             "--bisimplicial", "--maxdim-v", "1")
    assert code == 0 and [1, 1, 2] in res["counts"]


def test_cyclic_space_is_input_error():
    code, res, err = call_json("validate", "--space", fixture_path("space_cyclic.json"))
    assert code == 2 and res["error"] == "CycleError"
    assert "CycleError" in err


def test_malformed_file(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{")
    code, res, _ = call_json("validate", "--space", str(p))
    assert code == 2 and res["error"] == "ParseError"


@pytest.mark.parametrize("name", ["bicat_terminal.json", "bicat_nonstrict.json",
                                  "bicat_ld_z2.json"])
def test_validate_bicategory(name):
    code, res, _ = call_json("validate", "--bicategory", fixture_path(name))
    assert code == 0 and res["summary"]["objects"] >= 1


def test_corrupted_sset_fails_check(tmp_path):
    d = ser.sset_to_json(nerve_simplicial(cyclic_group(2), 2))
    n, i, table = next(e for e in d["d"] if e[0] == 2 and e[1] == 0)
    cells = sorted(table)
    edges = d["levels"][1]
    table[cells[0]] = edges[1] if table[cells[0]] == edges[0] else edges[0]
    path = write(tmp_path, "bad.json", d)
    code, res, _ = call_json("check", "simplicial", "--input", path)
    assert code == 1 and not res["ok"] and res["report"]["violations"]
    code, res, _ = call_json("validate", "--sset", path)
    assert code == 1


def test_principal_small_modes(tmp_path):
    G = cyclic_group(2)
    P = trivial_cover(discrete_space(["p"]), ["0", "1"])
    free = {(g, (x, e)): (x, str((int(g) + int(e)) % 2)) for g in G.arrows()
            for (x, e) in P.total.points}
    still = {(g, e): e for g in G.arrows() for e in P.total.points}
    good = write(tmp_path, "good.json", ser.bundle_to_json(group_bundle(G, P, free)))
    bad = write(tmp_path, "bad.json", ser.bundle_to_json(group_bundle(G, P, still)))
    assert call("principal", "--mode", "small", "--input", good)[0] == 0
    code, res, _ = call_json("principal", "--mode", "small", "--input", bad)
    assert code == 1 and not res["ok"]


def test_principal_sset_on_nerve(tmp_path):
    path = write(tmp_path, "n.json", ser.sset_to_json(nerve_simplicial(cyclic_group(2), 3)))
    code, res, _ = call_json("principal", "--mode", "sset", "--input", path)
    assert code in (0, 1)
    assert "nerve_of_linear_order" in res["report"]["details"]


@pytest.mark.parametrize("k,expected", [(3, 2), (2, 1)])
def test_enumerate_augmentations(tmp_path, k, expected):
    cover = write(tmp_path, "cover.json", point_chain(k))
    code, res, _ = call_json("enumerate", "aug", "--cover", cover, "--bicategory", SIGMA)
    assert code == 0 and res["count"] == expected
    code, res, _ = call_json("enumerate", "lax", "--cover", cover, "--bicategory", SIGMA,
                             "--list")
    assert res["count"] == expected and len(res["items"]) == expected


def test_enumerate_lin2_singletons(tmp_path):
    cover = write(tmp_path, "cover.json", point_chain(1))
    code, res, _ = call_json("enumerate", "lin2", "--cover", cover, "--cover2", cover,
                             "--bicategory", fixture_path("bicat_terminal.json"),
                             "--maxdim", "1")
    assert code == 0 and res["count"] == 1


def test_lin2_needs_second_cover(tmp_path):
    cover = write(tmp_path, "cover.json", point_chain(1))
    code, res, _ = call_json("enumerate", "lin2", "--cover", cover,
                             "--bicategory", fixture_path("bicat_terminal.json"))
    assert code == 2


def test_homology_text_and_csv():
    code, out, _ = call("--format", "text", "homology", "--category",
                        fixture_path("cat_z2.json"), "--degree", "0", "1", "2", "3")
    assert code == 0
    assert out.splitlines() == ["truncation 4", "H_0 = Z", "H_1 = Z/2", "H_2 = 0",
                                "H_3 = Z/2"]
    code, out, _ = call("--format", "csv", "homology", "--category",
                        fixture_path("cat_kronecker.json"), "--degree", "1")
    assert out.splitlines() == ["degree,free_rank,torsion,text", "1,1,,Z"]


def test_homology_too_shallow(tmp_path):
    path = write(tmp_path, "n.json", ser.sset_to_json(nerve_simplicial(cyclic_group(2), 2)))
    code, res, _ = call_json("homology", "--input", path, "--degree", "2")
    assert code == 2 and res["error"] == "TruncationTooShallow"


def test_cosk_unit(tmp_path):
    path = write(tmp_path, "n.json", ser.sset_to_json(nerve_simplicial(cyclic_group(2), 4)))
    code, res, _ = call_json("cosk", "--input", path, "--k", "2", "--n", "3")
    assert code == 0 and res["bijective"] and res["cells"] == 8


@pytest.mark.parametrize("value", ["0", "-3", "many"])
def test_bad_thread_setting(monkeypatch, value):
    monkeypatch.setenv("NERVEKIT_THREADS", value)
    code, res, _ = call_json("validate", "--category", fixture_path("cat_z2.json"))
    assert code == 2 and res["error"] == "UsageError"


def test_good_thread_setting(monkeypatch):
    monkeypatch.setenv("NERVEKIT_THREADS", "4")
    assert call("validate", "--category", fixture_path("cat_z2.json"))[0] == 0


def test_unknown_subcommand():
    assert call("frobnicate")[0] == 2


def test_module_entry_point():
    env = dict(os.environ)
    env.pop("NERVEKIT_THREADS", None)
    proc = subprocess.run([sys.executable, "-m", "nervekit", "nerve", "--bicategory", SIGMA,
                           "--maxdim", "3"], capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["counts"] == [1, 1, 2, 8]
