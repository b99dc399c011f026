"""nervekit command line.

Exit codes: 0 success, 1 a check ran and failed (the report carries the
witnesses), 2 bad input (parse errors, invalid data, truncation too shallow).
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys

from . import serialize as ser
from .errors import InputError, NervekitError, TruncationTooShallow

SCHEMA_VERSION = 1


class UsageError(InputError):
    pass


def _load(path, parse, **kw):
    """Read and parse a file; module errors get the file name prepended."""
    data = ser.load_file(path)
    try:
        return parse(data, **kw)
    except NervekitError as e:
        e.args = (f"{path}: {e}",) + e.args[1:]
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ser.ParseError(f"{path}: malformed input ({type(e).__name__}: {e})",
                             witness=(path,)) from None


def _result(command, ok, **fields):
    return {"schema_version": SCHEMA_VERSION, "command": command, "ok": ok, **fields}


def _thread_count():
    raw = os.environ.get("NERVEKIT_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise UsageError(f"NERVEKIT_THREADS must be a positive integer, got {raw!r}")
    # all work runs on one thread; the cap only bounds what we would use
    return 1


# -- commands ----------------------------------------------------------------------------

def cmd_validate(args):
    from .bicategory import validate_bicategory
    kinds = [k for k in ("space", "category", "bicategory", "bundle", "sset")
             if getattr(args, k)]
    if len(kinds) != 1:
        raise UsageError("validate takes exactly one of --space/--category/--bicategory/"
                         "--bundle/--sset")
    kind = kinds[0]
    path = getattr(args, kind)
    if kind == "space":
        X = _load(path, ser.space_from_json)
        summary = {"points": len(X.points), "opens": len(X.opens())}
    elif kind == "category":
        C = _load(path, ser.category_from_json)
        summary = {"objects": len(C.objects), "arrows": len(list(C.arrows()))}
    elif kind == "bicategory":
        B = _load(path, lambda d: validate_bicategory(ser.bicategory_from_json(d, check=False)))
        summary = {"objects": len(B.objects), "one_cells": len(B.one_cells),
                   "two_cells": len(B.two_cells)}
    elif kind == "bundle":
        E = _load(path, ser.bundle_from_json)
        summary = {"objects": len(E.C.objects), "points": len(E.X.points)}
    else:
        from .simplicial import check_simplicial_identities
        Y = _load(path, ser.sset_from_json)
        rep = check_simplicial_identities(Y)
        return _result("validate", rep.ok, kind=kind, counts=list(Y.counts()),
                       report=rep.to_json())
    return _result("validate", True, kind=kind, summary=summary)


def _category_or_bicategory(args):
    if bool(args.category) == bool(args.bicategory):
        raise UsageError("give exactly one of --category/--bicategory")
    if args.category:
        return "category", _load(args.category, ser.category_from_json)
    return "bicategory", _load(args.bicategory, ser.bicategory_from_json)


def _nerve(args, maxdim):
    from .bicategory import duskin_nerve
    from .category import nerve_simplicial
    kind, obj = _category_or_bicategory(args)
    if kind == "category":
        return "grothendieck", nerve_simplicial(obj, maxdim)
    return "duskin", duskin_nerve(obj, maxdim)


def cmd_nerve(args):
    which, Y = _nerve(args, args.maxdim)
    out = ser.sset_to_json(Y)
    return _result("nerve", True, nerve=which, counts=list(Y.counts()), artifact=out)


def cmd_lp_nerve(args):
    from .bicategory import lp_2nerve, lp_bisimplicial
    B = _load(args.bicategory, ser.bicategory_from_json)
    if args.bisimplicial:
        Y = lp_bisimplicial(B, args.maxdim, args.maxdim_v)
        counts = [[n, m, c] for (n, m), c in Y.counts().items()]
        return _result("lp-nerve", True, counts=counts, artifact=ser.bisset_to_json(Y))
    X = lp_2nerve(B, args.maxdim)
    art = ser.catsset_to_json(X)
    counts = [[len(c["objects"]), len(c["arrows"])] for c in art["levels"]]
    return _result("lp-nerve", True, counts=counts, artifact=art)


def cmd_cosk(args):
    from .simplicial import coskeleton_level
    Y = _load(args.input, ser.sset_from_json)
    c = coskeleton_level(Y, args.k, args.n)
    fields = {"k": args.k, "n": args.n, "cells": len(c.cells)}
    ok = True
    if c.unit is not None:
        fields.update(unit_image=len(c.image), injective=c.injective, bijective=c.bijective)
        ok = c.bijective
    return _result("cosk", ok, **fields)


def cmd_check(args):
    if args.what == "lp-characterization":
        from .bicategory import lp_2nerve
        from .simplicial import check_lp_characterization
        if bool(args.input) == bool(args.bicategory):
            raise UsageError("give exactly one of --input/--bicategory")
        if args.input:
            X = _load(args.input, ser.catsset_from_json)
        else:
            X = lp_2nerve(_load(args.bicategory, ser.bicategory_from_json), args.maxdim)
        rep = check_lp_characterization(X)
    elif args.what == "sheaf-on-sspace":
        from .simplicial import validate_sheaf_on_sspace
        rep = validate_sheaf_on_sspace(_load(_need(args.input, "--input"),
                                             ser.sheaf_on_sspace_from_json))
    else:
        from .simplicial import check_simplicial_identities
        rep = check_simplicial_identities(_load(_need(args.input, "--input"),
                                                ser.sset_from_json))
    return _result("check " + args.what, rep.ok, report=rep.to_json())


def _need(value, flag):
    if not value:
        raise UsageError(f"{flag} is required")
    return value


def cmd_principal(args):
    from .principal import is_nerve_of_linear_order, is_principal_bundle, \
        is_principal_setale, is_principal_ssets
    if args.mode == "small":
        rep = is_principal_bundle(_load(args.input, ser.bundle_from_json))
        return _result("principal", rep.ok, mode="small", report=rep.to_json())
    if args.mode == "setale":
        rep = is_principal_setale(_load(args.input, ser.setale_bundle_from_json))
        return _result("principal", rep.ok, mode="setale", report=rep.to_json())
    S = _load(args.input, ser.sset_from_json)
    rep = is_principal_ssets(S)
    rep.details["nerve_of_linear_order"] = is_nerve_of_linear_order(S)
    return _result("principal", rep.ok, mode="sset", report=rep.to_json())


def cmd_enumerate(args):
    from ._util import _jsonable
    from .bicategory import duskin_nerve, lp_bisimplicial
    from .principal import augmentation_to_lax, enumerate_augmentations, enumerate_lin2, \
        enumerate_normal_lax_from_order
    L = _load(args.cover, ser.cover_from_json)
    B = _load(args.bicategory, ser.bicategory_from_json)
    if args.what == "aug":
        D = args.maxdim if args.maxdim is not None else 3
        items = enumerate_augmentations(L, duskin_nerve(B, D), D)
        listed = [augmentation_to_lax(a) for a in items]
    elif args.what == "lax":
        items = enumerate_normal_lax_from_order(L, B)
        listed = items
    else:
        L2 = _load(_need(args.cover2, "--cover2"), ser.cover_from_json)
        H = args.maxdim if args.maxdim is not None else 3
        V = args.maxdim_v if args.maxdim_v is not None else H
        Y = lp_bisimplicial(B, H, V)
        items = enumerate_lin2(L, L2, Y, H, V)
        listed = [{f"{n},{m}": {ser.label(x): ser.label(y) for x, y in sorted(
            mp.items(), key=lambda kv: ser.label(kv[0]))} for (n, m), mp in sorted(a.items())
            if n + m <= 1} for a in items]
    fields = {"what": args.what, "count": len(items)}
    if args.list:
        fields["items"] = _jsonable(listed)
    return _result("enumerate", True, **fields)


def cmd_homology(args):
    from .homology import homology_table
    degrees = sorted(set(args.degree))
    top = max(degrees) + 1
    if args.input:
        Y = _load(args.input, ser.sset_from_json)
    else:
        _, Y = _nerve(args, args.maxdim if args.maxdim is not None else top)
    table = homology_table(Y, degrees)
    rows = [{"degree": n, **table[n].to_json()} for n in degrees]
    return _result("homology", True, truncation=Y.maxdim, groups=rows)


# -- output ------------------------------------------------------------------------------

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and all(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj if not isinstance(obj, list) else " ".join(map(str, obj))


def render(result, fmt):
    if fmt == "json":
        return ser.dumps(result)
    if "groups" in result and fmt in ("csv", "text"):
        rows = result["groups"]
        if fmt == "text":
            lines = [f"truncation {result['truncation']}"]
            lines += [f"H_{r['degree']} = {r['text']}" for r in rows]
            return "\n".join(lines) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "free_rank", "torsion", "text"])
        for r in rows:
            w.writerow([r["degree"], r["free_rank"], " ".join(map(str, r["torsion"])), r["text"]])
        return buf.getvalue()
    shown = {k: v for k, v in result.items() if k != "artifact"}
    if fmt == "text":
        return "".join(f"{k}: {v}\n" for k, v in _flatten(shown))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k, v in _flatten(shown):
        w.writerow([k, v])
    return buf.getvalue()


def build_parser():
    # output flags work before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--output", default=argparse.SUPPRESS,
                        help="write the result (or the produced artifact) here")
    p = argparse.ArgumentParser(prog="nervekit", description=__doc__.splitlines()[0],
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    v = sub.add_parser("validate", help="validate a space, category, bicategory, bundle or "
                                        "simplicial set file")
    for k in ("space", "category", "bicategory", "bundle", "sset"):
        v.add_argument(f"--{k}")
    v.set_defaults(func=cmd_validate)

    n = sub.add_parser("nerve", help="Grothendieck nerve of a category or Duskin nerve of a "
                                     "bicategory")
    n.add_argument("--category")
    n.add_argument("--bicategory")
    n.add_argument("--maxdim", type=int, required=True)
    n.set_defaults(func=cmd_nerve)

    lp = sub.add_parser("lp-nerve", help="Lack-Paoli 2-nerve (Cat-valued or bisimplicial)")
    lp.add_argument("--bicategory", required=True)
    lp.add_argument("--maxdim", type=int, required=True)
    lp.add_argument("--bisimplicial", action="store_true")
    lp.add_argument("--maxdim-v", type=int)
    lp.set_defaults(func=cmd_lp_nerve)

    c = sub.add_parser("cosk", help="coskeleton level and its unit map")
    c.add_argument("--input", required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(func=cmd_cosk)

    ch = sub.add_parser("check", help="run a characterization or validity check")
    ch.add_argument("what", choices=("lp-characterization", "sheaf-on-sspace", "simplicial"))
    ch.add_argument("--input")
    ch.add_argument("--bicategory")
    ch.add_argument("--maxdim", type=int, default=4)
    ch.set_defaults(func=cmd_check)

    pr = sub.add_parser("principal", help="principality of a bundle or simplicial set")
    pr.add_argument("--mode", choices=("small", "setale", "sset"), required=True)
    pr.add_argument("--input", required=True)
    pr.set_defaults(func=cmd_principal)

    e = sub.add_parser("enumerate", help="augmentations, lax functors or Lin^2 maps")
    e.add_argument("what", choices=("aug", "lax", "lin2"))
    e.add_argument("--cover", required=True, help="ordered open cover (with its space)")
    e.add_argument("--cover2", help="second cover for lin2")
    e.add_argument("--bicategory", required=True)
    e.add_argument("--maxdim", type=int)
    e.add_argument("--maxdim-v", type=int)
    e.add_argument("--list", action="store_true", help="include the enumerated items")
    e.set_defaults(func=cmd_enumerate)

    h = sub.add_parser("homology", help="integral homology table")
    h.add_argument("--input")
    h.add_argument("--category")
    h.add_argument("--bicategory")
    h.add_argument("--maxdim", type=int)
    h.add_argument("--degree", type=int, nargs="+", required=True)
    h.set_defaults(func=cmd_homology)
    return p


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    args.format = getattr(args, "format", "json")
    args.output = getattr(args, "output", None)
    try:
        _thread_count()
        result = args.func(args)
        code = 0 if result["ok"] else 1
    except (NervekitError, TruncationTooShallow, ValueError) as e:
        # a ValueError here comes from an out-of-range numeric argument
        from ._util import _jsonable
        result = _result(args.command, False, error=type(e).__name__, message=str(e),
                         witness=_jsonable(getattr(e, "witness", None)))
        print(f"nervekit: {type(e).__name__}: {e}", file=stderr)
        code = 2
    if args.output and "artifact" in result:
        # artifact-producing commands write the artifact itself; the summary goes to stdout
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(ser.dumps(result["artifact"]))
        result = {k: v for k, v in result.items() if k != "artifact"}
        result["output"] = args.output
        stdout.write(render(result, args.format))
        return code
    text = render(result, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv=None):
    sys.exit(run(argv))
