"""Command-line interface: ``zigzags <command> ...``.

Every command builds a report dict; ``--json`` prints it key-sorted,
otherwise a short text rendering is printed.  Exit codes: 0 success,
1 bad input (parse/validation/budget), 2 a checked identity failed.
"""
from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import math
import sys
import time
from pathlib import Path

from . import complex as cc
from .coxeter import (
    DEFAULT_CAP,
    coxeter_complex,
    coxeter_number,
    enumerate_group,
    resolve_matrix,
    sample_permutations,
    verify_prop_3_5,
)
from .errors import (
    InputError,
    LevelOutOfRange,
    NotChamber,
    NotThin,
    VerificationError,
    ZigzagError,
)
from .geodesic import (
    are_z_connected,
    is_distance_normal_pair,
    z_connection_matrix,
    zigzags_through_geodesic,
)
from .polytope import (
    flag_complex,
    generalized_lengths,
    named_polytope,
    prop_3_6_check,
    read_apoly,
)
from .zigzag import enumerate_zigzags, zigzag_predicates

# groups / flag counts above these need --deep
DEEP_ORDER = 10_000
DEEP_FLAGS = 10_000


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _load_complex(src: str):
    """A .cplx path or a built-in name understood by ``make``."""
    p = Path(src)
    if p.is_file():
        data = p.read_bytes()
        return cc.validate_thin_chamber(cc.parse_cplx(data.decode("utf-8"))), _digest(data)
    if p.suffix == ".cplx":
        raise InputError(f"no such file: {src}")
    # built-ins are read back from their own text, so a report on a name
    # matches the report on the exported file
    text = cc.format_cplx(_make(src))
    return cc.validate_thin_chamber(cc.parse_cplx(text)), _digest(text.encode())


def _make(name: str):
    if Path(name).is_file():
        return cc.validate_thin_chamber(cc.read_cplx(name))
    kind, _, arg = name.partition(":")
    if kind == "coxeter":
        return coxeter_complex(resolve_matrix(arg)).complex
    if kind == "flag":
        p = read_apoly(arg) if Path(arg).is_file() else named_polytope(arg)
        return flag_complex(p)
    return cc.builtin(name)


def _tokens(text: str) -> list:
    return text.replace(",", " ").split()


def _labels(cx, verts) -> list:
    return cx.label_seq(verts)


# -- commands ------------------------------------------------------------------

def cmd_validate(args) -> dict:
    p = Path(args.file)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise InputError(str(exc)) from None
    c = cc.parse_cplx(data.decode("utf-8"))
    res = {"rank": c.rank, "vertices": c.num_vertices, "facets": c.num_facets, "pure": True,
           "thin": None, "chamber": None}
    err = None
    try:
        cc.validate_thin_chamber(c)
        res["thin"] = res["chamber"] = True
    except NotThin as exc:
        res["thin"], err = False, exc
    except NotChamber as exc:
        res["thin"], res["chamber"], err = True, False, exc
    if err is not None:
        res["error"] = f"{type(err).__name__}: {err}"
    return {"result": res, "input_digest": _digest(data), "_exit": 1 if err else 0}


def cmd_zigzags(args) -> dict:
    cx, digest = _load_complex(args.src)
    if args.shadow is not None and not 0 <= args.shadow < cx.rank:
        raise LevelOutOfRange(f"shadow level {args.shadow} outside 0..{cx.rank - 1}")
    s = zigzag_predicates(cx)
    items = []
    for z in enumerate_zigzags(cx):
        item = {"length": z.length, "simple": z.is_simple, "vertices": _labels(cx, z.vertex_shadow)}
        if args.shadow is not None:
            item["shadow"] = [_labels(cx, f) for f in z.shadow(args.shadow).faces]
        items.append(item)
    res = {
        "rank": cx.rank, "facets": cx.num_facets, "count": s.count, "z_simple": s.z_simple,
        "z_uniform": s.z_uniform, "common_length": s.common_length, "num_flags": s.num_flags,
        "expected_count": s.expected_count, "count_formula_holds": s.count_formula_holds,
        "flags_in_zigzags": sum(2 * l for l in s.lengths), "conserved": s.conserved,
        "zigzags": items,
    }
    if args.shadow is not None:
        res["shadow_level"] = args.shadow
    bad = s.count_formula_holds is False
    return {"result": res, "input_digest": digest, "_exit": 2 if bad else 0}


def cmd_zconnect(args) -> dict:
    cx, digest = _load_complex(args.src)
    if args.pair:
        x, y = (cx.face(_tokens(t)) for t in args.pair)
        res = {"faces": [_labels(cx, x), _labels(cx, y)], "z_connected": are_z_connected(cx, x, y)}
    else:
        k = args.rank
        if not 0 <= k < cx.rank:
            raise LevelOutOfRange(f"rank {k} outside 0..{cx.rank - 1}")
        faces, mat = z_connection_matrix(cx, k)
        res = {"rank": k, "faces": [_labels(cx, f) for f in faces],
               "matrix": ["".join("1" if v else "0" for v in row) for row in mat],
               "all_connected": all(all(r) for r in mat)}
    return {"result": res, "input_digest": digest}


def cmd_geodesic(args) -> dict:
    cx, digest = _load_complex(args.src)
    x, y = cx.face(_tokens(args.frm)), cx.face(_tokens(args.to))
    n = cx.rank
    v = is_distance_normal_pair(cx, x, y)
    res = {"distance": v.distance, "normal": v.pair_normal, "reason": v.reason, "rank": n,
           "common_vertices": len(set(x) & set(y))}
    if v.pair_normal and v.distance > 0:
        path = list(v.witness_geodesic)
        zs = zigzags_through_geodesic(cx, path)
        m = len(path) - 1
        res["witness"] = [_labels(cx, f) for f in path]
        res["extensions"] = len(zs)
        res["bound"] = math.factorial(n - m) if m <= n else 1
        res["unique"] = m > n
    return {"result": res, "input_digest": digest}


def cmd_coxeter(args) -> dict:
    M = resolve_matrix(args.name)
    t = enumerate_group(M, args.cap)
    if args.verify and t.size > DEEP_ORDER and not args.deep:
        raise InputError(f"|W| = {t.size} > {DEEP_ORDER}: rerun with --deep")
    h = coxeter_number(M, table=t, seed=args.seed)
    sigma = coxeter_complex(t)
    edges = t.cayley_edges()
    res = {"name": M.name, "rank": M.n, "matrix": [list(r) for r in M.m], "order": t.size,
           "coxeter_number": h, "complex_vertices": sigma.complex.num_vertices,
           "complex_facets": sigma.complex.num_facets, "cayley_edges": len(edges)}
    if M.n == 2:
        res["cayley_cycle"] = len(edges) == t.size and all(
            sum(1 for e in edges if w in e) == 2 for w in range(t.size))
    code = 0
    if args.verify:
        rep = verify_prop_3_5(M, args.cap, samples=args.samples, seed=args.seed, strict=False)
        res["verify"] = {
            "z_simple": rep.z_simple, "zigzag_count": rep.zigzag_count,
            "zigzag_lengths": list(rep.zigzag_lengths), "expected_count": rep.expected_count,
            "expected_length": rep.expected_length, "shadows_checked": rep.shadows_checked,
            "powers_avoid_parabolics": rep.powers_avoid_parabolics,
            "count_ok": rep.count_ok, "length_ok": rep.length_ok, "passed": rep.passed,
        }
        code = 0 if rep.passed else 2
    return {"result": res, "input_digest": _digest(args.name.encode()), "_exit": code}


def cmd_polytope(args) -> dict:
    src = Path(args.name)
    if src.is_file():
        data = src.read_bytes()
        p = read_apoly(src)
    else:
        data = args.name.encode()
        p = named_polytope(args.name, args.cap)
    n = p.rank
    if p.num_flags > DEEP_FLAGS and args.check_prop_3_6 and not args.deep:
        raise InputError(f"{p.num_flags} flags > {DEEP_FLAGS}: rerun with --deep")
    if n <= 4:
        deltas = list(itertools.permutations(range(n)))
    else:
        deltas = [tuple(d) for d in sample_permutations(n, args.samples, args.seed)]
    lengths = generalized_lengths(p, deltas)
    common = set(itertools.chain.from_iterable(lengths.values()))
    res = {"rank": n, "f_vector": list(p.f_vector), "flags": p.num_flags,
           "deltas_checked": len(deltas),
           "lengths": {" ".join(map(str, d)): list(v) for d, v in lengths.items()},
           "generalized_length": next(iter(common)) if len(common) == 1 else None,
           "delta_independent": len(common) == 1}
    code = 0
    if args.check_prop_3_6:
        try:
            rep = prop_3_6_check(p)
            res["prop_3_6"] = {"passed": True, "classes": rep.classes,
                               "flag_complex_zigzags": rep.flag_complex_zigzags,
                               "flag_complex_length": rep.flag_complex_length,
                               "expected_count": rep.expected_count}
        except VerificationError as exc:
            res["prop_3_6"] = {"passed": False, "error": str(exc)}
            code = 2
    return {"result": res, "input_digest": _digest(data), "_exit": code}


def cmd_make(args) -> dict:
    cx = _make(args.name)
    text = cc.format_cplx(cx)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    return {"result": {"rank": cx.rank, "facets": cx.num_facets, "vertices": cx.num_vertices,
                       "cplx": text, "output": args.output},
            "input_digest": _digest(args.name.encode())}


# -- text rendering ---------------------------------------------------------------

def _render(command: str, res: dict) -> str:
    lines = []
    if command == "zigzags":
        for z in res["zigzags"]:
            tag = "simple" if z["simple"] else "non-simple"
            lines.append(f"[{z['length']}] {tag}: " + " ".join(z["vertices"]))
            for f in z.get("shadow", []) if res.get("shadow_level", 0) > 0 else []:
                lines.append("    {" + " ".join(f) + "}")
        lines.append(f"count {res['count']}, z-simple {res['z_simple']}, z-uniform {res['z_uniform']}")
        if res["expected_count"] is not None:
            ok = "ok" if res["count_formula_holds"] else "FAIL"
            lines.append(f"n!N/2l = {res['expected_count']:g}: {ok}")
        ok = "ok" if res["conserved"] else "FAIL"
        lines.append(f"conservation: 2*sum(l) = {res['flags_in_zigzags']}, flags = {res['num_flags']}: {ok}")
        return "\n".join(lines)
    if command == "make":
        return res["cplx"].rstrip("\n") if not res["output"] else f"wrote {res['output']}"
    if command == "zconnect" and "matrix" in res:
        for f, row in zip(res["faces"], res["matrix"]):
            lines.append(f"{row}  {{{' '.join(f)}}}")
        return "\n".join(lines)
    for key in sorted(res):
        val = res[key]
        if isinstance(val, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {k}: {val[k]}" for k in sorted(val))
        elif isinstance(val, list) and val and isinstance(val[0], list):
            lines.append(f"{key}: " + " | ".join(" ".join(map(str, v)) for v in val))
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zigzags", description="Zigzags of thin chamber complexes.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="print the JSON report")
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check a .cplx file")
    p.add_argument("file")

    p = add("zigzags", cmd_zigzags, "list zigzags")
    p.add_argument("src", help=".cplx file or built-in (simplex:n, cross:n, bipyramid:m, coxeter:A3, flag:cube:3)")
    p.add_argument("--shadow", type=int, metavar="K")

    p = add("zconnect", cmd_zconnect, "z-connectedness of faces")
    p.add_argument("src")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--rank", type=int, metavar="K")
    g.add_argument("--pair", nargs=2, metavar="FACE")

    p = add("geodesic", cmd_geodesic, "distance normality and extension to zigzags")
    p.add_argument("src")
    p.add_argument("--from", dest="frm", required=True)
    p.add_argument("--to", required=True)

    p = add("coxeter", cmd_coxeter, "Coxeter group and complex")
    p.add_argument("name", help="A3, B4, D4, E6, F4, H3, I2(7), ... or a .cox file")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--deep", action="store_true")

    p = add("polytope", cmd_polytope, "regular polytope and generalized zigzags")
    p.add_argument("name", help="icosahedron, 24-cell, 600-cell, simplex:n, cross:n, cube:n or an .apoly file")
    p.add_argument("--check-prop-3-6", action="store_true")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=24)
    p.add_argument("--deep", action="store_true")

    p = add("make", cmd_make, "emit a built-in complex as .cplx")
    p.add_argument("name", help="simplex:n, cross:n, bipyramid:m, coxeter:NAME, flag:POLY or a .cplx file to normalise")
    p.add_argument("-o", "--output")
    return ap


def run(argv=None) -> tuple:
    """Parse and execute; returns ``(exit code, report)``."""
    args = build_parser().parse_args(argv)
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "json")}
    start = time.perf_counter()
    report = {"command": args.command, "args": echo}
    try:
        out = args.func(args)
        code = out.pop("_exit", 0)
        report.update(out)
        report["status"] = "ok" if code == 0 else ("invalid" if code == 1 else "failed")
    except VerificationError as exc:
        code = 2
        report.update(result=None, input_digest=None, status="failed",
                      error={"type": type(exc).__name__, "message": str(exc)})
    except (InputError, ZigzagError, OSError, UnicodeDecodeError) as exc:
        code = 1
        err = {"type": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "line", None) is not None:
            err["line"] = exc.line
        report.update(result=None, input_digest=None, status="error", error=err)
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return code, report


def main(argv=None) -> int:
    args_list = sys.argv[1:] if argv is None else list(argv)
    code, report = run(args_list)
    if "--json" in args_list:
        print(json.dumps(report, sort_keys=True, default=str))
    elif report.get("result") is not None:
        print(_render(report["command"], report["result"]))
        if code:
            print(report["result"].get("error", report["status"]), file=sys.stderr)
    else:
        e = report["error"]
        print(f"error: {e['type']}: {e['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
