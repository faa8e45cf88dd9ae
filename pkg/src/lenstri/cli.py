"""Command-line front end.

Every command prints JSON with sorted keys, except degree tables under
``--csv``.  Exit status is 0 on success, 1 when a check or construction
fails, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .arith import LensSpec, euclid_steps
from .homology import homology_h1
from .layered import l_k, minimal_layered_lens, pair_solid_tori, s_k, special_lens
from .lst import classify_face, edge_model, find_lsts, lst_intersection, maximal_lsts, s_maximal_lsts
from .moves import edge_flip_4_4, pachner_2_3, pachner_3_2
from .signature import canonical_signature
from .skeleton import Skeleton, degree_census, is_orientable, validate
from .triangulation import Triangulation
from .z2 import classify_tets, dual_surface, inequality_report, stats, surface_orientability, z2_colorings


class UsageError(Exception):
    pass


def _dump(obj, out):
    out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _load(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from None
    try:
        return Triangulation.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path} is not a triangulation file: {exc}") from None


def _write(obj, path, out):
    if path:
        with open(path, "w") as fh:
            _dump(obj, fh)
    else:
        _dump(obj, out)


def parse_range(text):
    """``"3"`` -> 3, ``"1..20"`` -> (1, 20), ``"2,4,6"`` -> [2, 4, 6]."""
    try:
        if ".." in text:
            a, b = text.split("..")
            lo, hi = int(a), int(b)
            if hi < lo:
                raise argparse.ArgumentTypeError(f"empty range {text}")
            return (lo, hi)
        if "," in text:
            return [int(x) for x in text.split(",") if x]
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use N, A..B or A,B,C") from None


# -- commands -----------------------------------------------------------------


def cmd_build(args, out):
    kind = args.kind
    vals = args.values
    want = {"lens": 2, "sk": 1, "lk": 1, "pair": 3}[kind]
    if len(vals) != want:
        raise UsageError(f"build {kind} takes {want} integer argument(s)")
    if kind == "lens":
        P, Q = vals
        L = LensSpec(P, Q)
        if P <= 3:
            if not args.special:
                name = {1: f"{L} = S^3", 2: f"{L} = RP^3", 3: str(L)}[P]
                raise ValueError(
                    f"{name} is a special case: its minimal triangulation does not have "
                    "E(P,Q)-3 tetrahedra; pass --special to build it"
                )
            tri = special_lens(L)
        else:
            tri = minimal_layered_lens(L)
        doc = tri.to_dict()
        doc["meta"] = {"lens": [L.P, L.Q], "E": euclid_steps(L.P, L.Q)}
    elif kind == "sk":
        b = s_k(vals[0])
        doc = b.to_dict()
    elif kind == "lk":
        tri, L = l_k(vals[0])
        doc = tri.to_dict()
        doc["meta"] = {"lens": [L.P, L.Q]}
    else:
        s, t, pr = vals
        tri, order = pair_solid_tori(s, t, pr)
        doc = tri.to_dict()
        doc["meta"] = {"s": s, "t": t, "pairing": pr, "expected_order": order}
    _write(doc, args.out, out)
    return 0


def _skeleton_doc(sk):
    return {
        "edges": [
            {"index": e.index, "degree": e.degree, "boundary": e.boundary, "reversed": e.reversed,
             "tetrahedra": e.tetrahedra}
            for e in sk.edges
        ],
        "vertices": [{"index": v.index, "euler": v.euler, "link": v.link} for v in sk.vertices],
        "faces": [{"index": f.index, "boundary": f.boundary, "edges": list(f.edges)} for f in sk.faces],
    }


def cmd_info(args, out):
    tri = _load(args.file)
    rep = validate(tri)
    doc = {"tetrahedra": tri.size, "validation": rep.to_dict()}
    if rep.ok or not (rep.malformed or rep.self_gluings or rep.face_mismatches or rep.involution_violations):
        sk = Skeleton(tri)
        if args.csv:
            w = csv.writer(out, lineterminator="\n")
            w.writerow(["edge", "degree", "boundary"])
            for e in sk.edges:
                w.writerow([e.index, e.degree, int(e.boundary)])
            return 0
        doc["skeleton"] = _skeleton_doc(sk)
        doc["orientable"] = is_orientable(tri)
        h = homology_h1(tri, sk)
        doc["h1"] = h.to_dict()
        doc["h1_text"] = str(h)
        if tri.is_closed() and len(sk.vertices) == 1:
            deg = degree_census(tri, sk)
            doc["degree_census"] = {str(d): c for d, c in deg.items()}
            doc["counting_identity"] = sum((6 - i) * c for i, c in deg.items())
        if tri.is_connected():
            doc["signature"] = canonical_signature(tri)
        doc["faces"] = [classify_face(tri, f.index, sk) for f in sk.faces]
    _dump(doc, out)
    return 0 if rep.ok else 1


def _colorings(tri, sk):
    if not tri.is_closed() or len(sk.vertices) != 1:
        raise ValueError("colourings need a closed one-vertex triangulation")
    return z2_colorings(tri, sk)


def cmd_color(args, out):
    tri = _load(args.file)
    sk = Skeleton(tri)
    items = []
    ok = True
    for c in _colorings(tri, sk):
        st = stats(tri, c, sk)
        lhs, rhs = st.eq1()
        ok = ok and lhs == rhs
        items.append({
            "parity": list(c.parity),
            "types": classify_tets(tri, c, sk),
            "stats": st.to_dict(),
            "eq1": {"lhs": lhs, "rhs": rhs, "holds": lhs == rhs},
            "inequalities": inequality_report(tri, c, sk=sk),
        })
    _dump({"colorings": items}, out)
    return 0 if ok else 1


def cmd_surface(args, out):
    tri = _load(args.file)
    sk = Skeleton(tri)
    items = []
    ok = True
    for c in _colorings(tri, sk):
        surf = dual_surface(tri, c, sk)
        st = stats(tri, c, sk)
        ok = ok and st.chi == st.chi_k
        items.append({
            "parity": list(c.parity),
            "cells": surf.counts(),
            "chi_cells": st.chi,
            "chi_formula": st.chi_k,
            "orientable": surface_orientability(surf),
        })
    _dump({"surfaces": items}, out)
    return 0 if ok else 1


def cmd_lst(args, out):
    tri = _load(args.file)
    sk = Skeleton(tri)
    lsts = find_lsts(tri, sk=sk)
    maxi = maximal_lsts(tri, lsts)
    smax = s_maximal_lsts(tri, lsts)
    pairs = []
    for i in range(len(smax)):
        for j in range(i + 1, len(smax)):
            r = lst_intersection(tri, smax[i], smax[j], sk)
            pairs.append({"a": list(smax[i].tets), "b": list(smax[j].tets), "shared": r.to_dict()})
    doc = {
        "lsts": [x.to_dict() for x in lsts],
        "maximal": [list(x.tets) for x in maxi],
        "s_maximal": [list(x.tets) for x in smax],
        "s_maximal_intersections": pairs,
    }
    _dump(doc, out)
    return 0


def cmd_model(args, out):
    tri = _load(args.file)
    m = edge_model(tri, args.edge)
    _dump(m.to_dict(), out)
    return 0


def cmd_move(args, out):
    tri = _load(args.file)
    if args.pachner23 is not None:
        res, move = pachner_2_3(tri, args.pachner23), {"move": "2-3", "face": args.pachner23}
    elif args.pachner32 is not None:
        res, move = pachner_3_2(tri, args.pachner32), {"move": "3-2", "edge": args.pachner32}
    else:
        e, d = args.flip
        res, move = edge_flip_4_4(tri, e, d), {"move": "4-4", "edge": e, "diagonal": d}
    doc = res.to_dict()
    doc["meta"] = move
    _write(doc, args.out, out)
    return 0


def cmd_census(args, out):
    from .census import CensusConfig, enumerate_census, filter_by_h1

    cfg = CensusConfig(args.n, jobs=args.jobs)
    res = enumerate_census(cfg, resume=args.resume)
    members = filter_by_h1(res, args.h1) if args.h1 else res.members
    for m in members:
        out.write(json.dumps(m.to_dict(), sort_keys=True) + "\n")
    return 0


def cmd_verify(args, out):
    from .suites import DEFAULTS, _span, lk_degrees, run_suite

    params = {}
    for key in ("k", "s", "t", "P", "q", "n", "size", "rounds", "seed"):
        val = getattr(args, key)
        if val is None:
            continue
        if key not in DEFAULTS[args.suite]:
            raise UsageError(f"suite {args.suite} takes no --{key}")
        if key in ("size", "rounds", "seed") or (key == "n" and args.suite in ("eq1", "census-uniqueness", "moves")):
            if not isinstance(val, int):
                raise UsageError(f"--{key} needs a single integer")
        params[key] = val
    if args.csv:
        if args.suite not in ("sk-degrees", "lk-degrees"):
            raise UsageError("--csv is only available for the degree tables")
        rep = run_suite(args.suite, **params)
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["k", "degrees"])
        for kk in _span(params.get("k", DEFAULTS[args.suite]["k"])):
            vec = list(s_k(kk).degrees) if args.suite == "sk-degrees" else lk_degrees(kk)
            w.writerow([kk, " ".join(map(str, vec))])
        return 0 if rep["ok"] else 1
    rep = run_suite(args.suite, **params)
    _dump(rep, out)
    return 0 if rep["ok"] else 1


# -- parser -------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    from .suites import SUITES

    p = _Parser(prog="lenstri", description="Layered triangulations, Z2 surfaces and census checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="construct a triangulation")
    b.add_argument("kind", choices=["lens", "sk", "lk", "pair"])
    b.add_argument("values", type=int, nargs="+")
    b.add_argument("--out")
    b.add_argument("--special", action="store_true", help="allow S^3, RP^3 and L(3,1)")
    b.set_defaults(func=cmd_build)

    i = sub.add_parser("info", help="validation, skeleton, degrees, H1, orientability")
    i.add_argument("file")
    i.add_argument("--csv", action="store_true", help="edge degree table as CSV")
    i.set_defaults(func=cmd_info)

    for name, func, hlp in (("color", cmd_color, "colourings, tet types, stats and the eq1 balance"),
                            ("surface", cmd_surface, "dual surface cells and Euler characteristic"),
                            ("lst", cmd_lst, "layered solid tori and their intersections")):
        c = sub.add_parser(name, help=hlp)
        c.add_argument("file")
        c.set_defaults(func=func)

    m = sub.add_parser("model", help="edge neighbourhood model and catalog label")
    m.add_argument("file")
    m.add_argument("--edge", type=int, required=True)
    m.set_defaults(func=cmd_model)

    mv = sub.add_parser("move", help="apply a local move")
    mv.add_argument("file")
    g = mv.add_mutually_exclusive_group(required=True)
    g.add_argument("--pachner23", type=int, metavar="FACE")
    g.add_argument("--pachner32", type=int, metavar="EDGE")
    g.add_argument("--flip", type=int, nargs=2, metavar=("EDGE", "DIAG"))
    mv.add_argument("--out")
    mv.set_defaults(func=cmd_move)

    cs = sub.add_parser("census", help="closed orientable one-vertex census as NDJSON")
    cs.add_argument("n", type=int)
    cs.add_argument("--h1")
    cs.add_argument("--jobs", type=int, default=1)
    cs.add_argument("--resume")
    cs.set_defaults(func=cmd_census)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    for key in ("k", "s", "t", "P", "q", "n", "size", "rounds", "seed"):
        v.add_argument(f"--{key}", type=parse_range, default=None)
    v.add_argument("--csv", action="store_true", help="degree table as CSV (sk-degrees, lk-degrees)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except (ValueError, AssertionError) as exc:
        err.write(json.dumps({"error": str(exc)}, sort_keys=True) + "\n")
        return 1


def run(argv):
    """Run the CLI in-process; returns ``(exit code, stdout text, stderr text)``."""
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()
