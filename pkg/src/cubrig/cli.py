"""Command-line front end.

Subcommands: cubeset, poset, necklace, paths, rigidify, sset, verify.
Guards can be overridden through CUBRIG_ENUM_GUARD and CUBRIG_POSET_GUARD.
All JSON output is byte-deterministic for a given invocation and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import boxcat, homology, posets
from .boxcat import mask_of, omega
from .cubeset import (
    BipointedComplex, boundary, complex_from_json, inner_cube,
    inner_open_box, k_complex, open_box, q_complex, standard_cube,
    theta_complex,
)
from .necklace import Necklace, hom_nec, subneck_poset
from .pathcat import leadsto_closure, paths
from .posets import bruhat, nerve, ordered_partitions
from .rigidify import (
    inner_mapping_space, necklace_mapping_space, simplicial_hom,
    subcomplex_mapping_space,
)
from .sset import from_json as sset_from_json
from .verify import verify_suite


def _enum_guard() -> int:
    return int(os.environ.get("CUBRIG_ENUM_GUARD", boxcat.DEFAULT_ENUM_GUARD))


def _poset_guard() -> int:
    return int(os.environ.get("CUBRIG_POSET_GUARD", posets.DEFAULT_POSET_GUARD))


def _parse_ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(t) for t in text.split(","))


def _parse_vertex(text: str, n: int) -> int:
    """Vertex syntax: 'a' for the bottom, 'w' for the top, or coordinates
    like '1,3'."""
    text = text.strip()
    if text in ("a", "alpha", "bot"):
        return 0
    if text in ("w", "omega", "top"):
        return omega(n)
    return mask_of(_parse_ints(text), n)


def _emit(payload, args):
    if getattr(args, "out", None):
        with open(args.out, "w") as handle:
            handle.write(payload if isinstance(payload, str)
                         else json.dumps(payload, sort_keys=True, indent=1))
            handle.write("\n")
    else:
        print(payload if isinstance(payload, str)
              else json.dumps(payload, sort_keys=True, indent=1))


def _builtin_complex(name: str, args):
    if name == "cube":
        return standard_cube(args.n).to_complex()
    if name == "boundary":
        return boundary(args.n).to_complex()
    if name == "open-box":
        return open_box(args.n, args.i, args.eps).to_complex()
    if name == "inner-cube":
        return inner_cube(args.n, args.i, args.eps)[0]
    if name == "inner-open-box":
        return inner_open_box(args.n, args.i, args.eps)[0]
    if name == "q":
        return q_complex(args.n)[0]
    if name == "k":
        return k_complex()
    if name == "theta":
        return theta_complex()[0]
    if name == "necklace":
        return Necklace(tuple(args.beads)).to_complex()
    raise ValueError(f"unknown builtin {name!r}")


def _cmd_cubeset(args) -> int:
    if args.action in ("build", "export"):
        complex_ = _builtin_complex(args.name, args)
        problems = complex_.validate()
        if problems:
            print("\n".join(problems), file=sys.stderr)
            return 1
        if args.action == "export" or args.json:
            _emit(complex_.as_json(), args)
        else:
            counts = complex_.cell_counts()
            print(f"{args.name}: cells by dimension {list(counts)}; valid")
        return 0
    if args.action == "validate":
        with open(args.file) as handle:
            complex_ = complex_from_json(json.load(handle))
        problems = complex_.validate()
        for p in problems:
            print(p)
        print("valid" if not problems else f"{len(problems)} problems")
        return 0 if not problems else 1
    raise ValueError(args.action)


def _named_poset(args):
    if args.action == "bruhat" or getattr(args, "bruhat", None) is not None:
        n = args.n if args.action == "bruhat" else args.bruhat
        return bruhat(range(1, n + 1), guard=_poset_guard())
    n = args.n if args.action == "partitions" else args.partitions
    return ordered_partitions(n, guard=_poset_guard())


def _cmd_poset(args) -> int:
    if args.action in ("bruhat", "partitions"):
        p = _named_poset(args)
        if args.dot:
            _emit(p.to_dot(args.action), args)
        else:
            print(f"{len(p)} elements, {len(p.cover_pairs())} covers, "
                  f"height {p.height()}")
        return 0
    if args.action == "nerve":
        p = _named_poset(args)
        space = nerve(p)
        rep = homology.homology(space)
        if args.json:
            _emit({"cells": list(space.nondegenerate_counts()),
                   "betti": list(rep.betti),
                   "torsion": [list(t) for t in rep.torsion]}, args)
        else:
            print(f"nerve cells {list(space.nondegenerate_counts())}; {rep}")
        return 0
    if args.action == "export-dot":
        p = _named_poset(args)
        _emit(p.to_dot("poset"), args)
        return 0
    raise ValueError(args.action)


def _cmd_necklace(args) -> int:
    if args.action == "hom":
        src = Necklace(_parse_ints(args.src))
        dst = Necklace(_parse_ints(args.dst))
        homs = hom_nec(src, dst, guard=_enum_guard())
        if args.json:
            payload = [[[j, psi.normal.as_json()] for j, psi in f.components]
                       for f in homs]
            _emit({"count": len(homs), "morphisms": payload}, args)
        else:
            print(f"{len(homs)} morphisms from {src.beads} to {dst.beads}")
        return 0
    if args.action in ("subneck", "export"):
        if args.beads:
            t = Necklace(_parse_ints(args.beads))
            sub, n = t.to_subcomplex(), t.total
        elif args.box:
            n, i, eps = _parse_ints(args.box)
            sub = open_box(n, i, eps)
        elif args.boundary:
            n = args.boundary
            sub = boundary(n)
        else:
            n = args.cube
            sub = standard_cube(n)
        a = _parse_vertex(args.frm, n)
        b = _parse_vertex(args.to, n)
        sp = subneck_poset(sub, a, b)
        if args.action == "export" or args.json:
            flags = [[list(boxcat.coords_of(v)) for v in flag]
                     for flag in sp.elements]
            _emit({"count": len(sp), "flags": flags}, args)
        elif args.dot:
            _emit(sp.to_dot("subneck"), args)
        else:
            print(f"{len(sp)} necklace embeddings, "
                  f"{len(sp.cover_pairs())} covers")
        return 0
    raise ValueError(args.action)


def _spec_complex(spec: str):
    """complex specs: cube:N, boundary:N, box:N,I,E, necklace:B1,B2,...,
    theta, k."""
    name, _, rest = spec.partition(":")
    if name == "cube":
        n = int(rest)
        return standard_cube(n).to_complex(), n, None
    if name == "boundary":
        n = int(rest)
        return boundary(n).to_complex(), n, None
    if name == "box":
        n, i, eps = _parse_ints(rest)
        return open_box(n, i, eps).to_complex(), n, None
    if name == "necklace":
        t = Necklace(_parse_ints(rest))
        return t.to_complex(), t.total, None
    if name == "theta":
        complex_, _, (a, b) = theta_complex()
        return complex_, None, (a, b)
    if name == "k":
        return k_complex(), None, ("0", "1")
    raise ValueError(f"unknown complex spec {spec!r}")


def _cmd_paths(args) -> int:
    complex_, n, default_points = _spec_complex(args.complex)
    if n is not None:
        a = _parse_vertex(args.frm, n)
        b = _parse_vertex(args.to, n)
        bp = BipointedComplex(complex_, (a, a), (b, b))
    else:
        bp = BipointedComplex(complex_, *default_points)
    if args.action == "list":
        ps = paths(bp)
        if args.json:
            _emit({"count": len(ps),
                   "paths": [[str(e) for e in p.edges] for p in ps]}, args)
        else:
            print(f"{len(ps)} paths")
            for p in ps:
                print("  " + (" . ".join(str(e) for e in p.edges) or "constant"))
        return 0
    pre = leadsto_closure(bp)
    if args.action == "order":
        pairs = [(i, j) for i in range(len(pre.paths))
                 for j in range(len(pre.paths))
                 if i != j and pre.leadsto(pre.paths[i], pre.paths[j])]
        if args.json:
            _emit({"paths": [[str(e) for e in p.edges] for p in pre.paths],
                   "leadsto": pairs,
                   "partial_order": pre.is_partial_order()}, args)
        else:
            print(f"{len(pre)} paths, {len(pairs)} strict relations, "
                  f"partial order: {pre.is_partial_order()}")
        return 0
    if args.action == "dot":
        _emit(pre.to_poset().to_dot("paths"), args)
        return 0
    raise ValueError(args.action)


def _cmd_rigidify(args) -> int:
    name, _, rest = args.complex.partition(":")
    if name == "simplex":
        n = int(rest)
        ms = simplicial_hom(n, int(args.frm), int(args.to))
    elif name in ("inner-cube", "inner-box"):
        n, i, eps = _parse_ints(rest)
        a = _parse_vertex(args.frm, n)
        b = _parse_vertex(args.to, n)
        ms = inner_mapping_space(n, i, eps, a, b, box=(name == "inner-box"))
    elif name == "necklace":
        t = Necklace(_parse_ints(rest))
        a = _parse_vertex(args.frm, t.total)
        b = _parse_vertex(args.to, t.total)
        ms = necklace_mapping_space(t, a, b)
    elif name in ("cube", "boundary", "box"):
        if name == "cube":
            n = int(rest)
            sub = standard_cube(n)
        elif name == "boundary":
            n = int(rest)
            sub = boundary(n)
        else:
            n, i, eps = _parse_ints(rest)
            sub = open_box(n, i, eps)
        a = _parse_vertex(args.frm, n)
        b = _parse_vertex(args.to, n)
        ms = subcomplex_mapping_space(sub, a, b)
    else:
        raise ValueError(f"unknown complex spec {args.complex!r}")
    payload = {
        "provenance": ms.provenance,
        "cells": list(ms.space.nondegenerate_counts()),
    }
    if args.homology:
        rep = homology.homology(ms.space)
        payload["betti"] = list(rep.betti)
        payload["torsion"] = [list(t) for t in rep.torsion]
        payload["contractible"] = rep.is_point_like()
    if args.json:
        _emit(payload, args)
    else:
        line = f"{ms.provenance}: cells {payload['cells']}"
        if args.homology:
            line += f"; {homology.homology(ms.space)}"
        print(line)
    return 0


def _cmd_sset(args) -> int:
    with open(args.file) as handle:
        space = sset_from_json(json.load(handle))
    if args.action == "euler":
        print(space.euler_characteristic())
        return 0
    rep = homology.homology(space)
    if args.json:
        _emit({"betti": list(rep.betti),
               "torsion": [list(t) for t in rep.torsion],
               "components": rep.components}, args)
    else:
        print(rep)
    return 0


def _cmd_verify(args) -> int:
    status, report = verify_suite(args.suite, seed=args.seed)
    if args.json:
        _emit(report, args)
    else:
        for battery in report["batteries"]:
            print(f"[{battery['name']}]")
            for claim in battery["claims"]:
                mark = "PASS" if claim["passed"] else "FAIL"
                print(f"  {mark} {claim['name']} "
                      f"({claim['millis']:.0f} ms): {claim['detail']}")
        print("all passed" if status == 0 else "FAILURES above")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubrig",
        description="cubical sets, necklaces, path orders and rigidification")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cube = sub.add_parser("cubeset", help="build and validate complexes")
    p_cube.add_argument("action", choices=["build", "validate", "export"])
    p_cube.add_argument("--name", default="cube",
                        choices=["cube", "boundary", "open-box", "inner-cube",
                                 "inner-open-box", "q", "k", "theta", "necklace"])
    p_cube.add_argument("-n", type=int, default=2)
    p_cube.add_argument("--i", type=int, default=1)
    p_cube.add_argument("--eps", type=int, default=1)
    p_cube.add_argument("--beads", type=lambda s: list(_parse_ints(s)), default=[1])
    p_cube.add_argument("--file", help="JSON file for validate")
    p_cube.add_argument("--json", action="store_true")
    p_cube.add_argument("--out")
    p_cube.set_defaults(func=_cmd_cubeset)

    p_poset = sub.add_parser("poset", help="named posets, nerves, DOT export")
    p_poset.add_argument("action",
                         choices=["bruhat", "partitions", "nerve", "export-dot"])
    p_poset.add_argument("-n", type=int, default=3)
    p_poset.add_argument("--bruhat", type=int)
    p_poset.add_argument("--partitions", type=int)
    p_poset.add_argument("--dot", action="store_true")
    p_poset.add_argument("--json", action="store_true")
    p_poset.add_argument("--out")
    p_poset.set_defaults(func=_cmd_poset)

    p_neck = sub.add_parser("necklace", help="necklace morphisms and embeddings")
    p_neck.add_argument("action", choices=["hom", "subneck", "export"])
    p_neck.add_argument("--src", default="1")
    p_neck.add_argument("--dst", default="1")
    p_neck.add_argument("--beads", default="")
    p_neck.add_argument("--cube", type=int, default=2)
    p_neck.add_argument("--box", default="")
    p_neck.add_argument("--boundary", type=int)
    p_neck.add_argument("--from", dest="frm", default="a")
    p_neck.add_argument("--to", default="w")
    p_neck.add_argument("--dot", action="store_true")
    p_neck.add_argument("--json", action="store_true")
    p_neck.add_argument("--out")
    p_neck.set_defaults(func=_cmd_necklace)

    p_paths = sub.add_parser("paths", help="path sets and the leadsto order")
    p_paths.add_argument("action", choices=["list", "order", "dot"])
    p_paths.add_argument("--complex", required=True)
    p_paths.add_argument("--from", dest="frm", default="a")
    p_paths.add_argument("--to", default="w")
    p_paths.add_argument("--json", action="store_true")
    p_paths.add_argument("--out")
    p_paths.set_defaults(func=_cmd_paths)

    p_rig = sub.add_parser("rigidify", help="mapping spaces of the rigidification")
    p_rig.add_argument("action", choices=["hom"])
    p_rig.add_argument("--complex", required=True)
    p_rig.add_argument("--from", dest="frm", default="a")
    p_rig.add_argument("--to", default="w")
    p_rig.add_argument("--homology", action="store_true")
    p_rig.add_argument("--json", action="store_true")
    p_rig.add_argument("--out")
    p_rig.set_defaults(func=_cmd_rigidify)

    p_sset = sub.add_parser("sset", help="homology of stored simplicial sets")
    p_sset.add_argument("action", choices=["homology", "euler"])
    p_sset.add_argument("file")
    p_sset.add_argument("--json", action="store_true")
    p_sset.add_argument("--out")
    p_sset.set_defaults(func=_cmd_sset)

    p_verify = sub.add_parser("verify", help="run a verification battery")
    p_verify.add_argument("suite")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--json", action="store_true")
    p_verify.add_argument("--out")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
