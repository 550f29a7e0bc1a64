"""Command-line interface.

Exit status: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .algebra import admissible_base_points, algebra_object, classify_admissible_neargroup
from .classify import (brute_force_nimreps, group_ring_nimreps, irreducible_nimreps,
                       neargroup_brute, neargroup_to_nimrep, su2half_admissible)
from .fusion import FusionError, fp_dims
from .groups import GroupError, builtin_group
from .modular import catalog, conjecture_report, get, modular_invariants
from .nimrep import NimRepError, are_equivalent, is_irreducible, to_dot


class UsageError(Exception):
    pass


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _ring(args):
    if getattr(args, "ring", None):
        path = Path(args.ring)
        if path.suffix == ".json" or path.exists():
            return io.ring_from_json(io.load_json(path), path.parent)
        return io.parse_ring_spec(args.ring)
    if getattr(args, "family", None):
        return io.parse_ring_spec(args.family)
    raise UsageError("give --ring or --family")


def cmd_ring(args) -> int:
    r = _ring(args)
    doc = io.ring_to_json(r)
    doc["fp_dims"] = [round(float(d), 12) for d in fp_dims(r).dims]
    _emit(args, io.dumps(doc))
    return 0


def _collection(ring, reps, extra=None) -> dict:
    doc = {"schema": io.SCHEMA, "ring": io.ring_to_json(ring),
           "nimreps": [io.nimrep_to_json(n) | {"irreducible": is_irreducible(n)} for n in reps]}
    doc.update(extra or {})
    return doc


def cmd_nimreps(args) -> int:
    fam = args.family
    if fam == "group":
        if not args.group:
            raise UsageError("--family group needs --group")
        pairs = group_ring_nimreps(builtin_group(args.group))
        reps = [n for _, n in pairs]
        extra = {"subgroups": [list(s.subgroup.elements) for s, _ in pairs]}
        ring = reps[0].ring
    elif fam == "neargroup":
        if not args.group or args.alpha is None:
            raise UsageError("--family neargroup needs --group and --alpha")
        g = builtin_group(args.group)
        sols = neargroup_brute(g, args.alpha, args.max_orbits, args.bound)
        reps = [neargroup_to_nimrep(s) for s in sols]
        extra = {"solutions": [s.to_dict() for s in sols]}
        ring = reps[0].ring if reps else io.parse_ring_spec(f"neargroup:{args.group}:{args.alpha}")
    elif fam == "su2half":
        if args.l is None:
            raise UsageError("--family su2half needs --l")
        reps = [su2half_admissible(args.l)]
        ring, extra = reps[0].ring, {}
    elif fam == "brute":
        ring = _ring(args)
        if args.max_dim is None:
            raise UsageError("--family brute needs --max-dim")
        reps = irreducible_nimreps(ring, args.max_dim, args.bound)
        extra = {}
    else:
        raise UsageError(f"unknown family {fam!r}")
    if args.report == "text":
        lines = [f"{len(reps)} NIM-reps, dims {[n.dim for n in reps]}"]
        for n in reps:
            lines.append(f"dim {n.dim} irreducible={is_irreducible(n)} basis={list(n.basis_names)}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, io.dumps(_collection(ring, reps, extra)))
    return 0


def cmd_verify(args) -> int:
    path = Path(args.file)
    doc = io.load_json(path)
    if "mats" in doc or "nimreps" in doc:
        reps = io.nimreps_from_json(doc, path.parent)
        _emit(args, f"OK: {len(reps)} NIM-rep(s), dims {[n.dim for n in reps]}\n")
    elif "coeffs" in doc:
        r = io.ring_from_json(doc)
        _emit(args, f"OK: fusion ring of rank {r.rank}\n")
    elif "table" in doc:
        g = io.group_from_json(doc)
        _emit(args, f"OK: group of order {g.order}\n")
    else:
        raise io.FormatError("unrecognised document")
    return 0


def _one(path: str):
    p = Path(path)
    reps = io.nimreps_from_json(io.load_json(p), p.parent)
    if len(reps) != 1:
        raise UsageError(f"{path} holds {len(reps)} NIM-reps; expected one")
    return reps[0]


def cmd_equiv(args) -> int:
    a, b = _one(args.a), _one(args.b)
    perm = are_equivalent(a, b)
    _emit(args, io.dumps({"schema": io.SCHEMA, "equivalent": perm is not None,
                          "perm": perm}))
    return 0


def cmd_graph(args) -> int:
    _emit(args, to_dot(_one(args.file), args.name))
    return 0


def cmd_algebras(args) -> int:
    if args.nimrep:
        path = Path(args.nimrep)
        out = []
        for n in io.nimreps_from_json(io.load_json(path), path.parent):
            bps = admissible_base_points(n)
            alg = algebra_object(n, bps[0]).as_dict() if bps else None
            out.append({"nimrep": io.nimrep_to_json(n), "base_points": bps, "algebra": alg})
        _emit(args, io.dumps({"schema": io.SCHEMA, "reports": out}))
        return 0
    if args.group and args.alpha is not None:
        rep = classify_admissible_neargroup(builtin_group(args.group), args.alpha)
        _emit(args, rep.text() + "\n" if args.report == "text" else io.dumps(rep.to_dict()))
        return 1 if rep.violations else 0
    raise UsageError("give --nimrep FILE or --group G --alpha a")


def cmd_modular(args) -> int:
    mds = catalog() if args.mtc == "all" else [get(args.mtc)]
    reports = [conjecture_report(md, modular_invariants(md, args.bound)) for md in mds]
    if args.report == "json":
        _emit(args, io.dumps({"schema": io.SCHEMA, "reports": [r.to_dict() for r in reports]}))
    else:
        _emit(args, "\n\n".join(r.text() for r in reports) + "\n")
    return 0


def cmd_oracle(args) -> int:
    ring = _ring(args)
    found = brute_force_nimreps(ring, args.dim, args.bound, args.node_cap)
    doc = _collection(ring, [f.nimrep for f in found])
    if args.report == "text":
        irr = sum(f.irreducible for f in found)
        _emit(args, f"{len(found)} NIM-reps of dim {args.dim} ({irr} irreducible)\n")
    else:
        _emit(args, io.dumps(doc))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nimreps", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, aliases=()):
        s = sub.add_parser(name, help=help_, aliases=list(aliases))
        s.set_defaults(fn=fn)
        s.add_argument("--out", help="write to this file instead of stdout")
        return s

    ring_help = ("ring spec (group:<G>, neargroup:<G>:<alpha>, su2:<l>, su2half:<l>, ising) "
                 "or ring JSON file")
    s = add("ring", cmd_ring, "print a fusion ring as JSON")
    s.add_argument("--family", help=ring_help)
    s.add_argument("--ring", help=ring_help)

    s = add("nimreps", cmd_nimreps, "classify NIM-reps of a ring family", aliases=["classify"])
    s.add_argument("--family", required=True, choices=["group", "neargroup", "su2half", "brute"])
    s.add_argument("--group", help="Z_n, Z_a x Z_b or D_n")
    s.add_argument("--alpha", type=int)
    s.add_argument("--l", type=int)
    s.add_argument("--ring", help=ring_help + " (brute only)")
    s.add_argument("--max-orbits", type=int, default=2)
    s.add_argument("--max-dim", type=int)
    s.add_argument("--bound", type=int, help="matrix entry bound")
    s.add_argument("--report", choices=["json", "text"], default="json")

    s = add("verify", cmd_verify, "validate a group, ring or NIM-rep JSON file")
    s.add_argument("file")

    s = add("equiv", cmd_equiv, "test two NIM-reps for equivalence")
    s.add_argument("a")
    s.add_argument("b")

    s = add("graph", cmd_graph, "NIM-graph as Graphviz DOT")
    s.add_argument("file")
    s.add_argument("--name", default="nimrep")

    s = add("algebras", cmd_algebras, "base points and algebra objects")
    s.add_argument("--nimrep", help="NIM-rep JSON file")
    s.add_argument("--group")
    s.add_argument("--alpha", type=int)
    s.add_argument("--report", choices=["json", "text"], default="json")

    s = add("modular", cmd_modular, "modular invariants and the exponent matching report")
    s.add_argument("--mtc", default="all",
                   help="all or one of: " + ", ".join(m.name for m in catalog()))
    s.add_argument("--bound", type=int, default=4)
    s.add_argument("--report", choices=["text", "json"], default="text")

    s = add("oracle", cmd_oracle, "exhaustive NIM-rep search at a fixed dimension")
    s.add_argument("--ring", required=True, help=ring_help)
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--bound", type=int)
    s.add_argument("--node-cap", type=int, default=10 ** 8)
    s.add_argument("--report", choices=["json", "text"], default="json")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, KeyError) as e:
        parser.error(str(e))
    except (GroupError, FusionError, NimRepError, io.FormatError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


run = main
