"""Command-line front end.

Exit status is 0 on success, 1 on a domain error (unbounded, empty, scale
guard, failed verification) and 2 on malformed input.  Errors are written to
stderr as a single JSON line.
"""
import argparse
import json
import os
import sys
from fractions import Fraction

from . import bounds as bd
from .covering import cover_polytope, partition_box
from .errors import DomainError, IrrPointsError
from .polytope import (DEFAULT_MAX_POINTS, Box, HPolytope, enumerate_lattice, integer_hull_vertices,
                       irreducible_points, irreducible_subset)
from .threshold import ThresholdFn, rationalize, sigma_witness, teaching_set
from .verify import SUITES, verify

COMMANDS = ("irr", "hull", "cover", "partition", "bounds", "teach", "sigma", "rationalize", "verify")


class InputError(ValueError):
    pass


def _num(v):
    return str(v) if isinstance(v, Fraction) and v.denominator != 1 else int(v) if isinstance(v, Fraction) else v


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return _num(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


# ---------------------------------------------------------------- input

def load_input(src: str | None):
    if src is None:
        raise InputError("--input is required for this command")
    text = src
    if not src.lstrip().startswith(("{", "[")):
        if not os.path.exists(src):
            raise InputError(f"no such input file: {src}")
        with open(src) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e.msg} at line {e.lineno} column {e.colno}") from None


def _int_matrix(M, what):
    if not isinstance(M, list) or not M or not all(isinstance(r, list) for r in M):
        raise InputError(f"{what} must be a nonempty list of lists")
    return [_int_vector(r, what) for r in M]


def _int_vector(v, what):
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise InputError(f"{what} must be a list of integers")
    return v


def parse_polyhedron(d):
    """``{"A", "lo", "hi"}`` gives a Box, ``{"A", "b", "rel"?}`` an HPolytope."""
    if not isinstance(d, dict) or "A" not in d:
        raise InputError("polyhedron input needs key A")
    A = _int_matrix(d["A"], "A")
    try:
        if "lo" in d or "hi" in d:
            return Box(A, _int_vector(d.get("lo"), "lo"), _int_vector(d.get("hi"), "hi"))
        if "b" not in d:
            raise InputError("polyhedron input needs b, or lo and hi")
        rel = d.get("rel")
        if rel is not None and (not isinstance(rel, list) or any(r not in ("le", "ge") for r in rel)):
            raise InputError('rel must be a list of "le" / "ge"')
        return HPolytope.from_relations(A, _int_vector(d["b"], "b"), rel)
    except InputError:
        raise
    except DomainError:
        raise
    except (ValueError, TypeError) as e:
        raise InputError(str(e)) from None


def _rational(v, what):
    if isinstance(v, bool):
        raise InputError(f"{what} must be a number")
    try:
        if isinstance(v, (int, str)):
            return Fraction(v)
        if isinstance(v, float):
            return Fraction(str(v))
    except (ValueError, ZeroDivisionError):
        pass
    raise InputError(f"{what} must be an integer, a decimal or a string like '1/3'")


def parse_threshold(d, integral=True):
    if not isinstance(d, dict) or not {"n", "k", "a0", "a"} <= set(d):
        raise InputError("threshold input needs keys n, k, a0, a")
    n, k = d["n"], d["k"]
    if not isinstance(n, int) or not isinstance(k, int) or not isinstance(d["a"], list):
        raise InputError("n and k must be integers and a a list")
    a0 = _rational(d["a0"], "a0")
    a = [_rational(v, "a") for v in d["a"]]
    if len(a) != n:
        raise InputError(f"a has {len(a)} entries, expected {n}")
    if not integral:
        return n, k, a0, a
    if a0.denominator != 1 or any(v.denominator != 1 for v in a):
        raise InputError("threshold coefficients must be integers (use rationalize for rationals)")
    try:
        return ThresholdFn(n, k, int(a0), tuple(int(v) for v in a))
    except DomainError:
        raise
    except ValueError as e:
        raise InputError(str(e)) from None


# ---------------------------------------------------------------- commands

def _points(P):
    return [list(p) for p in sorted(P)]


def cmd_irr(args):
    P = parse_polyhedron(load_input(args.input))
    pts = irreducible_points(P, args.max_points)
    return {"count": len(pts), "points": _points(pts)}, [list(p) for p in pts]


def cmd_hull(args):
    P = parse_polyhedron(load_input(args.input))
    V = integer_hull_vertices(P, args.max_points)
    return {"count": len(V), "vertices": _points(V)}, [list(p) for p in V]


def cmd_cover(args):
    P = parse_polyhedron(load_input(args.input))
    c = cover_polytope(P)
    pieces = [{"label": [lab[0], lab[1], list(lab[2])], "A": [list(r) for r in B.A],
               "lo": list(B.lo), "hi": list(B.hi)} for lab, B in zip(c.labels, c.pieces)]
    rows = [[lab[0], lab[1], " ".join(map(str, lab[2]))] + list(B.lo) + list(B.hi)
            for lab, B in zip(c.labels, c.pieces)]
    return {"count": len(pieces), "pieces": pieces}, rows


def cmd_partition(args):
    B = parse_polyhedron(load_input(args.input))
    if not isinstance(B, Box):
        raise InputError("partition needs a box input {A, lo, hi}")
    irr = irreducible_subset(enumerate_lattice(B, args.max_points))
    c = partition_box(B)
    pieces, rows = [], []
    for q in c.pieces:
        inside = [list(x) for x in irr if q.contains_lattice(x)]
        pieces.append({"index": list(q.index), "position": list(q.position),
                       "bounds": [list(b) for b in q.bounds], "irreducible": inside,
                       "irreducible_count": len(inside)})
        rows.append([" ".join(map(str, q.index)), len(inside)])
    return {"count": len(pieces), "counts": [p["irreducible_count"] for p in pieces],
            "pieces": pieces}, rows


def cmd_bounds(args):
    P = parse_polyhedron(load_input(args.input))
    actual = len(irreducible_points(P, args.max_points))
    reports = []
    if isinstance(P, Box):
        reports.append(bd.BoundReport("box", {"lo": list(P.lo), "hi": list(P.hi)},
                                      bd.box_bound(P.lo, P.hi), actual))
    inp = bd.BoundInputs.from_polytope(P, args.k)
    if inp.alpha >= 1 and inp.beta >= 1:
        reports.append(bd.BoundReport("polytope", inp, bd.polytope_bound(inp), actual))
    if args.k is not None:
        # restrict to the grid E_k^n: m' original rows plus 2n box rows
        H = P.to_hpolytope()
        eye = [tuple(int(i == j) for j in range(H.n)) for i in range(H.n)]
        G = HPolytope(H.A + tuple(eye) + tuple(tuple(-v for v in r) for r in eye),
                      H.b + (args.k - 1,) * H.n + (0,) * H.n)
        on_grid = len(irreducible_points(G, args.max_points))
        reports.append(bd.BoundReport("grid", {"n": H.n, "k": args.k, "m_prime": H.m},
                                      bd.grid_bound(H.n, args.k, H.m), on_grid))
    out = [r.to_json() for r in reports]
    rows = [[r["bound_name"], r["bound_value"], r["actual_count"], r["slack"]] for r in out]
    return {"reports": out}, rows


def cmd_teach(args):
    f = parse_threshold(load_input(args.input))
    T = teaching_set(f)
    rows = [[0] + list(p) for p in T.t0] + [[1] + list(p) for p in T.t1]
    return {"fn": f.to_json(), "count": len(T), **T.to_json()}, rows


def cmd_sigma(args):
    if args.n is None or args.k is None:
        raise InputError("sigma needs --n and --k")
    s, mask = sigma_witness(args.n, args.k)
    return {"n": args.n, "k": args.k, "sigma": s, "witness_mask": mask}, [[args.n, args.k, s]]


def cmd_rationalize(args):
    n, k, a0, a = parse_threshold(load_input(args.input), integral=False)
    if k < 2:
        raise InputError("k must be at least 2")
    b, b0 = rationalize(a, a0, n, k)
    return {"n": n, "k": k, "b": list(b), "b0": b0}, [list(b) + [b0]]


def cmd_verify(args):
    rep = verify(args.suite, args.trials, args.seed, args.k)
    rows = [[p.name, "pass" if p.passed else "FAIL", p.checked] for p in rep.properties]
    return rep.to_json(), rows


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


# ---------------------------------------------------------------- output

def _emit(command, payload, rows, fmt, out):
    if fmt == "json":
        out.write(json.dumps({"command": command, **_jsonable(payload)}, sort_keys=True) + "\n")
    elif fmt == "tsv":
        for r in rows:
            out.write("\t".join(str(_num(v)) for v in r) + "\n")
    else:
        summary = {k: v for k, v in payload.items() if isinstance(v, (int, str, bool)) and v is not None}
        out.write(f"{command}: " + ", ".join(f"{k}={v}" for k, v in sorted(summary.items())) + "\n")
        for r in rows:
            out.write("  " + " ".join(str(_num(v)) for v in r) + "\n")


def _error(kind, exc, code):
    rec = {"error": kind, "type": type(exc).__name__, "message": str(exc)}
    sys.stderr.write(json.dumps(rec, sort_keys=True) + "\n")
    return code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser():
    p = _Parser(prog="irrpoints",
                                description="Irreducible lattice points, covers, bounds and teaching sets")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON file path or inline JSON")
    common.add_argument("--format", choices=("json", "tsv", "human"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS, dest="max_points")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "verify":
            sp.add_argument("suite", choices=SUITES)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except InputError as e:
        return _error("malformed_input", e, 2)
    try:
        payload, rows = HANDLERS[args.command](args)
    except InputError as e:
        return _error("malformed_input", e, 2)
    except DomainError as e:
        return _error("domain", e, 1)
    except IrrPointsError as e:
        return _error("domain", e, 1)
    _emit(args.command, payload, rows, args.format, out)
    if args.command == "verify" and not payload["pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
