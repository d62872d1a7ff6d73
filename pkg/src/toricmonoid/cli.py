"""toricmonoid command line.

Input is one JSON document {"rays": [[...], ...], "lattice_rank": n} read
from a file or stdin.  Every command prints a report; JSON output is
canonical (sorted keys) so identical runs give identical bytes.

Exit codes: 0 success, 1 invalid input, 2 a verification check failed.
"""
from __future__ import annotations

import argparse
import json
import sys

import sympy

from . import __version__
from .bialg import MonoidStructure, comultiply, format_tensor, generator_table, symbolic_table, verify_structure
from .classify import classify_surface
from .coxlift import DEFAULT_SEED, cox_data, family_ebar, format_cox_product, lift, unit_point, verify_lift
from .toric import build_variety, enumerate_roots, make_root, root_family

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class InputError(ValueError):
    pass


def load_input(path: str | None) -> dict:
    try:
        if path in (None, "-"):
            data = json.load(sys.stdin)
        else:
            with open(path) as fh:
                data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read input: {exc}") from exc
    if not isinstance(data, dict) or "rays" not in data:
        raise InputError('input must be a JSON object with a "rays" list')
    rays = data["rays"]
    if not isinstance(rays, list) or not all(
            isinstance(p, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in p) for p in rays):
        raise InputError("rays must be a list of integer vectors")
    rank = data.get("lattice_rank")
    if rank is not None and (not isinstance(rank, int) or isinstance(rank, bool) or rank < 0):
        raise InputError("lattice_rank must be a nonnegative integer")
    if len({len(p) for p in rays}) > 1:
        raise InputError("rays have different lengths")
    if rays and rank is not None and len(rays[0]) != rank:
        raise InputError(f"rays have length {len(rays[0])} but lattice_rank is {rank}")
    return {"rays": rays, "lattice_rank": rank if rank is not None else (len(rays[0]) if rays else None)}


def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _params(items) -> dict:
    out = {}
    for item in items or []:
        name, _, value = item.partition("=")
        try:
            out[name.strip()] = int(value)
        except ValueError as exc:
            raise InputError(f"--param expects NAME=INT, got {item!r}") from exc
    return out


def _vec(v):
    return list(v)


# --- structure selection ------------------------------------------------------

def _structure(X, args):
    """(MonoidStructure at concrete parameter values, family or None).

    The family is returned when --symbolic names parameters of --root.
    """
    kind = args.structure or ("corank1" if args.root else "toric")
    if kind == "toric":
        return MonoidStructure.toric(X), None
    if kind == "additive":
        return MonoidStructure.additive(X), None
    if kind != "corank1":
        raise InputError(f"unknown structure {kind!r}")
    if not args.root:
        raise InputError("corank1 structures need --root")
    exprs = [x.strip() for x in args.root.split(",")]
    symbolic = [s for s in (args.symbolic or "").split(",") if s]
    values = _params(args.param)
    try:
        parsed = [sympy.sympify(x) for x in exprs]
    except sympy.SympifyError as exc:
        raise InputError(f"cannot parse root {args.root!r}") from exc
    names = sorted({s.name for p in parsed for s in p.free_symbols})
    missing = [n for n in names if n not in symbolic and n not in values]
    if missing:
        raise InputError(f"root parameters {missing} need --symbolic or --param values")
    concrete = [str(p.subs({sympy.Symbol(k): v for k, v in values.items()})) for p in parsed]
    if len(exprs) != X.lattice_rank:
        raise InputError(f"root needs {X.lattice_rank} coordinates")
    if not any(n in symbolic for n in names):
        root = make_root(X, _ints(",".join(concrete)), args.ray)
        return MonoidStructure.corank1(X, root), None
    i = args.ray
    if i is None:
        raise InputError("--ray is required with --symbolic")
    fam = root_family(X, i, concrete)
    return MonoidStructure.corank1(X, fam.at(*fam.anchor)), fam


def _structure_echo(s, fam):
    out = {"kind": s.kind}
    if s.root is not None:
        out["ray_index"] = s.root.ray_index
        out["root"] = [str(x) for x in fam.expr()] if fam else _vec(s.root.e)
    if fam is not None:
        out["parameters"] = {n: lo for n, lo in zip(fam.params, fam.lower)}
    return out


# --- commands -----------------------------------------------------------------

def cmd_analyze(X, args):
    cd = cox_data(X)
    names = X.generator_names
    gens = X.hilbert + X.torus_generators
    results = {
        "lattice_rank": X.lattice_rank,
        "rays": [_vec(p) for p in X.rays],
        "torus_rank": X.torus_rank,
        "dual_cone": [_vec(g) for g in X.dual.generators],
        "generators": [{"name": n, "exponent": _vec(u), "bar": _vec(cd.bar_of(u))}
                       for n, u in zip(names, gens)],
        "relations": [r.format(names) for r in X.relations(args.bound)],
        "relation_degree_bound": args.bound,
        "class_group": str(cd.class_group),
        "degrees": [_vec(d) for d in cd.degree_map],
        "is_affine_space": X.is_affine_space,
    }
    return results, {}


def cmd_roots(X, args):
    if not X.m:
        return {"roots": [], "note": "no rays, so no Demazure roots"}, {}
    indices = [args.ray] if args.ray is not None else list(range(1, X.m + 1))
    roots = []
    for i in indices:
        roots += [{"ray_index": r.ray_index, "e": _vec(r.e)} for r in enumerate_roots(X, i, args.bound)]
    return {"roots": roots, "height_bound": args.bound}, {}


def cmd_comul(X, args):
    s, fam = _structure(X, args)
    results = {"structure": _structure_echo(s, fam)}
    if fam is not None:
        results["table"] = [{"generator": g, "formula": f} for g, f in symbolic_table(X, fam)]
        return results, {}
    if args.u is not None:
        u = _ints(args.u)
        t = comultiply(s, u)
        results["u"] = _vec(u)
        results["terms"] = [{"coefficient": c, "left": _vec(a), "right": _vec(b)} for (a, b), c in t.sorted_terms()]
        results["formula"] = format_tensor(X, t)
    else:
        results["table"] = [{"generator": g, "formula": f} for g, f in generator_table(s)]
    return results, {}


def cmd_cox(X, args):
    s, fam = _structure(X, args)
    cd = cox_data(X)
    L = lift(s)
    results = {
        "structure": _structure_echo(s, fam),
        "class_group": str(cd.class_group),
        "degrees": [_vec(d) for d in cd.degree_map],
        "bar": [_vec(row) for row in cd.bar],
        "product": format_cox_product(L, family_ebar(X, fam) if fam else None),
        "unit_point": _vec(unit_point(L)),
    }
    if L.ebar is not None:
        results["lifted_root"] = [str(x) for x in family_ebar(X, fam)] if fam else _vec(L.ebar)
    return results, {}


def cmd_verify(X, args):
    s, fam = _structure(X, args)
    checks = dict(verify_structure(s))
    checks.update(verify_lift(lift(s), args.samples, args.seed))
    return {"structure": _structure_echo(s, fam), "samples": args.samples}, checks


def cmd_classify(X, args):
    if X.lattice_rank != 2:
        raise InputError("classify handles surfaces (lattice rank 2) only")
    report = classify_surface(X.rays, args.count)
    return report.to_dict(), {}


COMMANDS = {
    "analyze": cmd_analyze,
    "roots": cmd_roots,
    "comul": cmd_comul,
    "cox": cmd_cox,
    "verify": cmd_verify,
    "classify": cmd_classify,
}


def build_report(command: str, data: dict, args) -> dict:
    X = build_variety(data["rays"], data["lattice_rank"])
    results, checks = COMMANDS[command](X, args)
    return {
        "command": command,
        "input": data,
        "results": results,
        "verification": {"checks": checks, "passed": all(checks.values())},
        "seed": args.seed,
        "version": __version__,
    }


# --- text rendering -----------------------------------------------------------

def render_text(report: dict) -> str:
    lines = [f"{report['command']}: rays {report['input']['rays']}"]
    _render(report["results"], lines, "")
    checks = report["verification"]["checks"]
    if checks:
        lines.append("checks:")
        for name in sorted(checks):
            lines.append(f"  {name}: {'pass' if checks[name] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def _render(value, lines, indent):
    for key in sorted(value):
        v = value[key]
        if isinstance(v, dict) and v:
            lines.append(f"{indent}{key}:")
            _render(v, lines, indent + "  ")
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{indent}{key}:")
            for item in v:
                lines.append(f"{indent}  - " + ", ".join(f"{k}={_short(item[k])}" for k in sorted(item)))
        else:
            lines.append(f"{indent}{key}: {_short(v)}")


def _short(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


# --- entry point --------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Usage errors are invalid input, so they exit 1 rather than argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toricmonoid", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", help="JSON file with rays (default: stdin)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--ray", type=int, help="1-based ray index")
        if name == "analyze":
            p.add_argument("--bound", type=int, default=2, help="degree bound for relations")
        if name == "roots":
            p.add_argument("--bound", type=int, default=3, help="coordinate height bound")
        if name in ("comul", "cox", "verify"):
            p.add_argument("--structure", choices=("toric", "corank1", "additive"))
            p.add_argument("--root", help="comma-separated root coordinates, e.g. --root=l,-1")
            p.add_argument("--symbolic", help="comma-separated parameters kept symbolic")
            p.add_argument("--param", action="append", help="NAME=INT value for a root parameter")
        if name == "comul":
            p.add_argument("--u", help="comma-separated exponent; default: all generators")
        if name == "verify":
            p.add_argument("--samples", type=int, default=20)
        if name == "classify":
            p.add_argument("--count", type=int, default=3, help="members listed per root series")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        data = load_input(args.input)
        if getattr(args, "samples", 1) < 1:
            raise InputError("--samples must be positive")
        report = build_report(args.command, data, args)
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(render_text(report))
    return EXIT_OK if report["verification"]["passed"] else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
