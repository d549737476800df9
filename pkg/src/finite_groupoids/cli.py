"""Command-line front end.

Exit codes: 0 valid / success, 1 checked and found invalid, 2 malformed
input or a resource limit.  ``--report json`` prints one JSON document
whose ``text`` field holds exactly the lines text mode would print.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .actions import action_groupoid, orbits, self_action, validate_action
from .algebra import (build_abelian_extension, structure_theorem_check,
                      validate_algebra_groupoid)
from .cogroupoid import cobase, dualize_groupoid, hopf_check, validate_cogroupoid
from .constructions import (disjoint_union, group_groupoid, groups_up_to_order,
                            pair_groupoid, partial_bijection_groupoid, product_groupoid)
from .core import (GroupoidHom, base, check_hom, is_group_object, to_classical,
                   validate_category, validate_groupoid)
from .enumeration import DEFAULT_LIMIT, enumerate_groupoids, enumerate_labeled
from .reports import InvalidStructure, MalformedInput, ResourceLimit, ValidationReport

EXIT_OK, EXIT_INVALID, EXIT_ERROR = 0, 1, 2


class Outcome:
    """What a subcommand produced: text lines, JSON payload, exit code."""

    def __init__(self, code: int = EXIT_OK, lines=None, report: ValidationReport | None = None,
                 result=None):
        self.code = code
        self.lines = list(lines or [])
        self.report = report
        self.result = result

    @classmethod
    def from_report(cls, report: ValidationReport, lines=None, result=None) -> "Outcome":
        text = report.text_lines()
        if lines:
            text[0] = text[0] + ", " + lines[0]
            text += lines[1:]
        return cls(EXIT_OK if report.ok else EXIT_INVALID, text, report, result)


def _emit(path: str | None, obj: dict) -> list[str]:
    if path is None:
        return []
    formats.write_json(path, obj)
    return [f"wrote {path}"]


def _groupoid_line(g) -> str:
    return f"base size {len(base(g))}"


# -- subcommands ------------------------------------------------------------------

def cmd_check(args) -> Outcome:
    g = formats.load_groupoid(args.file)
    if args.category:
        rep = validate_category(g)
    else:
        rep = validate_groupoid(g)
    extra = [f"base size {len(rep.info['base'])}"] if rep.ok else []
    return Outcome.from_report(rep, extra)


def cmd_enumerate(args) -> Outcome:
    if args.labeled:
        structures = enumerate_labeled(args.n, limit=args.limit, jobs=args.jobs)
        lines = [f"n={args.n}: {len(structures)} labeled groupoids"]
        result = {"n": args.n, "count_labeled": len(structures)}
    else:
        s = enumerate_groupoids(args.n, limit=args.limit, jobs=args.jobs)
        structures = s.representatives
        lines = [f"n={args.n}: {s.count_up_to_iso} groupoids up to isomorphism "
                 f"({s.count_labeled} labeled)"]
        result = {"n": args.n, "count_up_to_iso": s.count_up_to_iso,
                  "count_labeled": s.count_labeled}
    if args.emit_dir:
        out = Path(args.emit_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(structures):
            formats.write_json(out / f"gpd_{args.n}_{i}.json", formats.groupoid_to_json(g))
        lines.append(f"wrote {len(structures)} files to {args.emit_dir}")
        result["files"] = len(structures)
    return Outcome(EXIT_OK, lines, result=result)


def cmd_construct(args) -> Outcome:
    kind = args.kind
    if kind in ("pair", "partial-bij"):
        if len(args.args) != 1:
            raise MalformedInput(f"construct {kind} takes one integer", field="args")
        try:
            k = int(args.args[0])
        except ValueError:
            raise MalformedInput(f"not an integer: {args.args[0]!r}", field="args") from None
        g = pair_groupoid(k) if kind == "pair" else partial_bijection_groupoid(k)
    elif kind == "group":
        if len(args.args) != 1:
            raise MalformedInput("construct group takes a group name or a Cayley-table file",
                                 field="args")
        named = groups_up_to_order(8)
        group_arg = args.args[0]
        if group_arg in named:
            table = named[group_arg]
        else:
            if not Path(group_arg).exists():
                raise MalformedInput(f"unknown group {group_arg!r}; known: {', '.join(named)}",
                                     field="args")
            table = formats.cayley_from_json(formats.read_json(group_arg))
        g = group_groupoid(table)
    else:
        if len(args.args) != 2:
            raise MalformedInput(f"construct {kind} takes two groupoid files", field="args")
        g1, g2 = (formats.load_groupoid(p) for p in args.args)
        g = disjoint_union(g1, g2) if kind == "union" else product_groupoid(g1, g2)
    obj = formats.groupoid_to_json(g)
    lines = [f"constructed {kind}: n={g.n}, {_groupoid_line(g)}"]
    if args.output:
        lines += _emit(args.output, obj)
        return Outcome(EXIT_OK, lines, result={"n": g.n})
    lines.append(formats.dumps(obj).rstrip("\n"))
    return Outcome(EXIT_OK, lines, result={"n": g.n, "groupoid": obj})


def cmd_base(args) -> Outcome:
    g = formats.load_groupoid(args.file)
    rep = validate_groupoid(g)
    if not rep.ok:
        return Outcome.from_report(rep)
    b = base(g)
    return Outcome(EXIT_OK, [f"base size {len(b)}: {b}"], rep,
                   result={"base": b, "group_object": bool(g.n) and is_group_object(g)})


def cmd_classical(args) -> Outcome:
    g = formats.load_groupoid(args.file)
    rep = validate_groupoid(g)
    if not rep.ok:
        return Outcome.from_report(rep)
    c = to_classical(g)
    res = {"base": list(c.base), "source": list(c.source), "target": list(c.target),
           "identity_section": list(c.identity_section), "inverse": list(c.inverse),
           "mu": [list(r) for r in c.mu]}
    lines = [f"classical presentation over {len(c.base)} objects",
             f"  objects (identity arrows): {list(c.base)}",
             f"  source: {list(c.source)}", f"  target: {list(c.target)}",
             f"  inverse: {list(c.inverse)}"]
    return Outcome(EXIT_OK, lines, rep, result=res)


def cmd_hom(args) -> Outcome:
    G = formats.load_groupoid(args.domain)
    H = formats.load_groupoid(args.codomain)
    raw = formats.read_json(args.map)
    if isinstance(raw, dict):
        raw = formats._require(raw, "map", list)
    mapping = formats._int_list(raw, "map")
    rep = check_hom(GroupoidHom(G, H, mapping))
    return Outcome.from_report(rep)


def cmd_dualize(args) -> Outcome:
    g = formats.load_groupoid(args.file)
    c = dualize_groupoid(g, args.field)
    rep = validate_cogroupoid(c)
    lines = [f"dim C = {c.C.dim}, dim C2 = {c.Csq.dim}, cobase dim = {cobase(c).shape[1]}",
             f"hopf: {'yes' if hopf_check(c) is not None else 'no'}"]
    out = Outcome.from_report(rep, lines, result={"dim_C": c.C.dim, "dim_Csq": c.Csq.dim})
    out.lines += _emit(args.output, formats.cogroupoid_to_json(c))
    return out


def cmd_cogroupoid(args) -> Outcome:
    c = formats.cogroupoid_from_json(formats.read_json(args.file))
    rep = validate_cogroupoid(c)
    if args.action == "check" or not rep.ok:
        extra = ([f"dim C = {c.C.dim}, dim C2 = {c.Csq.dim}, "
                  f"cobase dim = {rep.info['cobase_dim']}"] if rep.ok else [])
        return Outcome.from_report(rep, extra)
    h = hopf_check(c)
    if h is None:
        return Outcome(EXIT_INVALID, ["not a Hopf algebra: S is not unit times a counit"], rep,
                       result={"hopf": False})
    F = c.F
    res = {"hopf": True, "counit": formats._matrix_out(F, h.counit),
           "antipode": formats._matrix_out(F, h.antipode),
           "comult": formats._matrix_out(F, h.comult)}
    return Outcome(EXIT_OK, ["Hopf algebra", f"  counit: {res['counit']}",
                             f"  antipode: {res['antipode']}"], rep, result=res)


def cmd_algebra(args) -> Outcome:
    if args.action == "build-ext":
        if len(args.files) != 2:
            raise MalformedInput("build-ext takes an algebra file and a bimodule file",
                                 field="args")
        H = formats.algebra_from_json(formats.read_json(args.files[0]))
        N = formats.bimodule_from_json(formats.read_json(args.files[1]), H)
        a = build_abelian_extension(H, N)
        rep = validate_algebra_groupoid(a)
        out = Outcome.from_report(rep, [f"dim G = {a.G.dim}, dim G2 = {a.g2_basis.shape[1]}"],
                                  result={"dim_G": a.G.dim, "dim_G2": a.g2_basis.shape[1]})
        out.lines += _emit(args.output, formats.groupoid_object_to_json(a))
        return out
    if len(args.files) != 1:
        raise MalformedInput(f"algebra {args.action} takes one file", field="args")
    a = formats.groupoid_object_from_json(formats.read_json(args.files[0]))
    rep = validate_algebra_groupoid(a)
    if args.action == "check" or not rep.ok:
        return Outcome.from_report(rep)
    s = structure_theorem_check(a)
    lines = [f"structure: {'abelian extension' if s.ok else 'FAILED'} "
             f"(dim N = {s.kernel_dim}, dim H = {s.image_dim})"]
    lines += [f"  {name}: {'yes' if ok else 'no'}" for name, ok in s.items()]
    return Outcome(EXIT_OK if s.ok else EXIT_INVALID, lines, rep, result=s.to_json())


def cmd_action(args) -> Outcome:
    if args.action == "self":
        g = formats.load_groupoid(args.file)
        a = self_action(g)
    else:
        a = formats.action_from_json(formats.read_json(args.file))
    rep = validate_action(a)
    if args.action in ("check", "self") or not rep.ok:
        extra = [f"{len(orbits(a))} orbits on {a.m} points"] if rep.ok else []
        out = Outcome.from_report(rep, extra)
        if args.action == "self":
            out.lines += _emit(args.output, formats.action_to_json(a))
        return out
    ag = action_groupoid(a)
    out = Outcome.from_report(validate_groupoid(ag),
                              [f"action groupoid n={ag.n}, {_groupoid_line(ag)}"],
                              result={"n": ag.n})
    out.lines += _emit(args.output, formats.groupoid_to_json(ag))
    return out


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fgpd",
                                description="Finite groupoids, cogroupoids and actions.")
    p.add_argument("--report", choices=("text", "json"), default="text",
                   help="output format (default: text)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate a groupoid file")
    c.add_argument("file")
    c.add_argument("--category", action="store_true", help="check only the category axioms")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("enumerate", help="enumerate groupoids on n morphisms")
    e.add_argument("n", type=int)
    mode = e.add_mutually_exclusive_group()
    mode.add_argument("--labeled", action="store_true", help="all labeled structures")
    mode.add_argument("--up-to-iso", action="store_true", help="one per class (default)")
    e.add_argument("--emit-dir", help="write gpd_<n>_<index>.json files here")
    e.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="refuse larger n")
    e.add_argument("--jobs", type=int, default=1, help="worker processes")
    e.set_defaults(func=cmd_enumerate)

    k = sub.add_parser("construct", help="build a standard groupoid")
    k.add_argument("kind", choices=("pair", "group", "partial-bij", "union", "product"))
    k.add_argument("args", nargs="+",
                   help="k for pair/partial-bij; a name (Z3, S3, ...) or Cayley file for "
                        "group; two groupoid files for union/product")
    k.add_argument("-o", "--output")
    k.set_defaults(func=cmd_construct)

    for name, func, helptext in (("base", cmd_base, "print the identities"),
                                 ("classical", cmd_classical, "two-sorted presentation")):
        b = sub.add_parser(name, help=helptext)
        b.add_argument("file")
        b.set_defaults(func=func)

    h = sub.add_parser("hom", help="check a homomorphism")
    h.add_argument("domain")
    h.add_argument("codomain")
    h.add_argument("map", help='JSON list, or {"map": [...]}')
    h.set_defaults(func=cmd_hom)

    d = sub.add_parser("dualize", help="cogroupoid of functions on a groupoid")
    d.add_argument("file")
    d.add_argument("--field", default="Q", help="Q or Fp:<p> (default Q)")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_dualize)

    cg = sub.add_parser("cogroupoid", help="cogroupoid files")
    cg.add_argument("action", choices=("check", "hopf"))
    cg.add_argument("file")
    cg.set_defaults(func=cmd_cogroupoid)

    al = sub.add_parser("algebra", help="groupoid objects in algebras")
    al.add_argument("action", choices=("check", "build-ext", "structure"))
    al.add_argument("files", nargs="+",
                    help="groupoid-object file; for build-ext an algebra and a bimodule file")
    al.add_argument("-o", "--output")
    al.set_defaults(func=cmd_algebra)

    ac = sub.add_parser("action", help="groupoid actions")
    ac.add_argument("action", choices=("check", "self", "semidirect"))
    ac.add_argument("file", help="action file (groupoid file for 'self')")
    ac.add_argument("-o", "--output")
    ac.set_defaults(func=cmd_action)
    return p


def _error_outcome(exc: Exception) -> Outcome:
    if isinstance(exc, MalformedInput):
        where = f" (field {exc.field!r})" if exc.field else ""
        return Outcome(EXIT_ERROR, [f"malformed input{where}: {exc}"],
                       result={"error": "malformed", "field": exc.field})
    if isinstance(exc, ResourceLimit):
        return Outcome(EXIT_ERROR, [f"resource limit: {exc}"], result={"error": "resource"})
    rep = exc.report
    lines = [f"invalid input: {exc}"] + (["  " + v.describe() for v in rep.violations]
                                         if rep is not None else [])
    return Outcome(EXIT_INVALID, lines, rep, result={"error": "invalid", "axiom": exc.axiom})


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except (MalformedInput, ResourceLimit, InvalidStructure) as exc:
        out = _error_outcome(exc)
    if args.report == "json":
        doc = {"command": args.command, "exit_code": out.code,
               "status": {0: "ok", 1: "invalid", 2: "error"}[out.code],
               "text": out.lines,
               "report": out.report.to_json() if out.report is not None else None,
               "result": out.result}
        stdout.write(json.dumps(doc, ensure_ascii=False, indent=2, default=str) + "\n")
    else:
        for line in out.lines:
            stdout.write(line + "\n")
    return out.code


def main(argv: list[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
