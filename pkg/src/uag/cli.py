"""``uag`` command-line interface.

Exit codes: 0 on a completed computation (boolean answers included), 2 usage
error, 3 input or parse error, 4 resource limit (verdict ``unknown``).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formulas as fm
from . import geometry as geo
from . import linear as lin
from . import symbolic as sym
from .config import Limits
from .congruence import congruent_closure_contains
from .errors import InputError, ResourceLimit
from .files import format_algebra, load_algebra, load_formulas, load_system, parse_points
from .finalg import approximates, diophantize, discriminates, find_embedding, iter_homs
from .normalize import Variety
from .report import Report
from .terms import Language, parse_equation, render


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ------------------------------------------------------------------ helpers

def _limits(args):
    return Limits(tuple_cap=args.tuple_cap, elem_cap=args.elem_cap)


def _algebra(args, attr="algebra"):
    value = getattr(args, attr, None)
    if value is None:
        raise UsageError(f"--{attr} is required")
    return load_algebra(value)


def _system(args, algebra=None):
    if args.system is None:
        raise UsageError("--system is required")
    return load_system(args.system, algebra.language if algebra is not None else None)


def _points(ys):
    return [list(ys.algebra.label(x) for x in p) for p in ys.points]


def _solution(args):
    a = _algebra(args)
    s = _system(args, a)
    variety = Variety.parse(args.variety) if getattr(args, "variety", None) else None
    return a, s, geo.solve(s, a, _limits(args), variety=variety, cross_check=variety is not None)


def _point_set(args):
    """Points from ``--points`` or, failing that, the solution set of ``--system``."""
    a = _algebra(args)
    if args.points is not None:
        pts = parse_points(args.points, a, args.dim)
        dim = args.dim if args.dim is not None else (len(pts[0]) if pts else None)
        if dim is None:
            raise UsageError("--dim is required for an empty point set")
        variables = tuple(f"x{i + 1}" for i in range(dim))
        return a, geo.SolutionSet(a, variables, pts)
    _, _, ys = _solution(args)
    return a, ys


def _group(text):
    return lin.FGAbelianGroup.parse(text)


def _matrix(text):
    try:
        rows = [[int(x) for x in r.replace(",", " ").split()] for r in text.split(";") if r.strip()]
    except ValueError:
        raise InputError(f"bad integer matrix {text!r}") from None
    if rows and len({len(r) for r in rows}) != 1:
        raise InputError("matrix rows differ in length")
    return rows


def _nat(text):
    try:
        n, m = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"expected 'n,m', got {text!r}") from None
    return sym.BicyclicElement(n, m)


# ---------------------------------------------------------------- commands

def cmd_solve(args):
    a, s, ys = _solution(args)
    return Report("solve", None, {"algebra": a.name, "variables": list(s.variables), "count": len(ys), "points": _points(ys)})


def cmd_radical(args):
    a, s, ys = _solution(args)
    eq = parse_equation(args.equation, s.language, s.variables)
    inside = geo.in_radical(eq, ys)
    return Report(
        "radical",
        inside,
        {"equation": str(eq), "in_radical": inside, "in_congruent_closure": congruent_closure_contains(s, eq)},
    )


def cmd_closure(args):
    a, ys = _point_set(args)
    cl = geo.closure(ys.points, a, ys.variables, _limits(args))
    return Report("closure", None, {"input": _points(ys), "count": len(cl), "closure": _points(cl)})


def cmd_algebraic(args):
    a, ys = _point_set(args)
    return Report("algebraic", geo.is_algebraic(ys.points, a, ys.variables, _limits(args)), {"count": len(ys)})


def cmd_coord(args):
    a, ys = _point_set(args)
    if not ys.points:
        raise InputError("the coordinate algebra of the empty set is trivial by definition; give a nonempty set")
    ca = geo.coordinate_algebra(ys, _limits(args))
    return Report(
        "coord",
        None,
        {
            "size": ca.size,
            "generators": [f"{v} -> {render(ca.witnesses[g])}" for v, g in zip(ys.variables, ca.generators)],
            "elements": [f"{i}: {render(t)}" for i, t in enumerate(ca.witnesses)],
        },
    )


def cmd_irreducible(args):
    a, ys = _point_set(args)
    ok, point = geo.is_irreducible(ys, _limits(args))
    witness = [a.label(x) for x in point] if ok else None
    return Report("irreducible", ok, {"count": len(ys), "witness_point": witness})


def cmd_components(args):
    a, ys = _point_set(args)
    comps = geo.irreducible_components(ys, _limits(args))
    return Report("components", None, {"count": len(comps), "components": [_points(c) for c in comps]})


def cmd_equiv(args):
    a = _algebra(args)
    s1 = _system(args, a)
    if args.other is None:
        raise UsageError("--other SYSTEM is required")
    s2 = load_system(args.other, a.language)
    return Report("equiv", geo.systems_equivalent(s1, s2, a, _limits(args)))


def cmd_homs(args):
    src, tgt = _algebra(args, "source"), _algebra(args, "target")
    maps = []
    count = 0
    for h in iter_homs(src, tgt, False, _limits(args)):
        count += 1
        if len(maps) < args.show:
            maps.append([tgt.label(x) for x in h.map])
    return Report("homs", None, {"count": count, "maps": maps})


def cmd_embed(args):
    src, tgt = _algebra(args, "source"), _algebra(args, "target")
    h = find_embedding(src, tgt, args.bijective, _limits(args))
    return Report("embed", h is not None, {"map": [tgt.label(x) for x in h.map] if h else None})


def cmd_approx(args):
    a, b = _algebra(args), _algebra(args, "other")
    return Report("approx", approximates(a, b, _limits(args)), {"approximating": a.name, "approximated": b.name})


def cmd_discr(args):
    a, b = _algebra(args), _algebra(args, "other")
    return Report("discr", discriminates(a, b, _limits(args)), {"discriminating": a.name, "discriminated": b.name})


def cmd_geomeq(args):
    a, b = _algebra(args), _algebra(args, "other")
    return Report("geomeq", geo.geometrically_equivalent(a, b, _limits(args)))


def cmd_domain(args):
    a = _algebra(args)
    return Report("domain", geo.is_equational_domain(a, _limits(args)), {"algebra": a.name})


def cmd_codomain(args):
    a = _algebra(args)
    rep = geo.co_domain_scan(a, args.n_max, _limits(args))
    if rep.found:
        verdict = False
    elif a.is_trivial:
        verdict = True
    else:
        verdict = "unknown"
    result = {"n_max": args.n_max, "dimension": rep.dimension, "source": rep.source}
    if rep.found:
        result["counterexample"] = _points(rep.counterexample)
        result["components"] = [_points(c) for c in rep.components]
    return Report("codomain", verdict, result)


def cmd_diophantize(args):
    a = _algebra(args)
    text = format_algebra(diophantize(a, args.prefix))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    return Report("diophantize", None, {"output": args.output or "-", "algebra": text.splitlines()})


def cmd_abelian(args):
    op = args.abelian_op
    if op == "snf":
        U, D, V = lin.smith_normal_form(_matrix(args.matrix))
        return Report("abelian snf", None, {"U": U, "D": D, "V": V})
    if op in ("radical", "rank", "prefix"):
        rows = _matrix(args.matrix)
        n = args.n if args.n is not None else (len(rows[0]) if rows else None)
        if n is None:
            raise UsageError("--n is required for an empty matrix")
        if op == "radical":
            return Report("abelian radical", None, {"basis": lin.radical_lattice(rows, n)})
        if op == "rank":
            return Report("abelian rank", None, {"rank": lin.coordinate_group_rank(rows, n)})
        g = _group(args.group or "Z")
        return Report("abelian prefix", None, {"group": str(g), "prefix": lin.minimal_equivalent_prefix(rows, g, n)})
    a = _group(args.group) if args.group else None
    if a is None:
        raise UsageError("--group is required")
    if op == "suboplus":
        return Report("abelian suboplus", None, {"group": str(a), "subgroups": sorted(str(s) for s in lin.sub_oplus(a))})
    if args.other is None:
        raise UsageError("--other is required")
    b = _group(args.other)
    table = {
        "coord": lin.is_coordinate_abelian,
        "irrcoord": lin.is_irreducible_coordinate_abelian,
        "coordc": lin.is_coordinate_abelian_with_constants,
        "irrcoordc": lin.is_irreducible_coordinate_abelian_with_constants,
    }
    if op == "geomeq":
        return Report("abelian geomeq", lin.geom_equiv_abelian(a, b), {"A": str(a), "B": str(b)})
    return Report(f"abelian {op}", table[op](b, a), {"A": str(a), "B": str(b)})


def cmd_nat(args):
    s = load_system(args.system, lin.NAT_LANGUAGE)
    pts = lin.solve_over_N(s, _limits(args))
    return Report("nat solve", None, {"variables": list(s.variables), "count": len(pts), "points": [list(p) for p in pts]})


def cmd_unar(args):
    s = load_system(args.system, Language((("f", 1),)))
    res = sym.solve_free_unar(sym.UnarSystem.from_system(s))
    if isinstance(res, sym.Inconsistent):
        return Report("unar solve", False, {"consistent": False, "witness": res.witness})
    bindings = [f"{x} = {sym._fpow(k, r)}" for x, k, r in res.bindings if x != r]
    return Report("unar solve", True, {"consistent": True, "bindings": bindings, "roots": list(res.roots), "rank": res.rank})


def cmd_bicyclic(args):
    if args.bicyclic_op == "mul":
        u, v = _nat(args.left), _nat(args.right)
        w = u * v
        return Report("bicyclic mul", None, {"left": str(u), "right": str(v), "product": str(w), "pair": [w.n, w.m]})
    if args.n < 1:
        raise InputError("n must be at least 1")
    w = sym.bicyclic_noetherian_witness(args.n)
    return Report(
        "bicyclic witness",
        w.holds_up_to_n and w.fails_at_next,
        {"n": w.n, "z": str(w.z), "values": [str(v) for v in w.values], "final": str(w.final)},
    )


def cmd_formula(args):
    op = args.formula_op
    if op == "check":
        a = _algebra(args)
        if args.formula is None:
            raise UsageError("--formula is required")
        checks = []
        verdict = True
        for f in load_formulas(args.formula, a.language):
            r = fm.holds_in(f, a, _limits(args))
            verdict = verdict and r.holds
            ce = None if r.holds else [a.label(x) for x in r.counterexample]
            checks.append([str(f), r.holds, ce])
        return Report("formula check", verdict, {"checks": checks})
    g = _group(args.group)
    if op == "sigma":
        fs = fm.sigma_A(g, args.p_max, args.n_max)
        return Report(
            "formula sigma", None, {"group": str(g), "formulas": [str(f) for f in fs], "notes": fm.sigma_window_notes(g, args.p_max, args.n_max)}
        )
    return Report("formula phi", fm.phi_nk_holds(g, args.p, args.k, args.n), {"count": fm.count_order(g, args.p, args.k)})


# ------------------------------------------------------------------ parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tuple-cap", type=int, default=2_000_000)
    common.add_argument("--elem-cap", type=int, default=100_000)
    common.add_argument("--machine", action="store_true", help="key=value output")
    common.add_argument("--algebra", help="algebra file or builtin:KIND:PARAMS")
    common.add_argument("--system", help="system file")

    p = _Parser(prog="uag", description="Algebraic geometry over finite and symbolic algebras")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_text, **kw):
        q = sub.add_parser(name, parents=[common], help=help_text, **kw)
        q.set_defaults(fn=fn)
        return q

    add("solve", cmd_solve, "solution set of a system").add_argument("--variety")
    q = add("radical", cmd_radical, "is an equation in the radical")
    q.add_argument("--equation", required=True)
    for name, fn, text in (
        ("closure", cmd_closure, "least algebraic set containing points"),
        ("algebraic", cmd_algebraic, "is a point set algebraic"),
        ("coord", cmd_coord, "coordinate algebra"),
        ("irreducible", cmd_irreducible, "irreducibility test"),
        ("components", cmd_components, "irreducible components"),
    ):
        q = add(name, fn, text)
        q.add_argument("--points", help="'a0,a1; a1,a1' (overrides --system)")
        q.add_argument("--dim", type=int)
    add("equiv", cmd_equiv, "are two systems equivalent").add_argument("--other")
    for name, fn, text in (("homs", cmd_homs, "enumerate homomorphisms"), ("embed", cmd_embed, "find an embedding")):
        q = add(name, fn, text)
        q.add_argument("--source", required=True)
        q.add_argument("--target", required=True)
        if name == "homs":
            q.add_argument("--show", type=int, default=20)
        else:
            q.add_argument("--bijective", action="store_true")
    for name, fn, text in (
        ("approx", cmd_approx, "does --algebra approximate --other"),
        ("discr", cmd_discr, "does --algebra discriminate --other"),
        ("geomeq", cmd_geomeq, "geometric equivalence"),
    ):
        add(name, fn, text).add_argument("--other", required=True)
    add("domain", cmd_domain, "equational domain test")
    add("codomain", cmd_codomain, "search for a reducible algebraic set").add_argument("--n-max", type=int, default=3)
    q = add("diophantize", cmd_diophantize, "add a constant per element")
    q.add_argument("--output")
    q.add_argument("--prefix", default="c")

    q = add("abelian", cmd_abelian, "finitely generated abelian groups")
    q.add_argument("abelian_op", choices=["snf", "radical", "rank", "prefix", "suboplus", "coord", "irrcoord", "coordc", "irrcoordc", "geomeq"])
    q.add_argument("--matrix", help="rows separated by ';'")
    q.add_argument("--n", type=int)
    q.add_argument("--group", help="e.g. 'Z^2 + Z_8'")
    q.add_argument("--other")

    q = add("nat", cmd_nat, "bounded linear systems over N")
    q.add_argument("nat_op", choices=["solve"])
    q = add("unar", cmd_unar, "systems over free unars")
    q.add_argument("unar_op", choices=["solve"])
    q = add("bicyclic", cmd_bicyclic, "bicyclic monoid")
    q.add_argument("bicyclic_op", choices=["mul", "witness"])
    q.add_argument("--left")
    q.add_argument("--right")
    q.add_argument("--n", type=int, default=3)
    q = add("formula", cmd_formula, "universal formulas")
    q.add_argument("formula_op", choices=["check", "sigma", "phi"])
    q.add_argument("--formula")
    q.add_argument("--group", default="Z")
    q.add_argument("--p-max", type=int, default=5)
    q.add_argument("--n-max", type=int, default=3)
    q.add_argument("--p", type=int, default=2)
    q.add_argument("--k", type=int, default=1)
    q.add_argument("--n", type=int, default=1)
    return p


def run(argv, out=None, err=None):
    """Execute one command; returns ``(exit_code, report_or_None)``."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        err.write(f"uag: usage error: {exc}\n")
        return 2, None
    except SystemExit as exc:  # --help
        return int(exc.code or 0), None
    machine = args.machine
    try:
        report = args.fn(args)
        code = 0
    except UsageError as exc:
        err.write(f"uag: usage error: {exc}\n")
        return 2, None
    except ResourceLimit as exc:
        report = Report(args.command, "unknown", {"reason": str(exc)})
        code = 4
    except (InputError, ValueError) as exc:
        err.write(f"uag: input error: {exc}\n")
        return 3, None
    report.usage = {"tuple_cap": args.tuple_cap, "elem_cap": args.elem_cap}
    out.write(report.to_machine() if machine else report.to_text())
    return code, report


def main(argv=None):
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
