"""Command-line interface: ``qdisc <command> [options]``.

Exit status is 0 on success, 1 when a verification fails and 2 for parse or
usage errors.  ``--json`` switches every command to one JSON object on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import calculus, covalg, fock, hopf, roots, suites, verma
from .algebras import ALGEBRAS, context, find_mu
from .ncpoly import NCPoly
from .parsing import ParseError, parse_and_evaluate, render_poly
from .scalar import QScalar

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- evaluation helpers --------------------------------------------------------


def _context(args, *texts):
    mu = getattr(args, "mu", None)
    if args.algebra == "dolbeault" and mu is None:
        for t in texts:
            mu = find_mu(t)
            if mu is not None:
                break
    return context(args.algebra, mu)


def _eval(text, ctx):
    return parse_and_evaluate(text, ctx)


def _as_poly(value) -> NCPoly:
    if isinstance(value, QScalar):
        return NCPoly.scalar(value)
    if isinstance(value, NCPoly):
        return value
    raise UsageError("expected an algebra element, got a module vector")


def _render(value, ctx) -> str:
    if isinstance(value, QScalar):
        return value.render()
    if isinstance(value, NCPoly):
        return render_poly(value, ctx.system)
    return value.render()


def _pol(text) -> covalg.PolElement:
    return covalg.PolElement.from_ncpoly(_as_poly(_eval(text, context("pol"))))


def _uq(text) -> NCPoly:
    ctx = context("uqsl2")
    return _as_poly(_eval(text, ctx))


def _result(args, ctx_name, value_text, key="normal_form"):
    return {"input": args.input if hasattr(args, "input") else None, "algebra": ctx_name, key: value_text}


# -- commands ----------------------------------------------------------------------


def cmd_nf(args):
    ctx = _context(args, args.input)
    out = _render(_eval(args.input, ctx), ctx)
    return EXIT_OK, out, _result(args, ctx.name, out)


def cmd_mul(args):
    if args.algebra == "pol":
        x, y = _pol(args.left), _pol(args.right)
        prod = covalg.pol_product(x, y) if args.route == "rmatrix" else covalg.pol_product_rewrite(x, y)
        out = prod.render()
        name = "pol"
    else:
        ctx = _context(args, args.left, args.right)
        x, y = _eval(args.left, ctx), _eval(args.right, ctx)
        out = _render(ctx.system.normal_form(_as_poly(x) * _as_poly(y)), ctx)
        name = ctx.name
    return EXIT_OK, out, {"input": [args.left, args.right], "algebra": name, "normal_form": out}


def cmd_act(args):
    xi = _uq(args.xi)
    if args.algebra == "uqsl2":
        ctx = context("uqsl2")
        v = _eval(args.target, ctx)
        if not isinstance(v, verma.VermaVector):
            raise UsageError("the target of an uqsl2 action must be a module vector such as 'E.v+'")
        out = verma.act(xi, v).render()
        name = "uqsl2"
    elif args.algebra == "pol":
        out = covalg.pol_action(xi, _pol(args.target)).render()
        name = "pol"
    elif args.algebra == "forms":
        ctx = context("forms")
        out = _render(calculus.act_forms(xi, _as_poly(_eval(args.target, ctx))), ctx)
        name = "forms"
    else:
        ctx = _context(args, args.target)
        mu = int(ctx.name.split("[")[1].rstrip("]"))
        x = calculus.DolbeaultElement(mu, _as_poly(_eval(args.target, ctx)))
        out = calculus.uq_action_dolbeault(xi, x).render()
        name = ctx.name
    return EXIT_OK, out, {"input": [args.xi, args.target], "algebra": name, "normal_form": out}


def _functional(text) -> tuple[str | None, covalg.PolElement]:
    x = _pol(text)
    sides = {covalg.HOLO if j == 0 and i > 0 else covalg.ANTI if i == 0 and j > 0 else None
             for i, j in x.coeffs}
    if any(i and j for i, j in x.coeffs):
        raise UsageError("a functional must be a polynomial in a+ alone or in a- alone")
    sides.discard(None)
    if len(sides) > 1:
        raise UsageError("a functional must be a polynomial in a+ alone or in a- alone")
    side = sides.pop() if sides else None
    return side, x


def cmd_pair(args):
    side, x = _functional(args.functional)
    v = _eval(args.vector, context("uqsl2"))
    if not isinstance(v, verma.VermaVector):
        raise UsageError("the second argument must be a module vector such as 'E^2.v+'")
    if v.module.m != 0:
        raise UsageError("pairings are defined on V+(0) and V-(0)")
    want = covalg.ANTI if v.module.sign == "+" else covalg.HOLO
    if side not in (None, want):
        raise UsageError(f"{'a-' if want == covalg.ANTI else 'a+'} functionals pair with {v.module}")
    f = covalg.from_powers(want, {max(i, j): c for (i, j), c in x.coeffs.items()})
    out = covalg.pair(f, v).render()
    return EXIT_OK, out, {"input": [args.functional, args.vector], "algebra": "pol", "value": out}


def cmd_involute(args):
    if args.algebra == "pol":
        out = covalg.pol_involution(_pol(args.input)).render()
    elif args.algebra == "uqsl2":
        ctx = context("uqsl2")
        out = render_poly(hopf.star(_uq(args.input)), ctx.system)
    else:
        raise UsageError("involute supports --algebra pol or uqsl2")
    return EXIT_OK, out, _result(args, args.algebra, out)


def cmd_diff(args):
    if args.algebra == "forms":
        ctx = context("forms")
        x = _as_poly(_eval(args.input, ctx))
        out = _render(calculus.DERIVATIONS[args.op](x), ctx)
        name = "forms"
    elif args.algebra == "dolbeault":
        if args.op != "dbar":
            raise UsageError("the Dolbeault module only carries dbar")
        ctx = _context(args, args.input)
        mu = int(ctx.name.split("[")[1].rstrip("]"))
        out = calculus.dbar_mu(calculus.DolbeaultElement(mu, _as_poly(_eval(args.input, ctx)))).render()
        name = ctx.name
    else:
        raise UsageError("diff supports --algebra forms or dolbeault")
    return EXIT_OK, out, _result(args, name, out)


def _cartan(args) -> roots.CartanData:
    try:
        return roots.CartanData.of_type(args.type, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_roots(args):
    c = _cartan(args)
    if args.cominuscule:
        value = sorted(roots.cominuscule_nodes(c))
    elif args.highest:
        value = list(roots.highest_root(c))
    elif args.cartan:
        value = [list(r) for r in c.matrix]
    else:
        value = [list(r) for r in roots.positive_roots(c).positive_roots]
    out = json.dumps(value)
    return EXIT_OK, out, {"input": f"{args.type.upper()}{args.rank}", "algebra": "roots", "value": value}


def cmd_weyl(args):
    c = _cartan(args)
    if args.node is None:
        w = roots.longest_element(c)
        value = {"w0": list(w.letters), "l_w0": w.length}
    else:
        try:
            value = roots.parabolic_factorization(c, args.node).to_dict()
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    out = json.dumps(value)
    return EXIT_OK, out, {"input": f"{args.type.upper()}{args.rank}", "algebra": "weyl", "value": value}


def cmd_fock(args):
    try:
        rep = fock.build(args.dim, args.q0)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    value = {"q0": args.q0, "dim": args.dim, "relation_residual": fock.relation_residual(rep)}
    if args.expr is not None:
        x = _pol(args.expr)
        value["norm"] = fock.sup_norm_estimate(x, args.dim, args.q0)
    if args.w is not None:
        try:
            w = complex(args.w.replace(" ", ""))
        except ValueError:
            raise UsageError(f"cannot read {args.w!r} as a complex number") from None
        value["sigma_min"] = fock.smallest_singular_value(rep, w)
    out = "\n".join(f"{k}: {v}" for k, v in value.items())
    return EXIT_OK, out, {"input": args.expr, "algebra": "fock", "value": value}


def cmd_verify(args):
    try:
        degree = suites.degree_bound(args.degree)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.criterion:
        bad = [n for n in args.criterion if not 1 <= n <= len(suites.CRITERIA)]
        if bad:
            raise UsageError(f"no acceptance criterion {bad[0]}")
        if args.suite not in (None, "acceptance"):
            raise UsageError("--criterion selects acceptance criteria; use it with --suite acceptance")
        report = suites.acceptance(set(args.criterion))
    else:
        name = args.suite or "all"
        if args.parallel and name == "all":
            from .report import Report

            report = Report(f"all suites (degree {degree})")
            for sub in suites.run_parallel(list(suites.SUITES), degree):
                report.merge(sub)
            report.merge(suites.acceptance())
        else:
            report = suites.run_suite(name, degree)
    code = EXIT_OK if report.passed else EXIT_FAIL
    return code, str(report), {"input": args.suite, "algebra": None, "report": report.to_dict()}


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qdisc", description="Quantum disc computations over Q(q^1/2).")
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit one JSON object")
        s.set_defaults(func=fn)
        return s

    def algebra(s, choices=ALGEBRAS, default="uqsl2"):
        s.add_argument("--algebra", choices=choices, default=default)
        s.add_argument("--mu", type=int, default=None, help="weight of the Dolbeault module")

    s = add("nf", cmd_nf, "normal form of an expression")
    algebra(s)
    s.add_argument("input")

    s = add("mul", cmd_mul, "product of two elements")
    algebra(s, default="pol")
    s.add_argument("--route", choices=("rmatrix", "rewrite"), default="rmatrix")
    s.add_argument("left")
    s.add_argument("right")

    s = add("act", cmd_act, "U_q(sl2) action on a module, Pol, forms or M_mu")
    algebra(s)
    s.add_argument("xi")
    s.add_argument("target")

    s = add("pair", cmd_pair, "pair a polynomial in a+ or a- with a Verma vector")
    s.add_argument("functional")
    s.add_argument("vector")

    s = add("involute", cmd_involute, "apply the involution")
    s.add_argument("--algebra", choices=("pol", "uqsl2"), default="pol")
    s.add_argument("input")

    s = add("diff", cmd_diff, "apply d, partial or dbar")
    algebra(s, choices=("forms", "dolbeault"), default="forms")
    s.add_argument("--op", choices=tuple(calculus.DERIVATIONS), default="d")
    s.add_argument("input")

    for name, fn, text in (("roots", cmd_roots, "root data of a simple type"),
                           ("weyl", cmd_weyl, "longest element and parabolic factorization")):
        s = add(name, fn, text)
        s.add_argument("--type", required=True)
        s.add_argument("--rank", type=int, required=True)
        if name == "roots":
            g = s.add_mutually_exclusive_group()
            g.add_argument("--cominuscule", action="store_true")
            g.add_argument("--highest", action="store_true")
            g.add_argument("--cartan", action="store_true")
        else:
            s.add_argument("--node", type=int, default=None, help="1-based node j0")

    s = add("fock", cmd_fock, "truncated Fock representation at numeric q0")
    s.add_argument("--q0", type=float, default=0.5)
    s.add_argument("--dim", type=int, default=256)
    s.add_argument("--expr", default=None, help="Pol element whose operator norm is reported")
    s.add_argument("--w", default=None, help="complex w for sigma_min(T(z) - w)")

    s = add("verify", cmd_verify, "run a verification suite")
    s.add_argument("--suite", choices=suites.suite_names(), default=None)
    s.add_argument("--degree", type=int, default=None)
    s.add_argument("--criterion", type=int, action="append", default=None)
    s.add_argument("--parallel", action="store_true")
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    as_json = "--json" in argv
    try:
        args = parser.parse_args(argv)
        code, text, payload = args.func(args)
    except (UsageError, ParseError, ValueError, KeyError) as exc:
        kind = "parse error" if isinstance(exc, ParseError) else "error"
        msg = exc.args[0] if isinstance(exc, (UsageError, KeyError)) and exc.args else str(exc)
        if as_json:
            print(json.dumps({"error": kind, "message": str(msg)}))
        else:
            print(f"qdisc: {kind}: {msg}", file=sys.stderr)
        return EXIT_USAGE
    if as_json:
        print(json.dumps(payload))
    else:
        print(text)
        if code == EXIT_FAIL:
            witness = [c.to_dict() for c in _failures(payload)]
            print(json.dumps({"failures": witness}), file=sys.stderr)
    return code


def _failures(payload):
    from .report import Check

    report = payload.get("report") or {}
    return [Check(c["name"], c["passed"], c["cases"], c.get("witness"))
            for c in report.get("checks", []) if not c["passed"]]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
