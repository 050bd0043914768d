"""Command-line front end: ``iwk <subcommand> [flags]``.

Exit status 0 on success, 1 on a mathematical failure (the error class name is
printed), 2 on a usage or input-format error.
"""
import argparse
import json
import os
import sys
from fractions import Fraction

from iwk import formats, poly as P
from iwk.errors import IwkError
from iwk.hecke import OrdinaryFrobData, base_change_adams, frob_charpoly_at_p, sym_transfer
from iwk.iwasawa import DEFAULT_TRUNCATION, IwasawaSeries, weierstrass_prepare
from iwk.linv import build_consistent_jacobian, compare_check, greenberg_l, i_k_ideal, l_matrix
from iwk.modules import (
    DVR,
    PowerSeriesRing,
    char_ideal,
    congruence_ideal,
    fitting_ideal,
    kahler_fitting,
    monogenic,
)
from iwk.padic import DEFAULT_PRECISION, PadicContext
from iwk.sl2 import adjoint_twist_check, decomposition_check, m_coeff
from iwk.suite import BATTERY, report_lines, run_battery


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _q(x):
    return formats.fmt_rational(x)


def _rationals(text):
    try:
        return [Fraction(t) for t in text.replace(",", " ").split()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational list {text!r}") from exc


def _matrix(text):
    rows = [_rationals(r) for r in text.split(";") if r.strip()]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise UsageError(f"bad matrix {text!r}: use rows separated by ';'")
    return rows


def _poly(text):
    try:
        return P.parse_poly(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _ideal_fields(ideal):
    ring = ideal.ring
    if isinstance(ring, DVR):
        v = ring.ideal_data(ideal.generators)
        return {"valuation": "inf" if v is None else v}
    if isinstance(ring, PowerSeriesRing):
        return {"generators": [P.format_poly(list(g.c), "S") for g in ideal.generators]}
    return {"generators": [P.format_poly(list(g.c), "S") if hasattr(g, "c") else _q(g) for g in ideal.generators]}


# -- subcommand handlers: each returns (text lines, json object) ------------------

def cmd_mcoeff(a):
    ks = range(a.m + 1) if a.k is None else [a.k]
    is_ = range(a.m + 1) if a.i is None else [a.i]
    rows = [(a.m, k, i, m_coeff(a.m, k, i)) for k in ks for i in is_]
    return [" ".join(map(str, r)) for r in rows], {"rows": [dict(zip(("m", "k", "i", "value"), r)) for r in rows]}


def cmd_symtransfer(a):
    h = sym_transfer(Fraction(a.alpha), Fraction(a.beta), a.n, a.norm)
    poly = P.format_poly(h.coefficients())
    lines = [f"T_{i} {_q(t)}" for i, t in enumerate(h.t, start=1)] + [poly]
    return lines, {"n": h.n, "norm": h.norm, "T": [_q(t) for t in h.t], "polynomial": poly}


def cmd_adams(a):
    if (a.poly is None) == (a.poly_file is None):
        raise UsageError("give exactly one of --poly and --poly-file")
    coeffs = _poly(a.poly) if a.poly is not None else formats.load_polynomial(_read(a.poly_file))
    out = base_change_adams(coeffs, a.f)
    text = P.format_poly(out)
    return [text], {"f": a.f, "polynomial": text, "coefficients": [_q(c) for c in out]}


def cmd_frobpoly(a):
    data = OrdinaryFrobData.with_conventions(a.n, _rationals(a.u), [int(x) for x in _rationals(a.lambdas)],
                                             a.norm, Fraction(a.varpi))
    out = frob_charpoly_at_p(data)
    text = P.format_poly(out)
    return [text], {"n": a.n, "roots": [_q(r) for r in data.roots()], "polynomial": text}


def cmd_weierstrass(a):
    if (a.series_file is None) == (a.poly is None):
        raise UsageError("give exactly one of --series-file and --poly")
    if a.series_file:
        f = formats.load_series(_read(a.series_file))
    else:
        ctx = PadicContext(a.p, a.precision)
        try:
            f = IwasawaSeries(ctx, _poly(a.poly), a.truncation)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    fac = weierstrass_prepare(f)
    p_text = P.format_poly(list(fac.distinguished_poly), "S")
    lines = [f"mu {fac.mu}", f"lambda {fac.lam}", f"precision {fac.precision}", f"P {p_text}"]
    return lines, {"mu": fac.mu, "lambda": fac.lam, "precision": fac.precision, "P": p_text}


def cmd_fitting(a):
    pres = formats.load_presentation(_read(a.pres_file))
    ideal = fitting_ideal(pres, a.i)
    fields = {"ring": pres.ring.tag, "i": a.i, **_ideal_fields(ideal)}
    lines = [f"ring {fields['ring']}", f"i {a.i}"]
    if "valuation" in fields:
        lines.append(f"valuation {fields['valuation']}")
    else:
        lines += [f"generator {g}" for g in fields["generators"]]
    return lines, fields


def cmd_charideal(a):
    pres = formats.load_presentation(_read(a.pres_file))
    c = char_ideal(pres)
    p_text = P.format_poly(list(c.distinguished_poly), "S")
    fields = {"ring": c.ring_tag, "mu": c.mu, "lambda": c.lam, "P": p_text}
    return [f"{k} {v}" for k, v in fields.items()], fields


def cmd_congruence(a):
    r = monogenic(_poly(a.poly), a.p, root=Fraction(a.root))
    c = congruence_ideal(r)
    cv = c.ring.ideal_data(c.generators) if hasattr(c, "ring") else None
    kv = DVR(a.p).ideal_data(kahler_fitting(r).generators)
    fields = {
        "algebra": r.name,
        "congruence_valuation": "inf" if cv is None else cv,
        "kahler_valuation": "inf" if kv is None else kv,
        "tate_agrees": cv == kv,
    }
    return [f"{k} {v}" for k, v in fields.items()], fields


def cmd_linv(a):
    jac = formats.load_jacobian(_read(a.jacobian_file))
    mat, value = l_matrix(jac)
    fields = {"n": jac.n, "column_sums_zero": jac.is_constrained(), "L": _q(value)}
    lines = [f"n {jac.n}", f"column_sums_zero {fields['column_sums_zero']}", f"L {_q(value)}"]
    if a.direction is not None:
        y = _rationals(a.direction)
        gr = [_q(greenberg_l(j, jac, y)) for j in range(1, jac.n + 1)]
        fields["greenberg"] = gr
        lines += [f"L_Gr_{j} {v}" for j, v in enumerate(gr, start=1)]
    return lines, fields


def cmd_ikideal(a):
    lmat = _matrix(a.lmat)
    ideal = i_k_ideal(lmat, a.k, a.p)
    gens = [P.format_poly(list(g.c), "S") for g in ideal.from_minors.generators if g]
    fields = {"k": a.k, "p": a.p, "consistent": ideal.consistent(), "generators": gens}
    return [f"k {a.k}", f"p {a.p}", f"consistent {fields['consistent']}"] + [f"generator {g}" for g in gens], fields


def cmd_compare(a):
    if (a.d is None) == (a.dvector_file is None):
        raise UsageError("give exactly one of --d and --dvector-file")
    d = _rationals(a.d) if a.d is not None else formats.load_dvector(_read(a.dvector_file))
    if not d:
        raise UsageError("empty D-vector")
    rep = compare_check(d, len(d), directions=a.directions, seed=a.seed)
    fields = {
        "n": rep.n,
        "product": _q(rep.product),
        "L": _q(rep.l_value),
        "det_fprime": _q(rep.det_fprime),
        "direction_independent": rep.direction_independent,
        "ok": rep.ok,
    }
    if a.jacobian_out:
        with open(a.jacobian_out, "w", encoding="utf-8") as fh:
            fh.write(formats.dump_jacobian(build_consistent_jacobian(d)[0]))
    return [f"{k} {v}" for k, v in fields.items()], fields


def cmd_decomp(a):
    ok = decomposition_check(a.n, a.samples, a.seed)
    tw = adjoint_twist_check(a.n, min(a.samples, 20), a.seed)
    fields = {"n": a.n, "samples": a.samples, "seed": a.seed, "characters": ok, "adjoint_twist": tw}
    return [f"{k} {v}" for k, v in fields.items()], fields


def cmd_suite(a):
    only = None if a.only is None else set(a.only.split(","))
    if only is not None and not only <= {c for c, _ in BATTERY}:
        raise UsageError(f"unknown criteria in --only {a.only}")
    results = run_battery(a.seed, only)
    lines = report_lines(results)
    checks = [{"criterion": crit, "item": c.item, "status": "pass" if c.status else "fail", "witness": c.witness}
              for crit, cs in results for c in cs]
    return lines, {"seed": a.seed, "checks": checks, "summary": lines[-1]}


# -- parser -----------------------------------------------------------------------

def _env_precision():
    raw = os.environ.get("IWK_PRECISION")
    if raw is None:
        return DEFAULT_PRECISION
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"IWK_PRECISION must be an integer, got {raw!r}") from None
    return value


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--p", type=int, default=3, help="odd prime (default 3)")
    common.add_argument("--precision", type=int, default=None, help="p-adic precision N (default $IWK_PRECISION or 32)")
    common.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION, help="series truncation M")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable report")

    parser = _Parser(prog="iwk", description="Exact Iwasawa-theoretic and sl2 computations.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(handler=fn)
        return sp

    sp = add("mcoeff", cmd_mcoeff, "table of M_{m,k,i}")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--i", type=int)

    sp = add("symtransfer", cmd_symtransfer, "Hecke polynomial of a symmetric-power transfer")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--beta", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--norm", type=int, required=True)

    sp = add("adams", cmd_adams, "cyclic base change of a monic polynomial")
    sp.add_argument("--poly")
    sp.add_argument("--poly-file")
    sp.add_argument("--f", type=int, required=True)

    sp = add("frobpoly", cmd_frobpoly, "ordinary Frobenius characteristic polynomial")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--u", required=True, help="u_1..u_n (or u_1..u_(n-1); u_n = 1)")
    sp.add_argument("--lambdas", required=True, help="lambda_1..lambda_n (or n-1 values; lambda_n = 0)")
    sp.add_argument("--norm", type=int, required=True)
    sp.add_argument("--varpi", required=True)

    sp = add("weierstrass", cmd_weierstrass, "Weierstrass preparation of a series")
    sp.add_argument("--series-file")
    sp.add_argument("--poly", help="polynomial literal in S")

    sp = add("fitting", cmd_fitting, "Fitting ideal of a presentation file")
    sp.add_argument("--pres-file", required=True)
    sp.add_argument("--i", type=int, default=0)

    sp = add("charideal", cmd_charideal, "characteristic ideal of a presentation file")
    sp.add_argument("--pres-file", required=True)

    sp = add("congruence", cmd_congruence, "congruence ideal of B[X]/(f) at a root")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--root", required=True)

    sp = add("linv", cmd_linv, "L-invariant of a log-Jacobian file")
    sp.add_argument("--jacobian-file", required=True)
    sp.add_argument("--direction", help="direction y with sum zero for Greenberg invariants")

    sp = add("ikideal", cmd_ikideal, "the ideal I_k of an L-matrix")
    sp.add_argument("--lmat", required=True, help="rows separated by ';', entries by ','")
    sp.add_argument("--k", type=int, default=0)

    sp = add("compare", cmd_compare, "Greenberg product versus the L-matrix determinant")
    sp.add_argument("--d")
    sp.add_argument("--dvector-file")
    sp.add_argument("--directions", type=int, default=10)
    sp.add_argument("--jacobian-out")

    sp = add("decomp", cmd_decomp, "character identities for symmetric powers")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int, default=50)

    sp = add("suite", cmd_suite, "run the acceptance battery")
    sp.add_argument("--only", help="comma-separated criterion numbers")
    return parser


def run(argv, out=None):
    """Run one command; returns the exit status."""
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        if args.precision is None:
            args.precision = _env_precision()
        if args.precision < 1 or args.truncation < 1:
            raise UsageError("precision and truncation must be >= 1")
        lines, obj = args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except formats.FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return 2
    except IwkError as exc:
        if args.json:
            out.write(json.dumps({"command": args.command, "error": exc.name, "message": str(exc)}, sort_keys=True) + "\n")
        else:
            out.write(f"{exc.name}: {exc}\n")
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        out.write(json.dumps({"command": args.command, **obj}, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    if args.command == "suite" and obj["summary"] != "ALL PASS":
        return 1
    if args.command == "compare" and not obj["ok"]:
        return 1
    return 0


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))
