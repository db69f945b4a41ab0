"""Command-line front end: one operation per invocation, JSON or CSV out.

Exit codes: 0 success, 1 domain/precondition error (JSON on stderr),
2 malformed input or usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .classical import DiscreteLaw, MixtureSpec, classical_conv, mixture_moments, moments_discrete
from .cumulants import CumulantVector, c_transform, from_cumulants, power_sums
from .errors import MalformedInputError, TDeformError
from .generators import (LevyTriplet, SeriesSemigroup, eta_closed_form, evolve,
                         finite_free_generator_apply, forward_exact_residual, forward_residual,
                         generator_apply)
from .limits import clt_table, decimal_str, lln_table, rows_to_csv
from .series import Series, dilate, series_from_json, series_to_json, to_fraction
from .special import (HypergeometricSpec, binomial_series, hermite_semigroup, hermite_series,
                      hypergeometric_series, laguerre_series)
from .tconv import TParam, as_tparam, finite_free_conv, tconv

ORDER_ENV = "TDEFORM_ORDER"
DEFAULT_ORDER = 8

# flags whose values may legitimately start with "-"
_VALUE_FLAGS = {"--t", "--s", "--lam", "--h", "--dilate", "--order", "--d", "--ms"}


def _default_order() -> int:
    raw = os.environ.get(ORDER_ENV)
    if raw is None:
        return DEFAULT_ORDER
    try:
        return int(raw)
    except ValueError:
        raise MalformedInputError(f"{ORDER_ENV} must be an integer, got {raw!r}") from None


def _load(arg: str):
    """Inline JSON if it looks like JSON, '-' for stdin, otherwise a file path."""
    text = arg
    if arg == "-":
        text = sys.stdin.read()
    elif not arg.lstrip().startswith(("{", "[")):
        try:
            with open(arg) as fh:
                text = fh.read()
        except OSError as exc:
            raise MalformedInputError(f"cannot read {arg!r}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON in {arg!r}: {exc.msg}") from None


def _series_arg(arg: str, order: Optional[int] = None) -> Series:
    obj = _load(arg)
    if isinstance(obj, dict) and "atoms" in obj:
        return moments_discrete(DiscreteLaw.from_json(obj), order if order is not None else _default_order())
    a = series_from_json(obj)
    return a if order is None else a.with_order(order)


def _poly_arg(arg: str) -> list[Fraction]:
    obj = _load(arg)
    if isinstance(obj, dict):
        obj = obj.get("coeffs")
    if not isinstance(obj, list) or not obj:
        raise MalformedInputError("polynomial must be a coefficient list or {'coeffs': [...]}")
    return [to_fraction(c) for c in obj]


def _series_csv(a: Series) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "coeff", "decimal"])
    for k, c in enumerate(a.coeffs):
        w.writerow([k, str(c), decimal_str(c)])
    return buf.getvalue()


def _rationals_csv(name: str, xs: Sequence[Fraction], start: int = 1) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", name, "decimal"])
    for n, x in enumerate(xs, start=start):
        w.writerow([n, str(x), decimal_str(x)])
    return buf.getvalue()


def _emit(args, payload, csv_text: Optional[str] = None):
    if args.format == "csv":
        if csv_text is None:
            raise MalformedInputError(f"{args.command} has no CSV form")
        text = csv_text
    else:
        text = json.dumps(payload) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_series(args, a: Series):
    _emit(args, series_to_json(a), _series_csv(a))


def _order(args) -> int:
    return args.order if args.order is not None else _default_order()


def _semigroup(args) -> SeriesSemigroup:
    t = as_tparam(args.t)
    triplet = None
    if args.family == "levy":
        if args.triplet is None:
            raise MalformedInputError("--family levy needs --triplet")
        triplet = LevyTriplet.from_json(_load(args.triplet))
    return SeriesSemigroup(args.family, t, lam=to_fraction(args.lam), triplet=triplet)


# -- subcommands -----------------------------------------------------------

def cmd_conv(args):
    a, b = _series_arg(args.A, args.order), _series_arg(args.B, args.order)
    _emit_series(args, tconv(a, b, as_tparam(args.t)))


def cmd_dconv(args):
    a, b = _series_arg(args.A, args.order), _series_arg(args.B, args.order)
    _emit_series(args, tconv(a, b, TParam.finite(args.d)))


def cmd_cumulants(args):
    cv = c_transform(_series_arg(args.A, args.order), as_tparam(args.t))
    _emit(args, cv.to_json(), _rationals_csv("kappa", cv.kappas))


def cmd_from_cumulants(args):
    obj = _load(args.K)
    if isinstance(obj, dict):
        cv = CumulantVector.from_json(obj)
        if args.t is not None:
            cv = CumulantVector(cv.kappas, as_tparam(args.t))
    elif isinstance(obj, list):
        if args.t is None:
            raise MalformedInputError("a bare cumulant list needs --t")
        cv = CumulantVector(tuple(to_fraction(k) for k in obj), as_tparam(args.t))
    else:
        raise MalformedInputError("cumulants must be a CumulantVector object or a list")
    order = args.order if args.order is not None else len(cv.kappas)
    _emit_series(args, from_cumulants(cv, order))


def cmd_series(args):
    order = _order(args)
    fam = args.family
    if fam == "hypergeometric":
        if args.spec is None:
            raise MalformedInputError("--family hypergeometric needs --spec")
        obj = _load(args.spec)
        if args.t is not None and isinstance(obj, dict):
            obj = dict(obj, t=args.t)
        out = hypergeometric_series(HypergeometricSpec.from_json(obj), order)
    else:
        if args.t is None:
            raise MalformedInputError("--t is required")
        t = as_tparam(args.t)
        if fam == "binomial":
            out = binomial_series(to_fraction(args.lam), t, order)
        elif fam == "hermite":
            out = hermite_series(t, order)
        elif fam == "hermite-semigroup":
            out = hermite_semigroup(to_fraction(args.s), t, order)
        else:
            out = laguerre_series(to_fraction(args.lam), t, order)
    if args.dilate is not None:
        out = dilate(out, to_fraction(args.dilate))
    _emit_series(args, out)


def cmd_powersums(args):
    ps = power_sums(_series_arg(args.A, args.order))
    _emit(args, {"power_sums": [str(p) for p in ps]}, _rationals_csv("p", ps))


def _parse_ms(raw: str) -> list[int]:
    try:
        ms = [int(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise MalformedInputError(f"--ms must be comma-separated integers, got {raw!r}") from None
    if not ms:
        raise MalformedInputError("--ms is empty")
    return ms


def _table(args, fn):
    rows = fn(_series_arg(args.A, args.order), as_tparam(args.t), _parse_ms(args.ms))
    _emit(args, {"rows": [r.to_json() for r in rows]}, rows_to_csv(rows))


def cmd_lln(args):
    _table(args, lln_table)


def cmd_clt(args):
    _table(args, clt_table)


def cmd_classical_conv(args):
    a, b = _series_arg(args.A, args.order), _series_arg(args.B, args.order)
    _emit_series(args, classical_conv(a, b))


def cmd_mixture(args):
    spec = MixtureSpec.from_json(_load(args.SPEC))
    _emit_series(args, mixture_moments(spec, _order(args)))


def cmd_eta(args):
    _emit_series(args, eta_closed_form(_semigroup(args), _order(args)))


def cmd_apply_generator(args):
    sg = _semigroup(args)
    a = _series_arg(args.A, args.order)
    _emit_series(args, generator_apply(eta_closed_form(sg, a.order), a, sg.t))


def cmd_evolve(args):
    sg = _semigroup(args)
    a = _series_arg(args.A, args.order)
    _emit_series(args, evolve(a, eta_closed_form(sg, a.order), to_fraction(args.s), sg.t))


def cmd_forward_check(args):
    sg = _semigroup(args)
    a = _series_arg(args.A, args.order)
    s = to_fraction(args.s)
    eta = eta_closed_form(sg, a.order)
    exact = forward_exact_residual(a, eta, s, sg.t, member=sg.member(s, a.order))
    approx = forward_residual(a, eta, s, args.h, sg.t)
    _emit(args, {"exact_residual": str(exact), "float_residual": approx,
                 "s": str(s), "h": args.h})


def cmd_finfree_conv(args):
    out = finite_free_conv(_poly_arg(args.f), _poly_arg(args.g), args.d)
    _emit(args, {"d": len(out) - 1, "coeffs": [str(c) for c in out]},
          _rationals_csv("coeff", out, start=0))


def cmd_finfree_generator(args):
    f = _poly_arg(args.f)
    d = args.d if args.d is not None else len(f) - 1
    sg = SeriesSemigroup(args.family, TParam.finite(d), lam=to_fraction(args.lam))
    out = finite_free_generator_apply(f, sg, d)
    _emit(args, {"d": d, "coeffs": [str(c) for c in out]}, _rationals_csv("coeff", out, start=0))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tdeform", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, fn, help_, t=True, t_required=True):
        sp = sub.add_parser(name, help=help_)
        if t:
            sp.add_argument("--t", required=t_required,
                            help='deformation parameter: rational "p/q" or "d:N" for finite mode')
        sp.add_argument("--order", type=int, default=None,
                        help=f"truncation order (default ${ORDER_ENV} or {DEFAULT_ORDER})")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", default=None, help="write here instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    def family_opts(sp, families=("hermite", "laguerre", "binomial", "levy")):
        sp.add_argument("--family", choices=families, required=True)
        sp.add_argument("--lam", default="1", help="rate of the binomial family")
        sp.add_argument("--triplet", default=None, help="LevyTriplet JSON (file or inline)")

    sp = add("conv", cmd_conv, "t-deformed convolution of two series")
    sp.add_argument("A"); sp.add_argument("B")
    sp = add("dconv", cmd_dconv, "d-deformed convolution", t=False)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("A"); sp.add_argument("B")
    sp = add("cumulants", cmd_cumulants, "t-deformed cumulants of a series")
    sp.add_argument("A")
    sp = add("from-cumulants", cmd_from_cumulants, "series with given cumulants", t_required=False)
    sp.add_argument("K")
    sp = add("series", cmd_series, "named series families", t_required=False)
    sp.add_argument("--family", required=True,
                    choices=("binomial", "hermite", "hermite-semigroup", "laguerre", "hypergeometric"))
    sp.add_argument("--lam", default="1")
    sp.add_argument("--s", default="1")
    sp.add_argument("--spec", default=None, help="HypergeometricSpec JSON")
    sp.add_argument("--dilate", default=None, help="dilate the result by this rational")
    sp = add("powersums", cmd_powersums, "power sums p_1..p_N", t=False)
    sp.add_argument("A")
    for name, fn in (("lln", cmd_lln), ("clt", cmd_clt)):
        sp = add(name, fn, f"{name.upper()} convergence table")
        sp.add_argument("--ms", default="1,2,4,8,16,32")
        sp.add_argument("A")
    sp = add("classical-conv", cmd_classical_conv, "moments of X + Y", t=False)
    sp.add_argument("A"); sp.add_argument("B")
    sp = add("mixture", cmd_mixture, "beta/gamma product-law moments", t=False)
    sp.add_argument("SPEC")
    sp = add("eta", cmd_eta, "eta series of a semigroup family")
    family_opts(sp)
    sp = add("apply-generator", cmd_apply_generator, "apply a semigroup generator")
    family_opts(sp)
    sp.add_argument("A")
    sp = add("evolve", cmd_evolve, "evolve a series along a semigroup")
    family_opts(sp)
    sp.add_argument("--s", required=True)
    sp.add_argument("A")
    sp = add("forward-check", cmd_forward_check, "forward-equation residuals")
    family_opts(sp)
    sp.add_argument("--s", required=True)
    sp.add_argument("--h", type=float, default=1e-4)
    sp.add_argument("A")
    sp = add("finfree-conv", cmd_finfree_conv, "finite free convolution of polynomials", t=False)
    sp.add_argument("--d", type=int, default=None)
    sp.add_argument("f"); sp.add_argument("g")
    sp = add("finfree-generator", cmd_finfree_generator, "finite free generator on a polynomial", t=False)
    sp.add_argument("--d", type=int, default=None)
    sp.add_argument("--family", choices=("hermite", "laguerre", "binomial"), required=True)
    sp.add_argument("--lam", default="1")
    sp.add_argument("f")
    return p


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    # argparse would read "--t -1/2" as two options; glue such pairs into "--t=-1/2"
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif nxt.startswith("-") and nxt != "-":
                out.append(f"{tok}={nxt}")
            else:
                out.extend([tok, nxt])
        else:
            out.append(tok)
    return out


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        args.func(args)
    except MalformedInputError as exc:
        sys.stderr.write(json.dumps({"error": "MalformedInputError", "message": str(exc)}) + "\n")
        return 2
    except TDeformError as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
