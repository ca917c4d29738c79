"""Command-line front end: ``borcherds-lab <subcommand> ...``.

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import _kernels, coeff_io
from .arith import chi
from .classical import (
    IDENTITIES,
    J_function,
    delta,
    eisenstein_level1,
    j_function,
    partitions_upto,
    verify_identity,
)
from .coeff_io import CoeffFileError, format_rational
from .green import GreenParams, TailToleranceError, green_phi, vol_T, vol_YK
from .heights import faltings_height, intersection_series, self_intersection, zetaK_neg1
from .hilbert import BorcherdsError, borcherds_expand
from .lvalues import LValueDisagreement, zeta_logderiv_neg1, zetaK_logderiv_neg1
from .plus_space import (
    PlusForm,
    PlusSpaceError,
    builtin_f1,
    forms_from_tables,
    obstruction_check,
    plus_eisenstein,
)
from .quadfield import ChamberSpec, InvDiffElem, QuadElem, gundlach_chamber, gundlach_rho
from .series import QSeries

SCHEMA = 1


class UsageError(ValueError):
    pass


def _emit_json(obj, out) -> None:
    out.write(json.dumps({"schema": SCHEMA, **obj}, indent=2) + "\n")


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(",")
        return int(a), int(b)
    except ValueError:
        raise UsageError(f"expected 'u,v', got {text!r}") from None


def _positive(kind):
    def conv(text):
        x = kind(text)
        if not x > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return x

    return conv


# -- subcommands ---------------------------------------------------------------

def cmd_qexp(args, out) -> int:
    P = args.precision
    name = args.form
    if name == "delta":
        form, weight = delta(P).expansion, 12
    elif name == "j":
        form, weight = j_function(P).expansion, 0
    elif name == "J":
        form, weight = J_function(P).expansion, 0
    elif name == "partitions":
        form, weight = QSeries(partitions_upto(P - 1), 0, P), None
    elif name.startswith("E") and name[1:].isdigit():
        k = int(name[1:])
        form, weight = eisenstein_level1(k, P).expansion, k
    else:
        raise UsageError(f"unknown form {name!r}; use E<k>, delta, j, J or partitions")
    meta = {"n_min": form.valuation, "n_max": form.precision - 1}
    if weight is not None:
        meta["weight"] = weight
    coeff_io.write_table(out, form.to_dict(), meta)
    return 0


def cmd_verify_identity(args, out) -> int:
    orders = args.order if len(args.order) > 1 else args.order[0]
    rep = verify_identity(args.identity, orders)
    _emit_json(rep.to_json(), out)
    return 0 if rep.passed else 1


def cmd_eisenstein(args, out) -> int:
    E = plus_eisenstein(args.D, args.k, args.n_max)
    coeff_io.write_table(out, E.coeffs(), {"D": args.D, "weight": args.k, "n_min": 0, "n_max": args.n_max})
    return 0


def cmd_obstruction(args, out) -> int:
    table = coeff_io.load_path(args.principal)
    pp = {n: c for n, c in table.coeffs.items() if n < 0}
    basis = forms_from_tables([coeff_io.load_path(p) for p in args.cusp_basis], args.D, 2)
    res = obstruction_check(args.D, pp, basis)
    report = {"D": args.D, "principal_part": {str(n): format_rational(c) for n, c in sorted(pp.items())}}
    report.update(res.to_json())
    if res.witness is not None:
        report["witness_file"] = args.cusp_basis[res.witness]
    _emit_json(report, out)
    return 0 if res.admissible else 1


def _weight0_form(args) -> PlusForm:
    if args.f is None:
        if args.D != 5:
            raise UsageError("--f is required unless D = 5 (built-in f1)")
        return builtin_f1()
    t = coeff_io.load_path(args.f)
    lo, hi = t.index_range()
    return PlusForm(args.D, 0, t.coeffs, lo, hi)


def cmd_borcherds_lift(args, out) -> int:
    f = _weight0_form(args)
    if args.chamber is not None:
        chamber = ChamberSpec(args.D, QuadElem(args.D, *_parse_pair(args.chamber)))
    elif args.D == 5:
        chamber = gundlach_chamber()
    else:
        raise UsageError("--chamber is required unless D = 5")
    if args.rho is not None:
        rho = InvDiffElem(args.D, *_parse_pair(args.rho))
    elif args.D == 5 and args.chamber is None:
        rho = gundlach_rho()
    else:
        raise UsageError("--rho is required with a custom chamber or D != 5")
    E = borcherds_expand(f, chamber, rho, args.trace_bound)
    header = {
        "schema": SCHEMA,
        "D": E.D,
        "weight": format_rational(E.weight),
        "rho": [rho.u, rho.v],
        "trace_bound": E.trace_bound,
        "gcd": E.content() if E.is_integral() else None,
    }
    out.write(json.dumps(header) + "\n")
    for (u, v), c in E.sorted_items():
        out.write(f"{u} {v} {format_rational(c)}\n")
    return 0


def cmd_green_eval(args, out) -> int:
    z1, z2 = _parse_complex(args.z1), _parse_complex(args.z2)
    params = GreenParams(args.D, args.m, args.s, bound=args.bound, eps=args.eps, max_points=args.max_points)
    inputs = {"D": args.D, "m": args.m, "s": args.s, "z1": args.z1, "z2": args.z2, "eps": args.eps}
    try:
        res = green_phi(params, z1, z2, backend=args.backend)
    except TailToleranceError as exc:
        _emit_json({"inputs": inputs, "error": str(exc), "tail_estimate": exc.tail,
                    "cutoff": exc.cutoff, "n_points": exc.n_points}, out)
        return 2
    _emit_json({"inputs": inputs, "backend": _kernels.BACKEND if args.backend is None else args.backend,
                **res.to_json()}, out)
    return 0


def cmd_volumes(args, out) -> int:
    E = plus_eisenstein(args.D, 2, args.m_max)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "C(m,0)", "vol_T"])
    for m in range(1, args.m_max + 1):
        w.writerow([m, format_rational(E[m]), format_rational(vol_T(args.D, m))])
    out.write(buf.getvalue())
    return 0


def _bracket_errors(D: int) -> tuple[float, float]:
    a, b = zetaK_logderiv_neg1(D), zeta_logderiv_neg1()
    return a.abs_error_estimate + b.abs_error_estimate, a.agreement + b.agreement


def cmd_heights(args, out) -> int:
    k = args.k
    z = zeta_logderiv_neg1()
    heights = {}
    err = agree = 0.0
    for m in range(1, args.m_max + 1):
        if chi(args.D, m) == -1:
            continue
        try:
            h = faltings_height(args.D, m, k)
        except ZeroDivisionError:
            heights[str(m)] = None
            continue
        heights[str(m)] = h
        scale = 2 * float(k * k * vol_T(args.D, m))
        err = max(err, scale * z.abs_error_estimate)
        agree = max(agree, scale * z.agreement)
    series = intersection_series(args.D, k, args.m_max)
    e_b, a_b = _bracket_errors(args.D)
    f = abs(float(k * k * zetaK_neg1(args.D) / 2))
    for c in plus_eisenstein(args.D, 2, args.m_max).coeffs().values():
        err = max(err, f * abs(float(c)) * e_b)
        agree = max(agree, f * abs(float(c)) * a_b)
    _emit_json({
        "inputs": {"D": args.D, "k": format_rational(k), "m_max": args.m_max},
        "value": {
            "faltings_height": heights,
            "intersection_series": {str(m): v for m, v in series.entries.items()},
            "constant_term": series.constant_term,
        },
        "error_estimate": err,
        "method_agreement": agree,
    }, out)
    return 0


def cmd_self_intersection(args, out) -> int:
    k = args.k
    val = self_intersection(args.D, k)
    e_b, a_b = _bracket_errors(args.D)
    f = abs(float(k ** 3 * zetaK_neg1(args.D)))
    _emit_json({
        "inputs": {"D": args.D, "k": format_rational(k)},
        "value": val,
        "error_estimate": f * e_b,
        "method_agreement": f * a_b,
        "vol_YK": format_rational(vol_YK(args.D)),
    }, out)
    return 0


def cmd_verify_all(args, out) -> int:
    from .acceptance import run_all, run_criterion

    results = [run_criterion(n) for n in args.criterion] if args.criterion else run_all()
    if args.format == "json":
        _emit_json({"criteria": [r.to_json() for r in results], "pass": all(r.passed for r in results)}, out)
    else:
        for r in results:
            out.write(r.line() + "\n")
            for name, ok, detail in r.checks:
                out.write(f"    {'ok ' if ok else 'BAD'} {name}{': ' + detail if detail else ''}\n")
    return 0 if all(r.passed for r in results) else 1


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="borcherds-lab", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=_positive(int), default=None, help="worker threads for the float kernels")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("qexp", help="q-expansion of a level-one form")
    s.add_argument("form", help="E<k>, delta, j, J or partitions")
    s.add_argument("--precision", type=_positive(int), default=20, help="compute to O(q^precision)")
    s.set_defaults(func=cmd_qexp)

    s = sub.add_parser("verify-identity", help="exact check of a product identity")
    s.add_argument("identity", choices=IDENTITIES)
    s.add_argument("--order", type=_positive(int), nargs="+", required=True,
                   help="O(q^order), or two orders M N for the double product")
    s.set_defaults(func=cmd_verify_identity)

    s = sub.add_parser("eisenstein", help="plus-space Eisenstein coefficients C(n, 0)")
    s.add_argument("--D", type=int, required=True)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--n-max", type=int, default=50)
    s.set_defaults(func=cmd_eisenstein)

    s = sub.add_parser("obstruction", help="Borcherds obstruction test for a principal part")
    s.add_argument("--D", type=int, required=True)
    s.add_argument("--principal", required=True, help="coefficient file; negative indices are used")
    s.add_argument("--cusp-basis", nargs="*", default=[], help="weight-2 plus-space cusp forms")
    s.set_defaults(func=cmd_obstruction)

    s = sub.add_parser("borcherds-lift", help="truncated Borcherds product expansion")
    s.add_argument("--D", type=int, required=True)
    s.add_argument("--trace-bound", type=int, required=True)
    s.add_argument("--f", default=None, help="weight-0 input form (defaults to f1 for D=5)")
    s.add_argument("--rho", default=None, help="Weyl vector u,v for (v + u/sqrt D)/2")
    s.add_argument("--chamber", default=None, help="chamber element u,v for (u + v sqrt D)/2")
    s.set_defaults(func=cmd_borcherds_lift)

    s = sub.add_parser("green-eval", help="automorphic Green function Phi_m(z1, z2, s)")
    s.add_argument("--D", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--s", type=float, required=True)
    s.add_argument("--z1", required=True)
    s.add_argument("--z2", required=True)
    s.add_argument("--eps", type=_positive(float), default=None, help="required tail estimate")
    s.add_argument("--bound", type=float, default=200.0, help="starting cutoff on the summand argument")
    s.add_argument("--max-points", type=_positive(int), default=400_000)
    s.add_argument("--backend", choices=("numba", "numpy"), default=None)
    s.set_defaults(func=cmd_green_eval)

    s = sub.add_parser("volumes", help="CSV of m, C(m,0), vol(T(m))")
    s.add_argument("--D", type=int, required=True)
    s.add_argument("--m-max", type=_positive(int), required=True)
    s.set_defaults(func=cmd_volumes)

    s = sub.add_parser("heights", help="Faltings heights and the intersection series")
    s.add_argument("--D", type=int, required=True)
    s.add_argument("--k", type=_positive(Fraction), default=Fraction(1))
    s.add_argument("--m-max", type=_positive(int), required=True)
    s.set_defaults(func=cmd_heights)

    s = sub.add_parser("self-intersection", help="arithmetic self-intersection of the Hodge bundle")
    s.add_argument("--D", type=int, required=True)
    s.add_argument("--k", type=_positive(Fraction), default=Fraction(1))
    s.set_defaults(func=cmd_self_intersection)

    s = sub.add_parser("verify-all", help="run the acceptance criteria")
    s.add_argument("--criterion", type=int, nargs="*", default=None)
    s.add_argument("--format", choices=("plain", "json"), default="plain")
    s.set_defaults(func=cmd_verify_all)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        _kernels.set_threads(args.threads)
    try:
        return args.func(args, out)
    except (UsageError, CoeffFileError, PlusSpaceError, BorcherdsError, LValueDisagreement,
            ValueError, KeyError, ZeroDivisionError) as exc:
        print(f"borcherds-lab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
