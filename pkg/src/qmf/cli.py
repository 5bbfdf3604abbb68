"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .errors import QMFError
from .forms import WEIGHTS, FormName, get_form
from .linalg import SolveStatus
from .ode import build_Fk, family_by_name, frobenius_solve, ode_residual, TWO_A
from .polys import pq_polys
from .rings import RingTag, decompose, enumerate_basis
from .series import QSeries
from .verify import SCHEMA_VERSION, VerificationReport, identity_checks, theorem_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MIN_TERMS = 8
# plain expansions may be short; anything that certifies needs MIN_TERMS
CHECKING_COMMANDS = {"verify", "identities", "decompose"}


class UsageError(Exception):
    pass


def default_terms() -> int:
    raw = os.environ.get("QMF_DEFAULT_TERMS")
    if raw is None:
        return 150
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"QMF_DEFAULT_TERMS must be an integer, got {raw!r}") from None


def rat(x: Fraction) -> str:
    return str(Fraction(x))


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def series_payload(s: QSeries) -> dict:
    return {"ord": s.ord, "prec": s.prec, "coefficients": [rat(c) for c in s.coeffs]}


def series_text(s: QSeries) -> str:
    return "\n".join(f"{e}: {c}" for e, c in s.items())


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        payload = {"schema_version": SCHEMA_VERSION, "command": args.command, **payload}
        print(dump_json(payload))
    else:
        print(text)


# -- subcommands -----------------------------------------------------------


def cmd_expand(args) -> int:
    s = get_form(args.form, args.terms)
    _emit(args, {"form": args.form, **series_payload(s)}, series_text(s))
    return EXIT_OK


def cmd_fk(args) -> int:
    fk = build_Fk(args.k, args.terms)
    res = ode_residual(fk, args.k, TWO_A)
    ok = res.is_zero_to(res.prec)
    payload = {"k": args.k, "weight": args.k + 1, "residual_zero": ok.equal,
               "certified_prec": ok.upto, **series_payload(fk)}
    text = series_text(fk) + f"\n# residual of the k={args.k} equation vanishes below q^{ok.upto}: {ok.equal}"
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


def _ks(args) -> list[int]:
    lo, hi = args.k_min, args.k_max
    if lo < 3 or lo % 4 != 3 or hi % 4 != 3 or hi < lo:
        raise UsageError("--k-min/--k-max must satisfy 3 <= k-min <= k-max, both = 3 mod 4")
    return list(range(lo, hi + 1, 4))


def _render_report(args, report: VerificationReport) -> None:
    lines = []
    for c in report.checks:
        tag = "PASS" if c.passed else "FAIL"
        kk = "" if c.k is None else f" k={c.k}"
        extra = "" if c.passed else f" first failing exponent {c.first_failure}"
        lines.append(f"{tag} {c.name}{kk} (certified below q^{c.certified_prec}){extra}")
    lines.append(f"{'ALL PASS' if report.passed else 'FAILURES'}: {len(report.checks)} checks")
    if args.format == "json":
        print(dump_json(report.to_dict()))
    else:
        print("\n".join(lines))


def cmd_verify(args) -> int:
    ks = _ks(args)
    report = VerificationReport("verify", args.terms)
    jobs = max(1, min(args.jobs, len(ks)))
    if jobs == 1:
        results = [theorem_checks(k, args.terms) for k in ks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(theorem_checks, ks, [args.terms] * len(ks)))
    # pool.map keeps submission order, i.e. sorted by k
    for recs in results:
        report.checks.extend(recs)
    _render_report(args, report)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_identities(args) -> int:
    report = VerificationReport("identities", args.terms)
    report.checks.extend(identity_checks(args.terms))
    _render_report(args, report)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_poly(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    p, q = pq_polys(args.n)
    poly = p if args.family == "P" else q
    _emit(args, {"family": args.family, "n": args.n, "coefficients": [rat(c) for c in poly.coeffs]}, str(poly))
    return EXIT_OK


def cmd_frobenius(args) -> int:
    fam = family_by_name(args.family)
    rho = "auto" if args.rho.lower() == "auto" else Fraction(args.rho)
    rep = frobenius_solve(fam, Fraction(args.k), rho, args.terms)
    payload = {
        "family": fam.label,
        "k": rat(rep.k),
        "rho": rat(rep.rho),
        "status": rep.status.value,
        "resonance_events": [[m, rat(v)] for m, v in rep.resonance_events],
        "series": None if rep.series is None else series_payload(rep.series),
    }
    lines = [f"family {fam.label}, k = {rep.k}, rho = {rep.rho}", f"status {rep.status.value}"]
    for m, v in rep.resonance_events:
        lines.append(f"resonance at m = {m}: obstruction {v}")
    if rep.series is not None:
        lines.append(f"solution = q^({rep.rho}) * (series below)")
        lines.append(series_text(rep.series))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_decompose(args) -> int:
    if (args.form is None) == (args.k is None):
        raise UsageError("decompose needs exactly one of --form or --k")
    if args.k is not None:
        target = build_Fk(args.k, args.terms)
        label, weight = f"F_{args.k}", args.k + 1
    else:
        target = get_form(args.form, args.terms)
        label, weight = args.form, WEIGHTS[FormName(args.form)]
    if args.weight is not None:
        weight = args.weight
    basis = enumerate_basis(args.ring, weight)
    rep = decompose(target, basis)
    payload = {
        "target": label,
        "ring": rep.basis.ring_tag.value,
        "weight": weight,
        "status": rep.status.value,
        "certified_prec": rep.certified_prec,
        "terms": {k: rat(v) for k, v in rep.terms().items()},
    }
    lines = [f"{label} in {rep.basis.ring_tag.value} weight {weight}: {rep.status.value}"
             f" (certified below q^{rep.certified_prec}, basis size {len(basis)})"]
    lines += [f"  {v} * {k}" for k, v in rep.terms().items()]
    _emit(args, payload, "\n".join(lines))
    return EXIT_FAIL if rep.status is SolveStatus.UNDERDETERMINED else EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmf", description="Exact q-series checks for quasimodular solutions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, terms=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        if terms:
            p.add_argument("--terms", type=int, default=None, help="coefficients below q^TERMS (default 150)")
        return p

    forms = [n.value for n in FormName]
    p = common(sub.add_parser("expand", help="q-expansion of a catalog form"))
    p.add_argument("--form", required=True, choices=forms)
    p.set_defaults(func=cmd_expand)

    p = common(sub.add_parser("fk", help="expansion of F_k, with its residual check"))
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_fk)

    p = common(sub.add_parser("verify", help="theorem sweep over k"))
    p.add_argument("--k-min", type=int, default=3)
    p.add_argument("--k-max", type=int, default=43)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("identities", help="generator and proof identities"))
    p.set_defaults(func=cmd_identities)

    p = common(sub.add_parser("poly", help="the recurrence polynomials P_n, Q_n"), terms=False)
    p.add_argument("--family", choices=("P", "Q"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_poly)

    p = common(sub.add_parser("frobenius", help="Frobenius expansion with resonance detection"))
    p.add_argument("--family", required=True, help="2A or SL2Z")
    p.add_argument("--k", required=True, help="integer or rational, e.g. 7/2")
    p.add_argument("--rho", default="auto", help="indicial root or 'auto' for the larger one")
    p.set_defaults(func=cmd_frobenius)

    p = common(sub.add_parser("decompose", help="coordinates in a graded ring"))
    p.add_argument("--form", choices=forms)
    p.add_argument("--k", type=int, help="decompose F_k instead of a catalog form")
    p.add_argument("--ring", required=True, choices=[t.value for t in RingTag])
    p.add_argument("--weight", type=int, default=None)
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "terms", 0) is None:
            args.terms = default_terms()
        if hasattr(args, "terms"):
            floor = MIN_TERMS if args.command in CHECKING_COMMANDS else 1
            if args.terms < floor:
                raise UsageError(f"--terms must be at least {floor}")
        if hasattr(args, "jobs") and args.jobs < 1:
            raise UsageError("--jobs must be positive")
        return args.func(args)
    except (UsageError, QMFError, ValueError, ZeroDivisionError) as exc:
        print(f"qmf {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
