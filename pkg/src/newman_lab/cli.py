"""Command-line interface.

Exit codes: 0 success, 1 property violation in an asserted region,
2 usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import sys

from . import asymptotics, primes, theorems
from .discrepancy import DiscrepancyQuery, eval as eval_query, expansion_terms, power_column
from .errors import DomainError, PropertyViolation, ResourceLimitError
from .reporting import OutputRecord

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(float(x)) if "e" in x.lower() else int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _int(text: str) -> int:
    # accept 1e5 style limits
    try:
        return int(text)
    except ValueError:
        try:
            v = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
        if not v.is_integer():
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
        return int(v)


def _jobs(args) -> int:
    return args.jobs or primes.default_jobs()


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


# ---------------------------------------------------------------- commands

def cmd_eval(args) -> tuple[OutputRecord, int]:
    N = args.bound if args.bound is not None else args.base**args.bound_pow
    b, q = args.base, args.mod
    query = DiscrepancyQuery.make(b, q, args.residue, N)
    value = eval_query(query, args.method)
    row = {"base": b, "mod": q, "residue": query.i, "bound": N,
           "bound_in_Ab": query.bound.value, "value": value}
    summary = {}
    if args.explain:
        summary["terms"] = [
            {"sign": sg, "residue": (query.i - off) % q, "k": k,
             "column": power_column(b, q, query.i - off, k)}
            for sg, off, k in expansion_terms(b, q, query.bound)
        ]
    params = {"base": b, "mod": q, "residue": args.residue, "bound": N, "method": args.method}
    return OutputRecord("eval", params, [row], summary), EXIT_OK


def _render_eval(record: OutputRecord) -> str:
    # plain mode: the value, then one line per digit term when explained
    lines = [str(record.rows[0]["value"])]
    for t in record.summary.get("terms", []):
        sign = "+" if t["sign"] > 0 else "-"
        lines.append(f"{sign} S_{{q,{t['residue']}}}(b^{t['k']}) = {sign}{abs(t['column'])}"
                     if t["column"] else f"{sign} S_{{q,{t['residue']}}}(b^{t['k']}) = 0")
    return "\n".join(lines) + "\n"


def cmd_scan(args) -> tuple[OutputRecord, int]:
    jobs = _jobs(args)
    if args.theorem == 1:
        families = [args.family] if args.family else ["center", "plus", "minus"]
        reports = []
        for fam in families:
            _progress(f"scanning family {fam}")
            reports.append(theorems.scan_theorem1(args.base, args.mod, args.v, fam,
                                                  args.digits, jobs=jobs))
    else:
        reports = theorems.scan_theorem2(args.base, args.mod, args.digits, jobs=jobs)
    rows = [r.summary() for r in reports]
    status = EXIT_OK
    for r, row in zip(reports, rows):
        late = r.violations_from(args.max_threshold_digits)
        row["violations_in_asserted_region"] = len(late) if r.asserted else 0
        if r.asserted and late:
            status = EXIT_VIOLATION
    params = {"theorem": args.theorem, "base": args.base, "mod": args.mod, "v": args.v,
              "family": args.family, "digits": args.digits,
              "max_threshold_digits": args.max_threshold_digits}
    summary = {"reports": len(reports), "violating": status == EXIT_VIOLATION}
    if args.json:
        for r, row in zip(reports, rows):
            row["violations"] = [list(v) for v in r.violations[: args.max_violations]]
    return OutputRecord("scan", params, rows, summary), status


def cmd_asymptote(args) -> tuple[OutputRecord, int]:
    b, q = args.base, args.mod
    l = asymptotics._validate(b, q)
    s = asymptotics.multiplicative_order(b, q)
    m_fit = asymptotics.fit_envelope(b, q, args.fit_kmax)
    rows, worst, outside = [], 0.0, 0
    for r in asymptotics.residuals(b, q, args.kmax):
        worst = max(worst, r.ratio)
        lo, hi = asymptotics.envelope_bounds(b, q, r.i, r.k, m_fit)
        # the fitting point itself sits on the bound; allow rounding slack
        tol = 1e-12 * max(1, abs(r.exact))
        inside = r.ratio <= m_fit * (1 + 1e-12) and lo - tol <= r.exact <= hi + tol
        outside += not inside
        rows.append({"k": r.k, "i": r.i, "exact": r.exact, "main_term": r.main,
                     "diff": r.diff, "ratio": r.ratio, "lower": float(lo), "upper": float(hi),
                     "within": inside})
    summary = {"l": l, "s": s, "beta": asymptotics.beta(l), "gamma": asymptotics.gamma(b, q),
               "fitted_m": m_fit, "fitted_m_full": worst, "outside": outside}
    params = {"base": b, "mod": q, "fit_kmax": args.fit_kmax, "kmax": args.kmax}
    return OutputRecord("asymptote", params, rows, summary), EXIT_VIOLATION if outside else EXIT_OK


def cmd_gamma(args) -> tuple[OutputRecord, int]:
    b, q = args.base, args.mod
    l = asymptotics._validate(b, q)
    s = asymptotics.multiplicative_order(b, q)
    g, bt = asymptotics.gamma(b, q), asymptotics.beta(l)
    row = {"base": b, "mod": q, "l": l, "s": s, "gamma": g, "beta": bt,
           "beta_pow_s": bt**s, "gap": bt**s - g}
    ok = g < bt**s - asymptotics.MARGIN
    return OutputRecord("gamma", {"base": b, "mod": q}, [row], {"gap_positive": ok}), \
        EXIT_OK if ok else EXIT_VIOLATION


def _classify(args) -> list[primes.PrimeRow]:
    _progress(f"classifying primes up to {args.limit}")
    return primes.classify_primes(args.base, args.limit, tuple(args.probes), jobs=_jobs(args),
                                  exact_limit=args.exact_limit)


def cmd_prime_classify(args) -> tuple[OutputRecord, int]:
    rows_p = _classify(args)
    rows = []
    bad = 0
    for r in rows_p:
        row = {"p": r.p, "s": r.s, "t": r.t}
        for k, sg in zip(args.probes, r.signs):
            row[f"sign_k{k}"] = sg
        row["verdict"] = r.verdict
        row["method"] = r.method
        rows.append(row)
        bad += r.s * r.t != r.p - 1
    counts = {v: sum(r.verdict == v for r in rows_p)
              for v in (primes.NEGATIVE, primes.CANDIDATE, primes.ZERO)}
    summary = {"primes": len(rows_p), **counts, "fitted_c1": primes.fitted_c1(rows_p)}
    params = {"base": args.base, "limit": args.limit, "probes": list(args.probes),
              "exact_limit": args.exact_limit}
    return OutputRecord("prime-classify", params, rows, summary), EXIT_VIOLATION if bad else EXIT_OK


def cmd_density(args) -> tuple[OutputRecord, int]:
    xs = sorted(args.limits)
    args.limit = xs[-1]
    points = primes.density_table(_classify(args), xs, args.eps)
    rows = [{"x": d.x, "primes": d.primes, "candidates": d.candidates, "fraction": d.fraction,
             "small_order": d.small_order} for d in points]
    fr = [d.fraction for d in points]
    monotone = all(a >= b for a, b in zip(fr, fr[1:]))
    params = {"base": args.base, "limits": xs, "probes": list(args.probes), "eps": args.eps}
    return OutputRecord("density", params, rows, {"non_increasing": monotone}), \
        EXIT_OK if monotone else EXIT_VIOLATION


def cmd_verify(args) -> tuple[OutputRecord, int]:
    from . import acceptance

    selected = args.only or sorted(acceptance.CRITERIA)
    rows = []
    for n in selected:
        if n not in acceptance.CRITERIA:
            raise DomainError(f"no criterion {n}")
        _progress(f"criterion {n}: {acceptance.CRITERIA[n][0]}")
        res = acceptance.run(n, quick=args.quick, jobs=_jobs(args))
        _progress(res.line())
        rows.append({"criterion": res.number, "name": res.name, "passed": res.passed,
                     "detail": res.detail, "seconds": round(res.seconds, 2)})
    failed = [r["criterion"] for r in rows if not r["passed"]]
    summary = {"passed": len(rows) - len(failed), "failed": failed}
    return OutputRecord("verify", {"only": selected, "quick": args.quick}, rows, summary), \
        EXIT_VIOLATION if failed else EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON record instead of CSV")
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--jobs", type=int, default=None,
                        help="worker processes (default: $NEWMAN_LAB_JOBS or CPU count)")

    parser = argparse.ArgumentParser(prog="newman-lab",
                                     description="Signed digit-sum counts over 0/1-digit numbers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="exact S_{q,i}(N)")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--residue", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--bound", type=_int)
    g.add_argument("--bound-pow", type=int, help="use N = base**K")
    p.add_argument("--method", choices=["auto", "brute", "recursive", "character"], default="auto")
    p.add_argument("--explain", action="store_true", help="show the digit split of N")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("scan", parents=[common], help="exhaustive sign scan")
    p.add_argument("--theorem", type=int, choices=[1, 2], required=True)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--mod", "--divisor", dest="mod", type=int, required=True,
                   help="modulus q (--theorem 1) or divisor d of b+1 (--theorem 2)")
    p.add_argument("--family", choices=sorted(theorems.FAMILIES), default=None)
    p.add_argument("--v", type=int, default=0)
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--max-threshold-digits", type=int, default=6,
                   help="violations with at least this many digits count as failures")
    p.add_argument("--max-violations", type=int, default=100,
                   help="violations listed per report in JSON output")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("asymptote", parents=[common], help="main term, fitted envelope, bounds")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--fit-kmax", type=int, default=40)
    p.add_argument("--kmax", type=int, default=80)
    p.set_defaults(func=cmd_asymptote)

    p = sub.add_parser("gamma", parents=[common], help="secondary growth rate")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.set_defaults(func=cmd_gamma)

    for name, func, help_ in (("prime-classify", cmd_prime_classify, "per-prime sign verdicts"),
                              ("density", cmd_density, "candidate-positive density")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--base", type=int, default=2)
        if name == "prime-classify":
            p.add_argument("--limit", type=_int, required=True)
        else:
            p.add_argument("--limits", type=_int_list, default=[1000, 10000, 100000])
            p.add_argument("--eps", type=float, default=0.05)
        p.add_argument("--probes", type=_int_list, default=[1, 2])
        p.add_argument("--exact-limit", type=int, default=256,
                       help="largest p evaluated exactly; larger p use the coset decomposition")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance criteria")
    p.add_argument("--only", type=_int_list, default=None)
    p.add_argument("--quick", action="store_true", help="smaller ranges for a fast smoke run")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        record, status = args.func(args)
    except (DomainError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PropertyViolation as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    if record.command == "eval" and not args.json:
        text = _render_eval(record)
    else:
        text = record.render(args.json)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
