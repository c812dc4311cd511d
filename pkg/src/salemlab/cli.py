"""Command-line entry point: ``salemlab <subcommand> [flags]``.

Polynomials are given in the ascending comma-separated form (``1,1,0,-1`` is
1 + z - z^3). A leading minus sign needs the ``--poly=-1,0,1`` spelling.

Exit status: 0 on success, 1 on a domain error (a JSON object
``{"error": ..., "message": ...}`` goes to stderr), 2 on a usage error.

JSON output is canonical: keys keep the insertion order documented in each
``to_dict`` method, floats carry 12 significant digits, and separators are
``(",", ":")``; parsing and re-serializing reproduces the same bytes.
"""

import argparse
import csv
import io
import json
import sys

from salemlab import oracles
from salemlab.classify import (
    Verdict,
    classify_number,
    is_irreducible,
    lemma_coefficients,
    sprime_criterion,
)
from salemlab.errors import CriterionFails, GIdenticallyZero, SalemLabError
from salemlab.experiments import (
    closure_evidence,
    convergence_study,
    iterate_scheme,
    scan_self_check,
    smallest_salem_scan,
)
from salemlab.families import (
    Family,
    boyd_associate,
    check_identities,
    family_sweep,
    make_element,
)
from salemlab.polyint import parse_poly
from salemlab.rootloc import circle_classification, mahler_measure

SIG_DIGITS = 12


class OracleMismatch(SalemLabError):
    pass


class UsageError(Exception):
    pass


# -- output ---------------------------------------------------------------------

def _round(obj):
    if isinstance(obj, float):
        return float(f"{obj:.{SIG_DIGITS}g}")
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def to_json(obj):
    return json.dumps(_round(obj), separators=(",", ":"), ensure_ascii=True)


def _text_value(v):
    if isinstance(v, float):
        return f"{v:.{SIG_DIGITS}g}"
    if isinstance(v, (dict, list)):
        return to_json(v)
    return "" if v is None else str(v)


def _to_text(obj):
    if isinstance(obj, list):
        return "\n".join(_to_text(x) for x in obj)
    if isinstance(obj, dict):
        return "\n".join(f"{k}: {_text_value(v)}" for k, v in obj.items())
    return _text_value(obj)


def _to_csv(rows):
    if isinstance(rows, dict):
        rows = [rows]
    buf = io.StringIO()
    if not rows:
        return ""
    header = list(rows[0])
    for r in rows[1:]:
        header.extend(k for k in r if k not in header)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_text_value(r.get(k)) for k in header])
    return buf.getvalue().rstrip("\n")


def emit(payload, fmt, rows=None, out=None):
    """Print payload as json/text, or rows (defaulting to payload) as csv."""
    out = out or sys.stdout
    if fmt == "json":
        text = to_json(payload)
    elif fmt == "csv":
        text = _to_csv(rows if rows is not None else payload)
    else:
        text = _to_text(payload)
    out.write(text + "\n")


# -- argument helpers -------------------------------------------------------------

def _poly_arg(text):
    try:
        return parse_poly(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sign_arg(text):
    try:
        v = int(text)
    except ValueError:
        v = 0
    if v not in (1, -1):
        raise argparse.ArgumentTypeError(f"expected +1 or -1, got {text!r}")
    return v


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.command}: missing required flag(s) "
                         + ", ".join("--" + n.replace("_", "-") for n in missing))


# -- commands -----------------------------------------------------------------------

def _oracle_classify(nc, p):
    report = {}
    if nc.value is not None and nc.verdict in (Verdict.PISOT, Verdict.SALEM):
        target = nc.polynomial if nc.orientation == "direct" else nc.polynomial.reverse()
        alt = oracles.bisection_max_root(target)
        report["bisection_value"] = alt
        if not oracles.isclose(alt, nc.value):
            raise OracleMismatch(f"bisection oracle gives {alt}, classifier {nc.value}")
    if p.degree() <= 12:
        brute = oracles.brute_force_irreducible(p)
        report["brute_force_irreducible"] = brute
        fast, _ = is_irreducible(p)
        if brute != fast:
            raise OracleMismatch(f"irreducibility: brute force {brute}, fast {fast}")
    return report


def cmd_classify(args):
    _need(args, "poly")
    nc = classify_number(args.poly)
    d = nc.to_dict()
    if args.oracle_check:
        d["oracle"] = _oracle_classify(nc, args.poly)
    return d, None


def cmd_roots(args):
    _need(args, "poly")
    prof = circle_classification(args.poly)
    rows = [{"re": r.center.real, "im": r.center.imag, "modulus": abs(r.center),
             "radius": r.radius, "side": r.side} for r in prof.roots]
    d = {"polynomial": str(args.poly), "degree": prof.degree,
         "inside": prof.inside_count, "on": prof.on_count,
         "outside": prof.outside_count, "exact_counts": prof.exact, "roots": rows}
    if args.oracle_check and prof.on_count == 0:
        alt = oracles.brute_force_inside_count(args.poly)
        d["oracle_inside"] = alt
        if alt != prof.inside_count:
            raise OracleMismatch(f"float oracle counts {alt} roots inside, exact {prof.inside_count}")
    return d, rows


def cmd_measure(args):
    _need(args, "poly")
    mm = mahler_measure(args.poly)
    return {"polynomial": str(args.poly), "mahler_measure": mm.value, "error": mm.error}, None


def _element_from_args(args):
    _need(args, "kind")
    fam = Family(args.kind)
    if fam in (Family.UV_ALPHA,) and args.variant is None:
        args.variant = "alpha_ext"
    return make_element(fam, u0=args.u0, s=args.s, eps=args.eps, v0=args.v0,
                        variant=args.variant)


def cmd_family(args):
    fe = _element_from_args(args)
    d = fe.to_dict()
    d["case_tag"] = fe.g.case_tag.value if fe.g is not None else None
    d["series"] = lemma_coefficients(fe.A, fe.P)
    try:
        sprime_criterion(fe.A, fe.P)
        d["sprime"] = True
    except (CriterionFails, GIdenticallyZero):
        d["sprime"] = False
    rows = None
    if args.check_identities:
        reports = [r.to_dict() for r in check_identities(fe)]
        d["identities"] = reports
        rows = [{"identity_id": r["identity_id"], "holds": r["holds"],
                 "difference": r["difference"]} for r in reports]
    return d, rows


def cmd_salem_seq(args):
    _need(args, "poly", "eta")
    m_max = args.m if args.m is not None else 14
    rows = [r.to_dict() for r in convergence_study(args.poly, args.eta, args.m_min, m_max)]
    return {"P": str(args.poly), "eta": args.eta, "rows": rows}, rows


def cmd_associate(args):
    _need(args, "poly", "m", "eta")
    assoc = boyd_associate(args.poly, args.m, args.eta)
    rows = [a.to_dict() for a in assoc]
    return {"R": str(args.poly), "associations": rows}, rows


def cmd_scan(args):
    _need(args, "degree", "height")
    res = smallest_salem_scan(args.degree, args.height, checkpoint=args.checkpoint)
    d = res.to_dict()
    d["minimizers"] = [str(p) for p in res.minimizers()]
    if args.oracle_check:
        d["self_check"] = scan_self_check(res)
        if not d["self_check"]:
            raise OracleMismatch("scan self-check failed")
    return d, d["salem_found"]


def cmd_iterate(args):
    if args.A is not None or args.P is not None:
        _need(args, "A", "P")
        A, P = args.A, args.P
    else:
        fe = _element_from_args(args)
        A, P = fe.A, fe.P
    states = [st.to_dict() for st in iterate_scheme(A, P, n_max=args.n)]
    rows = [{"n": st["n"], "a_n": st["a_n"], "F_n0": st["F_n0"],
             "all_hold": all(st["checks"].values())} for st in states]
    return {"A": str(A), "P": str(P), "states": states}, rows


def cmd_verify_identities(args):
    reports = []
    for fe in family_sweep():
        if args.kind is not None and fe.family_tag.value != args.kind:
            continue
        reports.extend(r.to_dict() for r in check_identities(fe))
    summary = {}
    for r in reports:
        s = summary.setdefault(r["identity_id"], {"identity_id": r["identity_id"],
                                                  "evaluated": 0, "holds": 0})
        s["evaluated"] += 1
        s["holds"] += bool(r["holds"])
    rows = [{"identity_id": r["identity_id"], **r["params"], "holds": r["holds"],
             "difference": r["difference"]} for r in reports]
    return {"summary": list(summary.values()), "reports": reports}, rows


def cmd_closure(args):
    _need(args, "lo", "hi")
    rep = closure_evidence(args.lo, args.hi, args.budget)
    return rep, rep["clusters"]


COMMANDS = {
    "classify": cmd_classify,
    "roots": cmd_roots,
    "measure": cmd_measure,
    "family": cmd_family,
    "salem-seq": cmd_salem_seq,
    "associate": cmd_associate,
    "scan": cmd_scan,
    "iterate": cmd_iterate,
    "verify-identities": cmd_verify_identities,
    "closure": cmd_closure,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "csv"), default="json")
    common.add_argument("--oracle-check", action="store_true",
                        help="rerun key results through the slow independent path")
    common.add_argument("--poly", type=_poly_arg, help="ascending coefficients, e.g. 1,1,0,-1")
    common.add_argument("--A", type=_poly_arg)
    common.add_argument("--P", type=_poly_arg)
    for name in ("u0", "v0", "s", "m", "degree", "height"):
        common.add_argument("--" + name, type=int)
    common.add_argument("--m-min", type=int, default=1)
    common.add_argument("--eps", type=_sign_arg)
    common.add_argument("--eta", type=_sign_arg)
    common.add_argument("--kind", choices=[f.value for f in Family])
    common.add_argument("--variant", choices=("A1", "A2", "smallest_h", "alpha_ext"))
    common.add_argument("--check-identities", action="store_true")
    common.add_argument("--checkpoint")
    common.add_argument("--n", type=int, default=4, help="iteration depth")
    common.add_argument("--lo", type=float)
    common.add_argument("--hi", type=float)
    common.add_argument("--budget", type=int, default=10_000)

    parser = _Parser(prog="salemlab", description="Pisot and Salem number toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def run(argv=None, out=None, err=None):
    """Parse argv, run one command and return the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, rows = COMMANDS[args.command](args)
    except UsageError as exc:
        err.write(f"salemlab: error: {exc}\n")
        return 2
    except SalemLabError as exc:
        err.write(to_json(exc.to_dict()) + "\n")
        return 1
    except ValueError as exc:
        err.write(to_json({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    emit(payload, args.format, rows, out)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
