"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (one line ``error: <Name>: ...``
on stderr), 2 on a usage error.  All numbers in JSON output are strings.
"""

import argparse
import csv
import io
import json
import re
import sys
from enum import Enum
from fractions import Fraction
from numbers import Integral, Rational

from . import __version__
from .core import SomosRecurrence, generate
from .curve import (
    INFINITE,
    curve_from_invariants,
    j_tilde,
    n_family_curve,
    somos4_invariants,
    verify_correspondence,
)
from .diophantine import QuarticInstance, QuinticInstance, stream_quartic, stream_quintic
from .eds import companion_of_somos4, companion_of_somos5, fast_somos_term
from .errors import SomosError
from .growth import fit_quadratic_growth, somos8_experiment
from .integrality import (
    check_cor_somos4,
    check_cor_somos5,
    check_thm_gcd,
    family_abcde,
    gap_lengths,
    n_family,
)
from .rings import ExtElem, LaurentPoly, format_rational, parse_rational
from .symbolic import (
    eds_parity_check,
    n_family_check,
    n_family_symbolic,
    positivity_check,
    strong_laurent_check,
    strong_laurent_terms,
    symbolic_somos4,
)


class UsageError(Exception):
    pass


def rational(text):
    return parse_rational(text)


def rational_list(text):
    return [parse_rational(t) for t in str(text).split(",") if t.strip()]


def int_list(text):
    return [int(t) for t in str(text).split(",") if t.strip()]


# ---------------------------------------------------------------------------
# JSON helpers


def jsonable(x):
    """Recursively convert to JSON-safe data with numbers as strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if x is INFINITE:
        return "infinite"
    if isinstance(x, Enum):
        return str(x)
    if isinstance(x, (Integral, Rational)):
        return format_rational(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, (ExtElem, LaurentPoly)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    return str(x)


def _j_json(j):
    if j is INFINITE:
        return "infinite"
    j = Fraction(j)
    return {"num": str(j.numerator), "den": str(j.denominator)}


def _point_json(P):
    return "O" if P.is_infinity else {"x": str(P.x), "y": str(P.y)}


# ---------------------------------------------------------------------------
# argument handling


def _add_common(p, recurrence=True):
    g = p.add_argument_group("output")
    g.add_argument("--format", choices=("json", "csv", "text"), default="json")
    g.add_argument("--out", help="write output to this file instead of stdout")
    if recurrence:
        r = p.add_argument_group("recurrence")
        kind = r.add_mutually_exclusive_group()
        kind.add_argument("--s4", action="store_const", dest="order", const=4, help="Somos 4 (default)")
        kind.add_argument("--s5", action="store_const", dest="order", const=5, help="Somos 5")
        kind.add_argument("--s8", action="store_const", dest="order", const=8, help="Somos 8 (unit coefficients)")
        r.add_argument("--alpha", type=rational, default=None)
        r.add_argument("--beta", type=rational, default=None)
        r.add_argument("--init", type=rational_list, default=None, help="comma-separated initial terms")


def build_parser():
    parser = argparse.ArgumentParser(prog="somos", description="Exact Somos 4/5/8 recurrence toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="JSON file whose keys mirror the long flags")
    parser.add_argument("--print-config", action="store_true", help="emit the canonical config and exit")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("gen", help="iterate a recurrence over an index range")
    _add_common(p)
    p.add_argument("--from", dest="lo", type=int, default=1)
    p.add_argument("--to", dest="hi", type=int, default=20)

    p = sub.add_parser("invariants", help="T, lambda, I (Somos 4) or J, I~ (Somos 5) and the curve")
    _add_common(p)

    p = sub.add_parser("curve", help="Weierstrass data, points P and Q, and the verified range")
    _add_common(p)
    p.add_argument("--N", type=rational, default=None, help="use the one-parameter family at N")
    p.add_argument("--from", dest="lo", type=int, default=-3)
    p.add_argument("--to", dest="hi", type=int, default=8)

    p = sub.add_parser("companion", help="companion EDS terms W1..Wk")
    _add_common(p)
    p.add_argument("--count", type=int, default=10)

    p = sub.add_parser("fastterm", help="single term A[n] by index doubling")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--digits-only", action="store_true", help="report only the decimal length")

    p = sub.add_parser("check", help="sufficient integrality criteria")
    _add_common(p)
    p.add_argument("--criterion", choices=("cor", "gcd", "all"), default="all")

    p = sub.add_parser("family", help="integral families")
    _add_common(p, recurrence=False)
    p.add_argument("--abcde", type=int_list, help="a,b,c,d,e with a^3 d + e^2 = b c")
    p.add_argument("--N", type=int, help="member of the alpha=-1/N family")
    p.add_argument("--sweep", help="range lo:hi of N values")
    p.add_argument("--from", dest="lo", type=int, default=-2)
    p.add_argument("--to", dest="hi", type=int, default=12)

    p = sub.add_parser("laurent", help="symbolic Laurent checks")
    _add_common(p, recurrence=False)
    p.add_argument("--check", choices=("somos4", "strong", "eds", "positivity", "nfamily"), default="strong")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--from", dest="lo", type=int, default=-8, help="lower index (nfamily)")
    p.add_argument("--dump", action="store_true", help="include canonical polynomial records")

    p = sub.add_parser("dioph", help="stream Diophantine solutions from an orbit")
    _add_common(p)
    eq = p.add_mutually_exclusive_group()
    eq.add_argument("--quartic", action="store_true")
    eq.add_argument("--quintic", action="store_true")
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--primitive", action="store_true")

    p = sub.add_parser("growth", help="height growth fits")
    _add_common(p)
    p.add_argument("--from", dest="lo", type=int, default=None)
    p.add_argument("--to", dest="hi", type=int, default=None)

    p = sub.add_parser("gaps", help="gaps between indices divisible by a prime")
    _add_common(p)
    p.add_argument("--N", type=int, help="use the alpha=-1/N family")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--from", dest="lo", type=int, default=1)
    p.add_argument("--to", dest="hi", type=int, default=40)
    return parser


_CANON_SKIP = {"config", "print_config", "command", "out"}


def canonical_config(ns):
    """Canonical JSON-ready dict for a parsed namespace (round-trips via ``--config``)."""
    out = {"command": ns.command}
    for k in sorted(vars(ns)):
        if k in _CANON_SKIP:
            continue
        v = getattr(ns, k)
        if v is None or v is False:
            continue
        out[k] = jsonable(v) if not isinstance(v, list) else ",".join(jsonable(v))
    return out


_DEST_TO_FLAG = {"lo": "--from", "hi": "--to", "order": None}


def _config_argv(cfg):
    argv = []
    for key, val in cfg.items():
        if key in ("command", "config", "print_config"):
            continue
        if key == "order":
            argv.append({4: "--s4", 5: "--s5", 8: "--s8"}[int(val)])
            continue
        flag = _DEST_TO_FLAG.get(key) or "--" + key.replace("_", "-")
        if val is True:
            argv.append(flag)
        elif val is False or val is None:
            continue
        elif isinstance(val, list):
            argv += [flag, ",".join(str(v) for v in val)]
        else:
            argv += [flag, str(val)]
    return argv


_NEG_VALUE = re.compile(r"^-\d[\d/,\-]*$")


def _attach_negative_values(argv):
    """``--alpha -1/2`` -> ``--alpha=-1/2`` (argparse would read ``-1/2`` as a flag)."""
    out = []
    for tok in argv:
        if _NEG_VALUE.match(tok) and out and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def parse(argv):
    parser = build_parser()
    argv = _attach_negative_values(argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if known.config:
        try:
            with open(known.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"--config: {exc}")
        if not isinstance(cfg, dict) or "command" not in cfg and not rest:
            parser.error("--config: expected an object with a 'command' key")
        globals_ = [a for a in rest if a == "--print-config"]
        rest = [a for a in rest if a != "--print-config"]
        cmd = [rest[0]] if rest and not rest[0].startswith("-") else [cfg["command"]]
        tail = rest[1:] if rest and not rest[0].startswith("-") else rest
        argv = globals_ + cmd + _config_argv(cfg) + tail
    ns = parser.parse_args(argv)
    if ns.command is None:
        parser.error("a command is required")
    if getattr(ns, "order", None) is None and hasattr(ns, "alpha"):
        ns.order = 4
    return parser, ns


def _recurrence(ns, parser):
    if ns.order == 8:
        if ns.alpha not in (None, 1) or ns.beta not in (None, 1):
            parser.error("--s8 only supports unit coefficients")
        return SomosRecurrence.somos8()
    if ns.alpha is None or ns.beta is None:
        parser.error("--alpha and --beta are required")
    return SomosRecurrence(ns.order, (ns.alpha, ns.beta))


def _inits(ns, parser, rec):
    if ns.init is None:
        if rec.order == 8:
            return [1] * 8
        parser.error("--init is required")
    if len(ns.init) != rec.order:
        parser.error(f"--init: need {rec.order} values, got {len(ns.init)}")
    return ns.init


# ---------------------------------------------------------------------------
# commands


def cmd_gen(ns, parser):
    rec = _recurrence(ns, parser)
    inits = _inits(ns, parser, rec)
    orbit = generate(rec, inits, lo=ns.lo, hi=ns.hi)
    rows = [(n, orbit[n]) for n in range(ns.lo, ns.hi + 1)]
    return {
        "recurrence": {"order": rec.order, "coefficients": list(rec.coefficients)},
        "terms": [{"index": n, "value": v} for n, v in rows],
    }, [("index", "value")] + rows


def _curve_payload(curve):
    return {"g2": curve.g2, "g3": curve.g3, "j": _j_json(curve.j)}


def cmd_invariants(ns, parser):
    rec = _recurrence(ns, parser)
    inits = _inits(ns, parser, rec)
    if rec.order == 4:
        inv = somos4_invariants(rec.alpha, rec.beta, inits)
        out = {"T": inv.T, "lambda": inv.lam, "I": inv.I, "beta_T": rec.beta * inv.T}
        out.update(_curve_payload(curve_from_invariants(rec.alpha, rec.beta, inv.T)))
        return out, None
    if rec.order == 5:
        inv = j_tilde(rec.alpha, rec.beta, inits)
        return {"J": inv.J, "I_tilde": inv.I_tilde, "alpha_J": rec.alpha * inv.J}, None
    parser.error("invariants are defined for --s4 and --s5")


def cmd_curve(ns, parser):
    if ns.N is not None:
        return _curve_payload(n_family_curve(ns.N)), None
    rec = _recurrence(ns, parser)
    if rec.order != 4:
        parser.error("curve requires --s4")
    inits = _inits(ns, parser, rec)
    orbit = generate(rec, inits)
    rep = verify_correspondence(orbit, ns.lo, ns.hi)
    out = _curve_payload(rep.curve)
    out.update(
        {
            "P": _point_json(rep.P),
            "Q": _point_json(rep.Q),
            "branch": rep.branch,
            "verified_range": [ns.lo, ns.hi],
            "T_identity": rep.t_identity,
            "doubling_identity": rep.doubling_identity,
        }
    )
    return out, None


def cmd_companion(ns, parser):
    rec = _recurrence(ns, parser)
    inits = _inits(ns, parser, rec)
    if rec.order == 4:
        inv = somos4_invariants(rec.alpha, rec.beta, inits)
        W = companion_of_somos4(rec.alpha, rec.beta, inv.T)
        ring = {"generator": "s", "relation": f"s^2 = {format_rational(rec.alpha)}"}
    elif rec.order == 5:
        J = j_tilde(rec.alpha, rec.beta, inits).J
        W = companion_of_somos5(rec.alpha, rec.beta, J)
        ring = {"generator": "s", "relation": f"s^4 = {format_rational(W.I)}"}
    else:
        parser.error("companion requires --s4 or --s5")
    rows = [(n, str(W[n])) for n in range(1, ns.count + 1)]
    return {"ring": ring, "terms": [{"index": n, "value": v} for n, v in rows]}, [("index", "value")] + rows


def cmd_fastterm(ns, parser):
    rec = _recurrence(ns, parser)
    if rec.order != 4:
        parser.error("fastterm requires --s4")
    inits = _inits(ns, parser, rec)
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    v = fast_somos_term(rec, inits, ns.n)
    out = {"n": ns.n}
    if isinstance(v, int):
        out["digits"] = len(str(abs(v)))
    if not ns.digits_only:
        out["value"] = v
    return out, None


def cmd_check(ns, parser):
    rec = _recurrence(ns, parser)
    inits = _inits(ns, parser, rec)
    reports = []
    if rec.order == 4:
        if ns.criterion in ("cor", "all"):
            reports.append(check_cor_somos4(rec.alpha, rec.beta, inits))
        if ns.criterion in ("gcd", "all"):
            reports.append(check_thm_gcd(rec.alpha, rec.beta, inits))
    elif rec.order == 5:
        reports.append(check_cor_somos5(rec.alpha, rec.beta, inits))
    else:
        parser.error("check requires --s4 or --s5")
    return {"reports": [r.to_json() for r in reports]}, None


def _family_member_n(N, lo, hi):
    orbit = n_family(N, lo=lo, hi=hi)
    report = None
    try:
        report = check_cor_somos4(orbit.recurrence.alpha, 1, [1, -N, N, 1]).to_json()
    except SomosError as exc:  # zero terms in the window
        report = {"verdict": "Inconclusive", "error": exc.name}
    return {
        "N": N,
        "recurrence": {"order": 4, "coefficients": list(orbit.recurrence.coefficients)},
        "inits": [1, -N, N, 1],
        "window": [{"index": n, "value": v} for n, v in orbit.items()],
        "criteria": report,
    }


def cmd_family(ns, parser):
    if ns.abcde:
        if len(ns.abcde) != 5:
            parser.error("--abcde: need five integers a,b,c,d,e")
        a, b, c, d, e = ns.abcde
        fam = family_abcde(a, d, e, b, c)
        rep = check_cor_somos4(fam.recurrence.alpha, fam.recurrence.beta, fam.inits)
        return {
            "recurrence": {"order": 4, "coefficients": list(fam.recurrence.coefficients)},
            "inits": list(fam.inits),
            "window": [{"index": n, "value": v} for n, v in zip(range(-2, 6), fam.window)],
            "beta_T": fam.beta_T,
            "verdict": str(rep.verdict),
        }, None
    if ns.sweep:
        try:
            lo, hi = (int(t) for t in ns.sweep.split(":"))
        except ValueError:
            parser.error("--sweep: expected lo:hi")
        members = [_family_member_n(N, ns.lo, ns.hi) for N in range(lo, hi + 1) if N != 0]
        return {"members": members}, None
    if ns.N is not None:
        return _family_member_n(ns.N, ns.lo, ns.hi), None
    parser.error("family needs --abcde, --N or --sweep")


def cmd_laurent(ns, parser):
    kind = ns.check
    if kind == "somos4":
        n_max = ns.n_max or 14
        terms = symbolic_somos4(n_max)
        out = {"check": kind, "entries": []}
        for n in range(1, n_max + 1):
            e = {"n": n, "monomials": len(terms[n]), "min_coeff": min(terms[n].coefficients())}
            if ns.dump:
                e["poly"] = {"variables": list(terms[n].variables), "terms": terms[n].to_records()}
            out["entries"].append(e)
        return out, None
    if kind == "strong":
        rep = strong_laurent_check(ns.n_max or 12)
        polys = strong_laurent_terms(ns.n_max or 12) if ns.dump else None
    elif kind == "eds":
        rep = eds_parity_check(ns.n_max or 16)
        polys = None
    elif kind == "positivity":
        rep = positivity_check(ns.n_max or 10)
        polys = None
    else:
        rep = n_family_check(ns.lo, ns.n_max or 20)
        polys = n_family_symbolic(ns.lo, ns.n_max or 20) if ns.dump else None
    out = rep.to_json()
    out.pop("notes", None)
    out["notes"] = {k: v for k, v in rep.notes.items() if isinstance(v, bool)}
    if polys:
        for e in out["entries"]:
            p = polys[e["n"]]
            e["poly"] = {"variables": list(p.variables), "terms": p.to_records()}
    return out, None


def cmd_dioph(ns, parser):
    rec = _recurrence(ns, parser)
    inits = _inits(ns, parser, rec)
    quintic = ns.quintic or (rec.order == 5 and not ns.quartic)
    if quintic != (rec.order == 5):
        parser.error("--quartic needs --s4 and --quintic needs --s5")
    if quintic:
        inst = QuinticInstance.from_orbit_data(rec.alpha, rec.beta, inits)
        sols = stream_quintic(inst, inits, ns.count, ns.primitive)
    else:
        inst = QuarticInstance.from_orbit_data(rec.alpha, rec.beta, inits)
        sols = stream_quartic(inst, inits, ns.count, ns.primitive)
    rows = [(s.index, " ".join(format_rational(x) for x in s.window), s.gcd, s.residual) for s in sols]
    return {"lines": [s.to_json() for s in sols]}, [("index", "window", "gcd", "residual")] + rows


def cmd_growth(ns, parser):
    rec = _recurrence(ns, parser) if ns.order != 8 else SomosRecurrence.somos8()
    if rec.order == 8:
        hi = ns.hi or 45
        rep = somos8_experiment(hi, ns.lo or 25)
    else:
        inits = _inits(ns, parser, rec)
        lo, hi = ns.lo or 10, ns.hi or 40
        orbit = generate(rec, inits, hi=hi)
        rep = fit_quadratic_growth(orbit, lo, hi)
    return rep.to_json(), rep.csv_rows()


def cmd_gaps(ns, parser):
    if ns.N is not None:
        orbit = n_family(ns.N, lo=min(ns.lo, 1), hi=max(ns.hi, 4))
    else:
        rec = _recurrence(ns, parser)
        orbit = generate(rec, _inits(ns, parser, rec), lo=ns.lo, hi=ns.hi)
    idx = [n for n, v in orbit.items() if ns.lo <= n <= ns.hi and int(v) % ns.p == 0]
    return {"p": ns.p, "indices": idx, "gaps": gap_lengths(orbit, ns.p, ns.lo, ns.hi)}, None


COMMANDS = {
    "gen": cmd_gen,
    "invariants": cmd_invariants,
    "curve": cmd_curve,
    "companion": cmd_companion,
    "fastterm": cmd_fastterm,
    "check": cmd_check,
    "family": cmd_family,
    "laurent": cmd_laurent,
    "dioph": cmd_dioph,
    "growth": cmd_growth,
    "gaps": cmd_gaps,
}


# ---------------------------------------------------------------------------
# rendering


def _text(data, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, dict) and set(v) == {"index", "value"}:
                lines.append(f"{pad}{v['index']}: {v['value']}")
            elif isinstance(v, (dict, list)):
                lines += _text(v, indent)
                lines.append(f"{pad}-")
            else:
                lines.append(f"{pad}{v}")
    else:
        lines.append(f"{pad}{data}")
    return lines


def render(payload, rows, fmt, command):
    data = jsonable(payload)
    if fmt == "json":
        if command == "dioph":
            return "".join(json.dumps(line) + "\n" for line in data["lines"])
        return json.dumps(data, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if rows is None:
            rows = [("key", "value")] + [
                (k, json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in data.items()
            ]
        for r in rows:
            w.writerow([jsonable(x) if not isinstance(x, str) else x for x in r])
        return buf.getvalue()
    return "\n".join(_text(data)) + "\n"


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        parser, ns = parse(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if ns.print_config:
        sys.stdout.write(json.dumps(canonical_config(ns), indent=2, sort_keys=True) + "\n")
        return 0
    try:
        payload, rows = COMMANDS[ns.command](ns, parser)
        text = render(payload, rows, ns.format, ns.command)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except SomosError as exc:
        msg = str(exc).replace("\n", " ")
        sys.stderr.write(f"error: {exc.name}: {msg}\n")
        return 1
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
