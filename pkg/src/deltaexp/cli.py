"""Command-line front end (``deltaexp``).

Exit codes: 0 when every verdict passes, 1 on a verification failure,
2 on usage, parse or precondition errors.
"""
import argparse
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict, fields
from fractions import Fraction
import json
import os
import re
import sys

from . import __version__
from .deltachar import build_psi, pdiv_test
from .ellcurve import (EllipticCurve, builtin_curves, find_good_primes, fixture_primes, load_curves,
                       rational_torsion)
from .errors import DeltaExpError, ParseError
from .padic import is_prime
from .reciprocity import IDENTITIES, finiteness_bound, run_identity

ENV_PREFIX = "DELTAEXP_"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class Config:
    precision: int = 6
    trunc: int = 200
    point_cap: int = 10 ** 5
    psi_cap: int = 500
    curves: str = ""
    format: str = "json"
    jobs: int = 1

    def validate(self):
        if self.precision < 3:
            raise ParseError("precision must be >= 3")
        for name in ("trunc", "point_cap", "psi_cap", "jobs"):
            if getattr(self, name) < 1:
                raise ParseError(f"{name} must be positive")
        if self.format not in ("json", "table"):
            raise ParseError("format must be json or table")
        return self


def _coerce_field(name, value):
    typ = {f.name: f.type for f in fields(Config)}[name]
    if typ in (int, "int"):
        try:
            return int(value)
        except ValueError:
            raise ParseError(f"{name} expects an integer, got {value!r}") from None
    return str(value)


def read_config_file(path):
    """Simple ``key = value`` lines; '#' starts a comment."""
    out = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from None
    known = {f.name for f in fields(Config)}
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in known:
            raise ParseError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = _coerce_field(key, value)
    return out


def resolve_config(args, environ=None):
    """Defaults < config file < environment < flags."""
    environ = os.environ if environ is None else environ
    values = asdict(Config())
    cfg_path = getattr(args, "config", None) or environ.get(ENV_PREFIX + "CONFIG")
    if cfg_path:
        values.update(read_config_file(cfg_path))
    for f in fields(Config):
        env = environ.get(ENV_PREFIX + f.name.upper())
        if env is not None:
            values[f.name] = _coerce_field(f.name, env)
    for f in fields(Config):
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
    return Config(**values).validate()


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------

def curve_table(cfg):
    if cfg.curves:
        try:
            return load_curves(cfg.curves)
        except OSError as exc:
            raise ParseError(f"cannot read curve file: {exc}") from None
    return builtin_curves()


def parse_curve(text, table):
    if text in table:
        return table[text]
    parts = [s.strip() for s in text.split(",")]
    if len(parts) == 2:
        try:
            a4, a6 = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"cannot parse curve {text!r}") from None
        return EllipticCurve(a4, a6)
    raise ParseError(f"unknown curve {text!r} (give a table label or 'a4,a6')")


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*\s*)?(\(\s*[^()]+?\s*,\s*[^()]+?\s*\)|G\d+|O)\s*")


def parse_combination(expr, curve):
    """'m1*P1 + m2*P2 ...' with P = (x,y), Gk (k-th recorded generator) or O."""
    pos, terms = 0, []
    expr = expr.strip()
    if not expr:
        raise ParseError("empty point expression")
    while pos < len(expr):
        m = _TERM.match(expr, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse point expression at {expr[pos:]!r}")
        sign, mult, pt = m.groups()
        if terms and sign is None:
            raise ParseError("terms must be joined by + or -")
        k = int(mult) if mult else 1
        if sign == "-":
            k = -k
        if pt == "O":
            P = curve.zero()
        elif pt.startswith("G"):
            i = int(pt[1:])
            if not 1 <= i <= len(curve.generators):
                raise ParseError(f"{pt}: curve has {len(curve.generators)} recorded generators")
            P = curve.generators[i - 1]
        else:
            xs, ys = (s.strip() for s in pt.strip("() ").split(","))
            try:
                P = curve.point(Fraction(xs), Fraction(ys))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc)) from None
        terms.append((P, k))
        pos = m.end()
    return terms


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _point_json(P):
    return "O" if P.is_zero() else [str(P.x), str(P.y)]


def cmd_curve_info(args, cfg):
    E = parse_curve(args.curve, curve_table(cfg))
    tors = rational_torsion(E)
    row = {"curve": E.label, "a4": E.a4, "a6": E.a6, "discriminant": str(E.disc), "j": str(E.j),
           "cm": {"disc": E.cm_disc, "order_conductor": E.cm_conductor} if E.has_cm else None,
           "conductor": E.conductor(), "torsion_order": len(tors),
           "torsion": [{"point": _point_json(P), "order": n} for P, n in tors],
           "generators": [_point_json(G) for G in E.generators]}
    return [row], EXIT_OK


def cmd_primes(args, cfg):
    E = parse_curve(args.curve, curve_table(cfg))
    lo, hi = args.range
    if hi > cfg.point_cap:
        raise ParseError(f"range end {hi} exceeds point-count cap {cfg.point_cap}")
    try:
        found = find_good_primes(E, lo, hi, tuple(args.filter or ()))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    rows = [dict(curve=E.label, **c.as_dict()) for c in found]
    return rows, EXIT_OK


def cmd_psi(args, cfg):
    E = parse_curve(args.curve, curve_table(cfg))
    if args.p > cfg.psi_cap:
        raise ParseError(f"p = {args.p} exceeds the psi cap {cfg.psi_cap}")
    terms = parse_combination(args.points, E)
    psi = build_psi(E, args.p, cfg.precision)
    res = pdiv_test(psi, terms)
    row = {"curve": E.label, "p": args.p, "mode": psi.mode, "precision": cfg.precision - 1,
           "expression": args.points}
    row.update(res.as_dict())
    return [row], EXIT_OK


def _verify_job(job):
    label, a4, a6, p, identity, M, trunc, mutate = job
    E = EllipticCurve(a4, a6, label=label)
    return run_identity(identity, E, p, M=M, N_trunc=trunc, mutate=mutate).as_dict(timing=True)


def cmd_verify(args, cfg):
    table = curve_table(cfg)
    names = args.identity or ["all"]
    idents = []
    for n in names:
        for part in n.split(","):
            part = part.strip()
            if part == "all":
                idents.extend(IDENTITIES)
            elif part in IDENTITIES:
                idents.append(part)
            else:
                raise ParseError(f"unknown identity {part!r}; choose from {', '.join(IDENTITIES)} or all")
    idents = list(dict.fromkeys(idents))
    curves = [parse_curve(c, table) for c in args.curve] if args.curve else list(table.values())
    jobs = []
    for E in curves:
        primes = args.p or fixture_primes(E)
        for p in primes:
            if not is_prime(p) or p < 5:
                raise ParseError(f"{p} is not a prime >= 5")
            for ident in idents:
                jobs.append((E.label, E.a4, E.a6, p, ident, cfg.precision, cfg.trunc, args.mutate_ap))
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_verify_job, jobs))
    else:
        rows = [_verify_job(j) for j in jobs]
    rows.sort(key=lambda r: (r["curve"], r["p"], IDENTITIES.index(r["identity"])))
    if not args.timing:
        for r in rows:
            r.pop("millis", None)
    status = EXIT_OK if all(r["verdict"] == "pass" for r in rows) else EXIT_FAIL
    return rows, status


def cmd_bound(args, cfg):
    inputs, bound = finiteness_bound(args.N, args.p, args.r)
    row = inputs.as_dict()
    row["bound"] = str(bound)
    return [row], EXIT_OK


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def render(rows, fmt, out):
    if fmt == "json":
        for r in rows:
            out.write(json.dumps(r, sort_keys=True) + "\n")
        return
    if not rows:
        out.write("(no rows)\n")
        return
    cols = list(rows[0].keys())
    for r in rows[1:]:
        for k in r:
            if k not in cols:
                cols.append(k)
    cell = lambda v: json.dumps(v) if isinstance(v, (list, dict)) else ("" if v is None else str(v))
    table = [[cell(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(t[i]) for t in table)) for i, c in enumerate(cols)]
    out.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
    out.write("  ".join("-" * w for w in widths) + "\n")
    for t in table:
        out.write("  ".join(v.ljust(w) for v, w in zip(t, widths)).rstrip() + "\n")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

_NEGATIVE = re.compile(r"^-\d+$|^-\d*\.\d+$|^-?\d+,\s*-?\d+$")


def build_parser():
    # SUPPRESS keeps a subcommand from overwriting an option given before it
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--precision", type=int, help="working p-adic precision M (>= 3)")
    common.add_argument("--trunc", type=int, help="q-truncation for q-series identities")
    common.add_argument("--format", choices=("json", "table"), help="output format")
    common.add_argument("--jobs", type=int, help="worker processes for verify")
    common.add_argument("--curves", metavar="FILE", help="curve CSV replacing the built-in table")
    common.add_argument("--config", metavar="FILE", help="key = value config file")

    parser = argparse.ArgumentParser(prog="deltaexp", parents=[common],
                                     description="delta-characters, reciprocity expansions and bounds")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve-info", parents=[common], help="discriminant, j, CM, torsion")
    p.add_argument("curve", help="table label or 'a4,a6'")
    p.set_defaults(func=cmd_curve_info)

    p = sub.add_parser("primes", parents=[common], help="classify primes in a range")
    p.add_argument("curve")
    p.add_argument("--range", nargs=2, type=int, metavar=("LO", "HI"), default=(5, 100))
    p.add_argument("--filter", action="append", metavar="FLAG",
                   help="ordinary, supersingular, anomalous, non-anomalous, CL, not-CL, good, bad")
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("psi", parents=[common], help="psi of a point combination and the p-divisibility verdict")
    p.add_argument("curve")
    p.add_argument("p", type=int)
    p.add_argument("points", help="e.g. '2*G1 + (0,108)' or '5*(3,5)'")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("verify", parents=[common], help="run identity verifiers")
    p.add_argument("--curve", action="append", help="curve label or a4,a6 (repeatable; default: whole table)")
    p.add_argument("-p", type=int, action="append", help="prime (repeatable; default: fixture primes)")
    p.add_argument("--identity", action="append",
                   help=f"{', '.join(IDENTITIES)} or all (repeatable or comma separated)")
    p.add_argument("--mutate-ap", action="store_true", help="negative control: perturb every a_l")
    p.add_argument("--timing", action="store_true", help="include wall-clock millis in reports")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", parents=[common], help="finiteness bound for level N")
    p.add_argument("N", type=int)
    p.add_argument("p", type=int)
    p.add_argument("r", type=int)
    p.set_defaults(func=cmd_bound)

    for prs in [parser] + list(sub.choices.values()):
        prs._negative_number_matcher = _NEGATIVE
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = resolve_config(args)
        rows, status = args.func(args, cfg)
    except (DeltaExpError, ValueError) as exc:
        err.write(f"deltaexp: error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    render(rows, cfg.format, out)
    return status


if __name__ == "__main__":
    sys.exit(main())
