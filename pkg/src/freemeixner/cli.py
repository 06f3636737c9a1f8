"""Command line front end.

    python -m freemeixner moments --catalog semicircular --d 2 --degree 4 --format csv
    python -m freemeixner verify --catalog simple-quadratic-d3 --c 1 --degree 6
    python -m freemeixner verify --random 20 --seed 7 --degree 6
    python -m freemeixner cumulants --file data.json --degree 3
    python -m freemeixner density --b 1 --c 0 --t 1

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors,
3 when the input data violates an invariant.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from fractions import Fraction

from . import catalog
from .fock import (DataError, MeixnerData, enumerate_words, fock_cumulant_table, fock_moment_table,
                   growth_constant, nc0_cumulant_sum, random_meixner_data, word_value)
from .meixner import Report, boxplus_fock_table, mops_from_data, tracial_conditions, verify_meixner
from .moments import boxplus_power, cumulants_to_moments, is_tracial, moments_to_cumulants
from .scalars import fmt, q, word_key, words_upto

DEFAULT_CAPS = {"verify": 6, "moments": 8, "cumulants": 8, "mops": 6}


class UsageError(Exception):
    pass


def _cap(command: str) -> int:
    env = os.environ.get("FMK_DEGREE_CAP")
    return int(env) if env else DEFAULT_CAPS.get(command, 8)


def _fracs(text):
    if text is None:
        return None
    try:
        return [q(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad rational list {text!r}: {exc}") from None


def _scalar(text):
    if text is None:
        return None
    try:
        return q(text)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad rational {text!r}: {exc}") from None


def load_source(args):
    """MeixnerData, MultinomialModel or MomentFunctional named by the arguments."""
    given = [x for x in (args.catalog, args.file, args.json) if x]
    if len(given) != 1:
        raise UsageError("give exactly one of --catalog, --file, --json")
    if args.catalog:
        if args.catalog not in catalog.NAMES:
            raise UsageError(f"unknown catalog entry {args.catalog!r}; choose from {', '.join(catalog.NAMES)}")
        b, p = _fracs(args.b), _fracs(args.p)
        if b is not None and len(b) != args.d:
            raise UsageError(f"--b needs {args.d} entries")
        return catalog.get(args.catalog, d=args.d, c=_scalar(args.c), b=b, t=_scalar(args.t), p=p,
                           N=args.degree)
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(str(exc)) from None
    else:
        text = args.json
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None
    return MeixnerData.from_json(raw)


# -- output -----------------------------------------------------------------------

def _table_out(table, fmt_name: str, out):
    if fmt_name == "csv":
        out.write(table.to_csv())
    else:
        out.write(json.dumps(table.to_json(), indent=2, sort_keys=True) + "\n")


def _report_out(rep: Report, out):
    out.write(rep.dumps() + "\n")


# -- commands ------------------------------------------------------------------------

def cmd_moments(args, out):
    src = load_source(args)
    N = args.degree
    t = _scalar(args.t)
    if isinstance(src, MeixnerData):
        table = boxplus_fock_table(src, t, N) if t is not None else fock_moment_table(src, N)
    elif isinstance(src, catalog.MultinomialModel):
        table = src.moment_table(N)
    else:
        table = src.truncate(N)
    _table_out(table, args.format, out)
    return 0


def cmd_cumulants(args, out):
    src = load_source(args)
    N = args.degree
    if isinstance(src, MeixnerData):
        table = fock_cumulant_table(src, N)
    elif isinstance(src, catalog.MultinomialModel):
        table = moments_to_cumulants(src.moment_table(N))
    else:
        table = moments_to_cumulants(src.truncate(N))
    _table_out(table, args.format, out)
    return 0


def cmd_mops(args, out):
    src = load_source(args)
    if not isinstance(src, MeixnerData):
        raise UsageError("mops needs Fock data (not the multinomial entries)")
    fam = mops_from_data(src, args.degree)
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["multi_index", "polynomial"])
        for u in words_upto(src.d, args.degree):
            w.writerow([word_key(u), str(fam[u])])
    else:
        out.write(json.dumps(fam.to_json(), indent=2, sort_keys=True) + "\n")
    return 0


def verify_data(data: MeixnerData, degree: int) -> Report:
    """Cumulant, word and Meixner-characterization oracles for one datum."""
    rep = Report()
    m = fock_moment_table(data, degree)
    r = fock_cumulant_table(data, degree)
    rep.add(f"moments = cumulants_to_moments(operator cumulants) to degree {degree}",
            cumulants_to_moments(r) == m)
    bad = None
    for u in words_upto(data.d, degree):
        if len(u) >= 1 and nc0_cumulant_sum(data, u, lambda w: r[w]) != m[u]:
            bad = word_key(u)
            break
    rep.add("moments = NC_0 sum of operator cumulants", bad is None, bad)
    bad = None
    for u in words_upto(data.d, degree):
        if u and sum((word_value(data, W) for W in enumerate_words(u)), Fraction(0)) != m[u]:
            bad = word_key(u)
            break
    rep.add("moments = sum of word values", bad is None, bad)
    g = growth_constant(data)
    bad = next((word_key(u) for u, v in m.values.items() if u and abs(v) >= (16 * g) ** len(u)), None)
    rep.add("growth bound", bad is None, bad)
    N = max(1, degree // 2)
    rep.extend(verify_meixner(data, N, gf_degree=min(4, degree - 2) if data.d <= 2 and degree >= 3 else None,
                              vector_degree=min(4, degree), pde_degree=min(4, degree - 2) if degree >= 3 else 1))
    for t in (Fraction(3, 2), Fraction(2)):
        scaled = boxplus_power(m, t)
        rep.add(f"convolution power t={fmt(t)}: operator = cumulant scaling",
                boxplus_fock_table(data, t, degree) == scaled)
    tc = tracial_conditions(data, length=degree, moments=m)
    rep.add("traciality verdicts consistent", tc.checks[-1].passed)
    rep.extra["tracial"] = tc.extra["tracial"]
    return rep


def verify_multinomial(model, degree: int) -> Report:
    rep = Report()
    bad = None
    for u in words_upto(model.d, degree):
        if not u:
            continue
        want = model.p[u[0] - 1] if len(set(u)) == 1 else Fraction(0)
        if model.moment(u) != want:
            bad = word_key(u)
            break
    rep.add(f"phi[Y_u] formula to degree {degree}", bad is None, bad)
    for k, v in model.kernel_checks().items():
        rep.add(k + " (mod gram kernel)", v)
    res = catalog.multinomial_pde_residual(model, min(4, degree))
    bad = next((k for k, v in res.items() if v), None)
    rep.add("multinomial PDE residual zero", bad is None, bad)
    return rep


def cmd_verify(args, out):
    degree = args.degree
    rep = Report()
    if args.random:
        rng = random.Random(args.seed)
        for k in range(args.random):
            d = rng.randint(1, 3)
            data = random_meixner_data(rng, d)
            rep.extend(verify_data(data, degree), f"random[{k}] d={d}: ")
    else:
        src = load_source(args)
        if isinstance(src, MeixnerData):
            rep = verify_data(src, degree)
        elif isinstance(src, catalog.MultinomialModel):
            rep = verify_multinomial(src, degree)
        else:
            rep.add(f"tracial to degree {src.max_degree}", is_tracial(src))
    _report_out(rep, out)
    return 0 if rep.passed else 1


def cmd_catalog(args, out):
    if not args.catalog:
        out.write("\n".join(catalog.NAMES) + "\n")
        return 0
    src = load_source(args)
    if isinstance(src, MeixnerData):
        out.write(json.dumps(src.to_json(), indent=2, sort_keys=True) + "\n")
    elif isinstance(src, catalog.MultinomialModel):
        out.write(json.dumps({"p": [fmt(x) for x in src.p],
                              "gram": [[fmt(x) for x in row] for row in src.gram]}, indent=2) + "\n")
    else:
        _table_out(src, args.format, out)
    return 0


def cmd_density(args, out):
    b, c, t = (float(_scalar(x) or 0) for x in (args.b, args.c, args.t or "1"))
    if args.points:
        lo, hi = catalog._support(b, c, t)
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["x", "density"])
        n = args.points
        for k in range(n + 1):
            x = lo + (hi - lo) * k / n
            try:
                y = catalog.one_dim_density(b, c, t, x)
            except ZeroDivisionError:
                y = float("inf")
            w.writerow([repr(x), repr(y)])
        return 0
    res = catalog.density_check(_scalar(args.b or "0"), _scalar(args.c or "0"), _scalar(args.t or "1"))
    out.write(json.dumps(res, indent=2, sort_keys=True) + "\n")
    return 1 if res["status"] == "mismatch" else 0


COMMANDS = {
    "moments": cmd_moments,
    "cumulants": cmd_cumulants,
    "mops": cmd_mops,
    "verify": cmd_verify,
    "catalog": cmd_catalog,
    "density": cmd_density,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="freemeixner", description="Exact computations for free Meixner states.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--catalog", help="catalog entry name")
    ap.add_argument("--file", help="MeixnerData JSON file")
    ap.add_argument("--json", help="inline MeixnerData JSON")
    ap.add_argument("--d", type=int, default=2, help="dimension for catalog entries")
    ap.add_argument("--degree", type=int, default=None)
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--random", type=int, default=0, help="verify this many seeded random data")
    ap.add_argument("--c", help="rational C parameter")
    ap.add_argument("--b", help="comma-separated rationals")
    ap.add_argument("--t", help="convolution power / variance parameter")
    ap.add_argument("--p", help="comma-separated multinomial weights")
    ap.add_argument("--points", type=int, default=0, help="density: emit this many grid intervals")
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.d < 1:
        ap.error("--d must be positive")
    if args.degree is None:
        args.degree = 6 if args.command == "verify" else 4
    if args.degree < 1 or args.degree > _cap(args.command):
        ap.error(f"--degree must lie in 1..{_cap(args.command)} for {args.command} (FMK_DEGREE_CAP overrides)")
    buf = io.StringIO()
    try:
        code = COMMANDS[args.command](args, buf)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"invalid data: {exc}", file=sys.stderr)
        return 3
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
