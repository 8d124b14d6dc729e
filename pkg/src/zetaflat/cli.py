"""Batch front end: evaluate objects, run verification suites over
(index, fence, prime) grids, and emit telescoping transcripts.

Exit codes are a stable contract: 0 all pass, 1 some check failed,
2 usage or parse problem, 3 a configured cap was exceeded.  Reports
stream one line per instance (text or JSON); convergence tables can be
dumped as CSV.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .connected_sum import (
    connected_sum,
    connector,
    telescope,
    transport_weight_down_check,
    transport_weight_up_check,
)
from .errors import CapExceededError
from .finite_padic import (
    PADIC_FIXTURES,
    SEKI_FIXTURES,
    antipode_duality_check,
    hoffman_duality_check,
    hoffman_identity_check,
    load_thresholds,
    padic_duality_check,
    primes_in,
    seki_lifting_check,
)
from .index_algebra import (
    Index,
    format_index,
    indices_up_to_weight,
    parse_index,
)
from .mzv_real import (
    duality_convergence,
    log2_discretization_check,
    riemann_sum,
    zeta_flat,
    zeta_star_trunc,
    zeta_trunc,
)
from .reports import VerificationReport, decimal_str, fraction_str, make_report

VERIFY_SUITES = ("main", "transport", "telescope", "duality-r", "duality-a",
                 "antipode", "hoffman-identity", "padic", "seki", "log2")

CONVERGENCE_INDICES = ((3,), (1, 2), (2, 2), (1, 1, 2))


@dataclass(frozen=True)
class Caps:
    weight: int = 8
    upper: int = 4096
    prime: int = 199
    exponent: int = 3

    def check_weight(self, k):
        if k.weight > self.weight:
            raise CapExceededError(
                f"index weight {k.weight} exceeds cap {self.weight}")

    def check_upper(self, n):
        if n > self.upper:
            raise CapExceededError(f"fence {n} exceeds cap {self.upper}")

    def check_prime(self, p):
        if p > self.prime:
            raise CapExceededError(f"prime {p} exceeds cap {self.prime}")

    def check_exponent(self, n):
        if n > self.exponent:
            raise CapExceededError(f"exponent {n} exceeds cap {self.exponent}")


def parse_range(text):
    """'3..199' -> (3, 199); '13' -> (13, 13)."""
    lo, sep, hi = text.partition("..")
    try:
        if sep:
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise ValueError(f"bad range {text!r}, expected LO..HI") from None


def parse_side(text):
    """Index argument for a connected sum; '-' or '' is the empty side."""
    if text in ("-", ""):
        return Index()
    return parse_index(text)


def add_cap_flags(ap):
    ap.add_argument("--cap-weight", type=int, default=Caps.weight,
                    help="largest allowed index weight")
    ap.add_argument("--cap-upper", type=int, default=Caps.upper,
                    help="largest allowed fence N")
    ap.add_argument("--cap-prime", type=int, default=Caps.prime,
                    help="largest allowed prime")
    ap.add_argument("--cap-exponent", type=int, default=Caps.exponent,
                    help="largest allowed lifting exponent")


def caps_of(args):
    return Caps(weight=args.cap_weight, upper=args.cap_upper,
                prime=args.cap_prime, exponent=args.cap_exponent)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="zetaflat",
        description="exact arithmetic for truncated multiple zeta sums, "
                    "their reflected block forms, and duality congruences")
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one object exactly")
    evsub = ev.add_subparsers(dest="object", required=True)
    for name in ("zeta", "zeta-star", "zeta-flat", "riemann"):
        p = evsub.add_parser(name)
        p.add_argument("--index", required=True)
        p.add_argument("--upper", type=int, required=True)
        p.add_argument("--method", choices=("dp", "enum"), default="dp")
        p.add_argument("--decimal", type=int, default=None, metavar="PLACES")
        add_cap_flags(p)
    p = evsub.add_parser("connector")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--decimal", type=int, default=None, metavar="PLACES")
    add_cap_flags(p)
    p = evsub.add_parser("Z")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--left", default="-")
    p.add_argument("--right", default="-")
    p.add_argument("--decimal", type=int, default=None, metavar="PLACES")
    add_cap_flags(p)

    vf = sub.add_parser("verify", help="run a verification suite over a grid")
    vf.add_argument("suite", choices=VERIFY_SUITES)
    vf.add_argument("--max-weight", type=int, default=4)
    vf.add_argument("--max-upper", type=int, default=20)
    vf.add_argument("--primes", default="3..199", metavar="LO..HI")
    vf.add_argument("--n-values", default="1,2,3",
                    help="lifting exponents for padic/seki")
    vf.add_argument("--index", action="append", default=None,
                    help="restrict duality-r to these indices (repeatable)")
    vf.add_argument("--powers", default="4..12", metavar="LO..HI",
                    help="duality-r fences are 2^LO .. 2^HI")
    vf.add_argument("--method", choices=("dp", "enum"), default="dp")
    vf.add_argument("--json", action="store_true")
    vf.add_argument("--csv", action="store_true",
                    help="convergence table (duality-r with one --index)")
    vf.add_argument("--jobs", type=int, default=1)
    add_cap_flags(vf)

    tr = sub.add_parser("trace", help="print one telescoping transcript")
    tr.add_argument("--index", required=True)
    tr.add_argument("--N", type=int, required=True)
    tr.add_argument("--json", action="store_true")
    add_cap_flags(tr)
    return ap


def cmd_eval(args):
    caps = caps_of(args)
    if args.object == "connector":
        caps.check_upper(args.N)
        value = connector(args.N, args.n, args.m)
    elif args.object == "Z":
        caps.check_upper(args.N)
        left = parse_side(args.left)
        right = parse_side(args.right)
        caps.check_weight(left)
        caps.check_weight(right)
        value = connected_sum(args.N, left, right)
    else:
        k = parse_index(args.index)
        caps.check_weight(k)
        caps.check_upper(args.upper)
        fn = {"zeta": zeta_trunc, "zeta-star": zeta_star_trunc,
              "zeta-flat": zeta_flat, "riemann": riemann_sum}[args.object]
        value = fn(k, args.upper, method=args.method)
    out = fraction_str(value)
    if args.decimal is not None:
        out += "  " + decimal_str(value, args.decimal)
    print(out)
    return 0


def _telescope_report(k, upper):
    started = time.perf_counter()
    trace = telescope(k, upper)
    first = trace.stages[0].value
    last = trace.stages[-1].value
    passed = (trace.all_equal
              and first == zeta_trunc(k, upper + 1)
              and last == zeta_flat(k, upper + 1))
    return VerificationReport(
        check_id="telescope",
        inputs={"k": format_index(k), "N": str(upper)},
        lhs=fraction_str(first),
        rhs=fraction_str(last) if passed else "stages diverge",
        passed=passed,
        elapsed=time.perf_counter() - started,
        notes={"stages": len(trace.stages)},
    )


def _transport_sweep_report(which, upper):
    started = time.perf_counter()
    bad = []
    if which == 1:
        for m in range(1, upper + 1):
            for n in range(1, m + 1):
                if not transport_weight_down_check(upper, n, m).passed:
                    bad.append((n, m))
    else:
        for m in range(1, upper + 1):
            for n in range(0, m):
                if not transport_weight_up_check(upper, n, m).passed:
                    bad.append((n, m))
    return make_report(f"transport{which}", {"N": upper}, bad, [], started)


def _duality_r_report(k, lo, hi):
    started = time.perf_counter()
    rows = duality_convergence(k, [2 ** j for j in range(lo, hi + 1)])
    diffs = [r.diff for r in rows]
    decs = [r.decimal for r in rows]
    if all(d == 0 for d in diffs):
        passed = True
        want = decs
    else:
        passed = all(b < a for a, b in zip(diffs, diffs[1:]))
        ordered = sorted(set(diffs), reverse=True)
        want = [decimal_str(d) for d in ordered]
    lhs = "; ".join(decs)
    rhs = "; ".join(want)
    return VerificationReport(
        check_id="duality-r",
        inputs={"k": format_index(k), "N": f"2^{lo}..2^{hi}"},
        lhs=lhs,
        rhs=rhs,
        passed=passed and lhs == rhs,
        elapsed=time.perf_counter() - started,
    )


def _main_identity_report(k, upper, method):
    started = time.perf_counter()
    return make_report("main", {"k": format_index(k), "N": upper},
                       zeta_trunc(k, upper, method),
                       zeta_flat(k, upper, method), started)


def _missing_fixture_report(check_id, k, n):
    return VerificationReport(
        check_id=check_id,
        inputs={"k": format_index(k), "n": str(n)},
        lhs="no pinned threshold",
        rhs="fixtures record",
        passed=False,
        elapsed=0.0,
    )


def verify_tasks(args, caps):
    """The ordered instance list for one suite: (callable, kwargs) pairs."""
    suite = args.suite
    tasks = []
    if suite in ("main", "telescope", "hoffman-identity"):
        caps.check_weight(Index((args.max_weight,)))
        caps.check_upper(args.max_upper)
        for k in indices_up_to_weight(args.max_weight):
            if not k:
                continue
            for n in range(1, args.max_upper + 1):
                if suite == "main":
                    tasks.append((_main_identity_report,
                                  {"k": k, "upper": n, "method": args.method}))
                elif suite == "telescope":
                    tasks.append((_telescope_report, {"k": k, "upper": n}))
                else:
                    tasks.append((hoffman_identity_check,
                                  {"k": k, "upper": n}))
    elif suite == "transport":
        caps.check_upper(args.max_upper)
        for n in range(1, args.max_upper + 1):
            tasks.append((_transport_sweep_report, {"which": 1, "upper": n}))
            tasks.append((_transport_sweep_report, {"which": 2, "upper": n}))
    elif suite == "duality-r":
        lo, hi = parse_range(args.powers)
        caps.check_upper(2 ** hi)
        if args.index:
            indices = [parse_index(t) for t in args.index]
        else:
            indices = [Index(t) for t in CONVERGENCE_INDICES]
        for k in indices:
            caps.check_weight(k)
            tasks.append((_duality_r_report, {"k": k, "lo": lo, "hi": hi}))
    elif suite in ("duality-a", "antipode"):
        caps.check_weight(Index((args.max_weight,)))
        lo, hi = parse_range(args.primes)
        caps.check_prime(hi)
        check = (hoffman_duality_check if suite == "duality-a"
                 else antipode_duality_check)
        for k in indices_up_to_weight(args.max_weight):
            if not k:
                continue
            for p in primes_in(max(lo, 3), hi):
                tasks.append((check, {"k": k, "p": p}))
    elif suite in ("padic", "seki"):
        caps.check_weight(Index((args.max_weight,)))
        lo, hi = parse_range(args.primes)
        caps.check_prime(hi)
        n_values = sorted({int(t) for t in args.n_values.split(",")})
        check = padic_duality_check if suite == "padic" else seki_lifting_check
        fixtures = None
        for n in n_values:
            caps.check_exponent(n)
            if n >= 2 and fixtures is None:
                fixtures = load_thresholds(
                    PADIC_FIXTURES if suite == "padic" else SEKI_FIXTURES)
        for k in indices_up_to_weight(args.max_weight):
            if not k:
                continue
            for n in n_values:
                if n == 1:
                    floor = max(lo, 3)
                else:
                    pinned = fixtures.get((k, n))
                    if pinned is None:
                        tasks.append((_missing_fixture_report,
                                      {"check_id": check.__name__
                                       .replace("_check", "")
                                       .replace("_", "-"),
                                       "k": k, "n": n}))
                        continue
                    floor = max(lo, pinned)
                for p in primes_in(floor, hi):
                    tasks.append((check, {"k": k, "p": p, "n": n}))
    elif suite == "log2":
        caps.check_upper(args.max_upper)
        for n in range(1, args.max_upper + 1):
            tasks.append((log2_discretization_check, {"upper": n}))
    return tasks


def _call(task):
    fn, kwargs = task
    return fn(**kwargs)


def cmd_verify(args):
    caps = caps_of(args)
    if args.csv and (args.suite != "duality-r" or not args.index
                     or len(args.index) != 1):
        raise ValueError("--csv needs suite duality-r with exactly one --index")
    tasks = verify_tasks(args, caps)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_call, tasks))
    else:
        reports = [_call(t) for t in tasks]

    if args.csv:
        lo, hi = parse_range(args.powers)
        rows = duality_convergence(parse_index(args.index[0]),
                                   [2 ** j for j in range(lo, hi + 1)])
        print("N,diff_num,diff_den,diff_decimal")
        for row in rows:
            print(f"{row.upper},{row.diff.numerator},"
                  f"{row.diff.denominator},{row.decimal}")
    elif args.json:
        for r in reports:
            print(json.dumps(r.to_json_dict()))
    else:
        for r in reports:
            print(r.line())
    good = sum(1 for r in reports if r.passed)
    verdict = "PASS" if good == len(reports) else "FAIL"
    summary = f"{verdict} {good}/{len(reports)}"
    if args.json or args.csv:
        print(summary, file=sys.stderr)
    else:
        print(summary)
    return 0 if good == len(reports) else 1


def cmd_trace(args):
    caps = caps_of(args)
    k = parse_index(args.index)
    caps.check_weight(k)
    caps.check_upper(args.N)
    trace = telescope(k, args.N)
    if args.json:
        print(trace.to_json())
    else:
        print(trace.to_text())
    return 0 if trace.all_equal else 1


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "eval":
        return cmd_eval(args)
    if args.command == "verify":
        return cmd_verify(args)
    return cmd_trace(args)


def entry(argv=None):
    try:
        # Exact values at large fences have numerators far beyond the
        # default int-to-str conversion limit.
        sys.set_int_max_str_digits(1_000_000)
    except AttributeError:
        pass
    try:
        return main(argv)
    except CapExceededError as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return 3
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(entry())
