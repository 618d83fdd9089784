"""``sextic-sieve`` command line.

Exit codes: 0 success or agreement with the oracle, 1 disagreement or an
internal inconsistency, 2 usage or range error.  Machine formats (json, csv)
carry no timings and are byte-identical across reruns; ``--timing`` reports
elapsed time on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time
from functools import lru_cache

from . import closed_form, exclusion, sieve, verify
from .wheel import WidthError

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE = 0, 1, 2
JSON_SAFE = 2**53
BENCH_LADDER = (10**4, 10**5, 10**6)
CSV_HEADER = ["algorithm", "lo", "hi", "candidates", "marks", "primes"]


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    """Integer flag value; also accepts ``a^b`` and ``aeb`` shorthands."""
    t = text.strip().replace("_", "")
    m = re.fullmatch(r"(-?\d+)\^(\d+)", t)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    m = re.fullmatch(r"(\d+)[eE](\d+)", t)
    if m:
        return int(m.group(1)) * 10 ** int(m.group(2))
    try:
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _int_list(text: str) -> list[int]:
    return [_int(part) for part in text.split(",") if part.strip()]


def _j(v):
    """JSON-safe integers: decimal strings beyond the double-precision range."""
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v) if abs(v) > JSON_SAFE else v
    if isinstance(v, dict):
        return {k: _j(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_j(x) for x in v]
    return v


def _dump_json(obj) -> str:
    return json.dumps(_j(obj), indent=2, sort_keys=False) + "\n"


def _dump_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _witness_dict(w):
    return None if w is None else w.as_dict()


def verdict_record(v: exclusion.Verdict, oracle: str) -> dict:
    return {
        "engine": v.engine,
        "extension": v.extension,
        "m": v.params.m,
        "N": v.params.N,
        "P": v.P,
        "verdict": v.outcome,
        "witness": _witness_dict(v.witness),
        "bound": v.i_bound_used,
        "checks": v.checks_performed,
        "oracle": oracle,
        "agrees": oracle == v.outcome,
    }


_ENGINES = {"sound": "sound", "literal": "literal", "paper-literal": "literal"}


def cmd_check(args, out):
    if args.N < 1 or args.m < 1:
        raise UsageError(f"need N >= 1 and m >= 1, got N={args.N}, m={args.m}")
    engine = _ENGINES[args.engine]
    if engine == "sound":
        v = exclusion.theorem_verdict(args.N, args.m)
    else:
        v = exclusion.paper_literal_verdict(args.N, args.m)
    oracle = "prime" if verify.is_prime_ref(v.P) else "composite"
    rec = verdict_record(v, oracle)
    if args.format == "json":
        out.write(_dump_json(rec))
    elif args.format == "csv":
        w = v.witness
        out.write(_dump_csv(
            ["engine", "m", "N", "P", "verdict", "i", "a", "residue", "divisor",
             "cofactor", "bound", "checks", "oracle", "agrees"],
            [[v.engine, v.params.m, v.params.N, v.P, v.outcome,
              *((w.i, w.a, w.residue, w.divisor, w.cofactor) if w else ("",) * 5),
              v.i_bound_used, v.checks_performed, oracle,
              str(rec["agrees"]).lower()]]))
    else:
        tag = " (even-m extension)" if v.extension else ""
        out.write(f"P = 6^{v.params.m + 1} * {v.params.N} - 1 = {v.P}{tag}\n")
        out.write(f"{v.engine} engine: {v.outcome}\n")
        if v.witness:
            w = v.witness
            out.write(f"  witness i={w.i} a={w.a}: N = {w.residue} + {w.divisor}*{w.a}, "
                      f"P = {w.divisor} * {w.cofactor}\n")
        out.write(f"  bound {v.i_bound_used}, checks {v.checks_performed}\n")
        out.write(f"oracle: {oracle} ({'agrees' if rec['agrees'] else 'DISAGREES'})\n")
    return EXIT_OK if rec["agrees"] else EXIT_DISAGREE


def cmd_families(args, out):
    fams = closed_form.residue_families(args.A, args.B)
    count = max(0, args.count)
    rows = [{"q": f.q, "slope": f.slope, "intercept": f.intercept,
             "members": [f.member(p) for p in range(count)]} for f in fams]
    if args.format == "json":
        out.write(_dump_json({"A": args.A, "B": args.B, "families": rows}))
    elif args.format == "csv":
        out.write(_dump_csv(["q", "slope", "intercept", "members"],
                            [[r["q"], r["slope"], r["intercept"],
                              " ".join(map(str, r["members"]))] for r in rows]))
    else:
        out.write(f"i^2 mod ({args.A}i + {args.B}), i = {args.A}p + q:\n")
        for r in rows:
            tail = ", ".join(map(str, r["members"]))
            out.write(f"  q={r['q']}: {r['slope']}p + {r['intercept']}"
                      + (f"  ->  {tail}, ..." if tail else "") + "\n")
    return EXIT_OK


_ALGOS = {"wheel": sieve.wheel_sieve, "wheel6": sieve.wheel_sieve,
          "eratosthenes": sieve.eratosthenes}


def cmd_sieve(args, out):
    if args.lo < 1 or args.lo > args.hi:
        raise UsageError(f"need 1 <= lo <= hi, got lo={args.lo}, hi={args.hi}")
    rng = sieve.SieveRange(args.lo, args.hi)
    primes, stats = _ALGOS[args.algo](rng)
    if args.format == "json":
        rec = {"algorithm": stats.algorithm, "lo": rng.lo, "hi": rng.hi,
               "count": len(primes)}
        if not args.count_only:
            rec["primes"] = primes
        out.write(_dump_json(rec))
    elif args.format == "csv":
        if args.count_only:
            out.write(_dump_csv(CSV_HEADER, [stats.row(rng)]))
        else:
            out.write(_dump_csv(["prime"], [[p] for p in primes]))
    else:
        if args.count_only:
            out.write(f"{len(primes)}\n")
        else:
            out.write("".join(f"{p}\n" for p in primes))
    return EXIT_OK


def bench_ladder(hi: int) -> list[int]:
    steps = [h for h in BENCH_LADDER if h <= hi]
    return steps or [hi]


def cmd_bench(args, out):
    if args.hi < 1:
        raise UsageError(f"need hi >= 1, got {args.hi}")
    comps = [sieve.compare(sieve.SieveRange(1, h)) for h in bench_ladder(args.hi)]
    if args.format == "json":
        out.write(_dump_json([{
            "lo": c.range.lo, "hi": c.range.hi,
            "stats": [dict(zip(CSV_HEADER, s.row(c.range)))
                      for s in (c.wheel, c.eratosthenes)],
            "ratio": None if c.ratio is None else round(c.ratio, 6),
        } for c in comps]))
    elif args.format == "csv":
        out.write(_dump_csv(CSV_HEADER, [s.row(c.range) for c in comps
                                         for s in (c.wheel, c.eratosthenes)]))
    else:
        for c in comps:
            ratio = "undefined" if c.ratio is None else f"{c.ratio:.4f}"
            out.write(f"[{c.range.lo}, {c.range.hi}]: {c.wheel.primes_found} primes, "
                      f"marks wheel6={c.wheel.mark_operations} "
                      f"eratosthenes={c.eratosthenes.mark_operations} ratio={ratio}\n")
    if args.plot:
        from .figures import plot_bench
        plot_bench(comps, args.plot)
    return EXIT_OK


def _grid_guard(ms, n_hi):
    for m in ms:
        if m < 1:
            raise UsageError(f"m must be >= 1, got {m}")
        exclusion.TheoremParams(m, max(1, n_hi))  # raises WidthError


def disagreement_record(d: verify.Disagreement) -> dict:
    return {"m": d.m, "N": d.N, "P": d.P, "engine": d.engine,
            "extension": d.m % 2 == 0,
            "verdict": d.theorem_outcome, "oracle": d.oracle_outcome,
            "witness": _witness_dict(d.witness), "bound": d.bound,
            "checks": d.checks}


def cmd_search(args, out, err):
    engine = _ENGINES[args.engine]
    if args.lo < 1 or args.lo > args.hi:
        raise UsageError(f"need 1 <= from <= to, got {args.lo}..{args.hi}")
    _grid_guard(args.m, args.hi)
    report = verify.search_counterexamples(args.m, args.lo, args.hi, engine)
    recs = [disagreement_record(d) for d in report]
    if args.format == "csv":
        out.write(_dump_csv(["m", "N", "P", "engine", "verdict", "oracle", "bound",
                             "checks"],
                            [[r[k] for k in ("m", "N", "P", "engine", "verdict",
                                             "oracle", "bound", "checks")]
                             for r in recs]))
    else:
        out.write(_dump_json(recs))
    for m, N, why in report.skipped:
        err.write(f"skipped m={m} N={N}: {why}\n")
    if engine == "sound" and recs:
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_excluded(args, out):
    if args.m < 1 or args.max < 2:
        raise UsageError(f"need m >= 1 and max >= 2, got m={args.m}, max={args.max}")
    _grid_guard([args.m], args.max)
    items = list(exclusion.excluded_set_stream(args.m, args.max))
    if args.format == "json":
        out.write(_dump_json([{"N": N, "P": 6 ** (args.m + 1) * N - 1,
                               "extension": args.m % 2 == 0,
                               "witness": w.as_dict()} for N, w in items]))
    elif args.format == "csv":
        out.write(_dump_csv(["N", "P", "i", "a", "residue", "divisor", "cofactor"],
                            [[N, 6 ** (args.m + 1) * N - 1, w.i, w.a, w.residue,
                              w.divisor, w.cofactor] for N, w in items]))
    else:
        if args.m % 2 == 0:
            out.write(f"m={args.m} is the even-m extension\n")
        for N, w in items:
            out.write(f"N={N}: P={6 ** (args.m + 1) * N - 1} = {w.divisor} * {w.cofactor}"
                      f"  (i={w.i}, a={w.a})\n")
    return EXIT_OK


def cmd_audit(args, out):
    if args.m < 1 or args.m % 2 == 0:
        raise UsageError(f"the audit follows the published procedure, m must be odd, got {args.m}")
    if args.lo < 2 or args.lo > args.hi:
        raise UsageError(f"need 2 <= from <= to, got {args.lo}..{args.hi}")
    _grid_guard([args.m], args.hi)
    rows = exclusion.bound_audit(args.m, args.lo, args.hi)
    literal = verify.search_counterexamples([args.m], args.lo, args.hi, "literal")
    doc = {
        "m": args.m, "from": args.lo, "to": args.hi,
        "literal_disagreements": [disagreement_record(d) for d in literal],
        "literal_skipped": [N for _, N, _ in literal.skipped],
        "small_i_misses": [{
            "N": r.N, "P": r.P, "witness": r.sound_witness.as_dict(),
            "small_i_reach": r.literal_i_range, "paper_i_bound": r.paper_i_bound,
            "beyond_paper_count": r.beyond_paper_count,
        } for r in rows],
    }
    if args.format == "csv":
        out.write(_dump_csv(["N", "P", "i", "a", "divisor", "cofactor",
                             "small_i_reach", "paper_i_bound", "beyond_paper_count"],
                            [[r.N, r.P, r.sound_witness.i, r.sound_witness.a,
                              r.sound_witness.divisor, r.sound_witness.cofactor,
                              r.literal_i_range,
                              "" if r.paper_i_bound is None else r.paper_i_bound,
                              str(r.beyond_paper_count).lower()] for r in rows]))
    elif args.format == "json":
        out.write(_dump_json(doc))
    else:
        out.write(f"m={args.m}, N in [{args.lo}, {args.hi}]\n")
        out.write(f"literal engine disagreements: {len(doc['literal_disagreements'])}\n")
        out.write(f"small-i scan misses: {len(rows)}\n")
        for r in rows[:20]:
            w = r.sound_witness
            out.write(f"  N={r.N}: P={r.P} = {w.cofactor}*{w.divisor}, "
                      f"witness i={w.i} > reach {r.literal_i_range}\n")
    if args.plot:
        from .figures import plot_audit
        plot_audit(rows, args.plot)
    return EXIT_OK


@lru_cache(maxsize=1)
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sextic-sieve",
                                description="6^m primality checks and 6n+-1 sieving")
    p.add_argument("--timing", action="store_true", help="report elapsed time on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, default="text"):
        sp.add_argument("--format", choices=("text", "json", "csv"), default=default)

    sp = sub.add_parser("check", help="verdict for P = 6^(m+1)*N - 1")
    sp.add_argument("--N", type=_int, required=True)
    sp.add_argument("--m", type=_int, default=1)
    sp.add_argument("--engine", choices=sorted(_ENGINES), default="sound")
    fmt(sp)

    sp = sub.add_parser("families", help="residue families of i^2 mod (Ai+B)")
    sp.add_argument("--A", type=_int, default=6)
    sp.add_argument("--B", type=_int, default=1)
    sp.add_argument("--count", type=_int, default=5)
    fmt(sp)

    sp = sub.add_parser("sieve", help="primes in [lo, hi]")
    sp.add_argument("--lo", type=_int, default=1)
    sp.add_argument("--hi", type=_int, required=True)
    sp.add_argument("--algo", choices=sorted(_ALGOS), default="wheel")
    sp.add_argument("--count-only", action="store_true")
    fmt(sp)

    sp = sub.add_parser("bench", help="mark counts, wheel6 vs Eratosthenes")
    sp.add_argument("--hi", type=_int, default=10**6)
    sp.add_argument("--plot", metavar="FILE", help="also render a figure to FILE")
    fmt(sp, "csv")

    sp = sub.add_parser("search", help="grid cross-check against the oracle")
    sp.add_argument("--m", type=_int_list, default=[1])
    sp.add_argument("--from", dest="lo", type=_int, default=2)
    sp.add_argument("--to", dest="hi", type=_int, required=True)
    sp.add_argument("--engine", choices=sorted(_ENGINES), default="sound")
    fmt(sp, "json")

    sp = sub.add_parser("excluded", help="N whose P is composite, with witnesses")
    sp.add_argument("--m", type=_int, default=1)
    sp.add_argument("--max", type=_int, required=True)
    fmt(sp, "json")

    sp = sub.add_parser("audit", help="where the small-i scan misses a witness")
    sp.add_argument("--m", type=_int, default=1)
    sp.add_argument("--from", dest="lo", type=_int, default=2)
    sp.add_argument("--to", dest="hi", type=_int, default=1000)
    sp.add_argument("--plot", metavar="FILE")
    fmt(sp, "json")
    return p


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    t0 = time.perf_counter()
    try:
        if args.command == "check":
            code = cmd_check(args, out)
        elif args.command == "families":
            code = cmd_families(args, out)
        elif args.command == "sieve":
            code = cmd_sieve(args, out)
        elif args.command == "bench":
            code = cmd_bench(args, out)
        elif args.command == "search":
            code = cmd_search(args, out, err)
        elif args.command == "excluded":
            code = cmd_excluded(args, out)
        else:
            code = cmd_audit(args, out)
    except sieve.ConsistencyError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DISAGREE
    except (UsageError, WidthError, sieve.CapacityError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    if args.timing:
        err.write(f"elapsed {time.perf_counter() - t0:.3f}s\n")
    return code


def main_entry():  # pragma: no cover - console-script shim
    sys.exit(main())
