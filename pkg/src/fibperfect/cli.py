"""Command-line front end.

Every subcommand builds a list of result records and wraps them in one
report envelope, printed either as text or as a single JSON document.
Large integers are always written as decimal strings in JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from dataclasses import asdict, dataclass

from fibperfect import contfrac_pell, fperfect, markov, sigma3_div
from fibperfect.arith_core import DEFAULT_MR_ROUNDS, fib, is_fibonacci, lucas, proper_power_sum
from fibperfect.errors import DomainError, FactorizationBudgetExceeded

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3

THREADS_ENV = "FIBPERFECT_THREADS"


@dataclass(frozen=True)
class RunConfig:
    limit: int = 10**6
    mr_rounds: int = DEFAULT_MR_ROUNDS
    threads: int = 1
    output_format: str = "text"
    seed: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["limit"] = str(self.limit)
        return d


@dataclass
class Report:
    command: str
    results: list
    completeness: str  # "certified" | "up-to-limit"
    analysis: dict | None = None


def natural(text: str) -> int:
    """Parse a non-negative integer; accepts ``10^7``, ``1e7`` and plain digits."""
    s = text.strip().replace("_", "")
    m = re.fullmatch(r"(\d+)\^(\d+)", s)
    if m:
        value = int(m[1]) ** int(m[2])
    else:
        m = re.fullmatch(r"(\d+)[eE](\d+)", s)
        if m:
            value = int(m[1]) * 10 ** int(m[2])
        elif s.isdigit():
            value = int(s)
        else:
            raise argparse.ArgumentTypeError(f"not a non-negative integer: {text!r}")
    return value


def positive(text: str) -> int:
    value = natural(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--limit", type=natural, default=argparse.SUPPRESS,
                        help="scan limit (default 10^6)")
    common.add_argument("--mr-rounds", type=positive, default=argparse.SUPPRESS,
                        help=f"probabilistic primality rounds (default {DEFAULT_MR_ROUNDS})")
    common.add_argument("--threads", type=positive, default=argparse.SUPPRESS,
                        help=f"worker processes (default ${THREADS_ENV} or 1)")
    common.add_argument("--format", dest="output_format", choices=("text", "json"),
                        default=argparse.SUPPRESS)
    common.add_argument("--json", dest="output_format", action="store_const", const="json",
                        default=argparse.SUPPRESS, help="same as --format json")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="random seed; 0 selects the fixed default")
    common.add_argument("--no-timing", action="store_true", default=argparse.SUPPRESS,
                        help="report elapsed_ms as 0 (byte-stable output)")

    parser = argparse.ArgumentParser(prog="fibperfect", parents=[common],
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", parents=[common],
                       help="solve sigma_a(n) - n^a = b n up to a limit")
    p.add_argument("--b", type=positive, required=True)
    p.add_argument("--a", type=positive, default=2)

    p = sub.add_parser("verify", parents=[common], help="F-perfect and sigma_3 verdicts for n")
    p.add_argument("n", type=positive)

    p = sub.add_parser("certify", parents=[common],
                       help="F-perfect certificates from Fibonacci prime pairs")
    p.add_argument("--max-k", type=positive, required=True)

    p = sub.add_parser("cf", parents=[common], help="continued fraction of sqrt(N)")
    p.add_argument("N", type=natural)

    p = sub.add_parser("pell", parents=[common], help="negative Pell equations")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--neg", type=natural, metavar="N", help="x^2 - N y^2 = -1")
    g.add_argument("--neg4", type=natural, metavar="D", help="x^2 - D y^2 = -4")

    p = sub.add_parser("markov", parents=[common], help="solutions of 1 + x^2 + y^2 = kxy")
    p.add_argument("--k", type=positive, required=True)
    p.add_argument("--bound", type=positive, default=10**4)
    p.add_argument("--certify", action="store_true",
                   help="prove there are no solutions (k != 3)")

    p = sub.add_parser("sigma3", parents=[common], help="n | sigma_3(n) scans")
    s3 = p.add_subparsers(dest="action", required=True)
    scan = s3.add_parser("scan", parents=[common])
    scan.add_argument("--shape", choices=("semiprime", "2powp", "conjecture"), required=True)
    scan.add_argument("--count", choices=("distinct", "multiplicity"), default="distinct",
                      help="reading of 'two prime factors' for --shape conjecture")

    p = sub.add_parser("fib", parents=[common], help="Fibonacci queries")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--index", type=natural, metavar="I", help="print F_I and L_I")
    g.add_argument("--is", dest="is_value", type=positive, metavar="X",
                   help="test whether X is a Fibonacci number")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        limit=getattr(args, "limit", 10**6),
        mr_rounds=getattr(args, "mr_rounds", DEFAULT_MR_ROUNDS),
        threads=getattr(args, "threads", _default_threads()),
        output_format=getattr(args, "output_format", "text"),
        seed=getattr(args, "seed", 0),
    )


def cmd_search(args, cfg: RunConfig) -> Report:
    if args.a == 2:
        records = fperfect.search_eq1(args.b, cfg.limit)
        bound = fperfect.theorem1_bound(args.b)
        cutoff = bound.certified_cutoff
        complete = cutoff is not None and cfg.limit >= cutoff
        analysis = bound.to_dict()
    elif args.a >= 3:
        records = fperfect.search_eq2(args.a, args.b, cfg.limit)
        cutoff = fperfect.eq2_cutoff(args.b)
        complete = cfg.limit >= cutoff
        analysis = {"b": args.b, "certified_cutoff": str(cutoff)}
    else:
        raise DomainError("--a must be >= 2")
    return Report(
        "search",
        [r.to_dict() for r in records],
        "certified" if complete else "up-to-limit",
        analysis,
    )


def cmd_verify(args, cfg: RunConfig) -> Report:
    n = args.n
    record = {
        "n": str(n),
        "f_perfect": fperfect.is_f_perfect(n),
        "proper_square_sum": str(proper_power_sum(2, n)),
        "sigma3": sigma3_div.classify_sigma3(n).to_dict() if n >= 2 else None,
    }
    return Report("verify", [record], "certified")


def cmd_certify(args, cfg: RunConfig) -> Report:
    certs = fperfect.generate_certificates(args.max_k, cfg.mr_rounds, cfg.seed, cfg.threads)
    return Report("certify", [c.to_dict() for c in certs], "up-to-limit",
                  {"max_k": args.max_k})


def cmd_cf(args, cfg: RunConfig) -> Report:
    return Report("cf", [contfrac_pell.sqrt_cf(args.N).to_dict()], "certified")


def cmd_pell(args, cfg: RunConfig) -> Report:
    if args.neg is not None:
        N = args.neg
        solvable = contfrac_pell.neg_pell_solvable(N)
        sol = contfrac_pell.neg_pell_fundamental(N) if solvable else None
        record = {
            "N": str(N),
            "c": -1,
            "period_length": contfrac_pell.period_length(N),
            "solvable": solvable,
            "solution": sol.to_dict() if sol else None,
        }
    else:
        d = args.neg4
        solvable = contfrac_pell.neg4_solvable(d)
        small = contfrac_pell.neg4_scan(d, 10**5) if solvable else None
        mapped = None
        if small is not None and small.x % 2:
            mapped = contfrac_pell.neg4_to_neg1(d, small)
        record = {
            "N": str(d),
            "c": -4,
            "period_length": contfrac_pell.period_length(d),
            "solvable": solvable,
            "solution": small.to_dict() if small else None,
            "mapped_to_neg1": mapped.to_dict() if mapped else None,
        }
    return Report("pell", [record], "certified")


def cmd_markov(args, cfg: RunConfig) -> Report:
    if args.certify:
        rep = markov.verify_no_solutions(args.k, args.bound)
        return Report("markov", [rep.to_dict()],
                      "certified" if rep.certified else "up-to-limit")
    pairs = markov.brute_solutions(args.k, args.bound)
    return Report("markov", [p.to_dict() for p in pairs], "up-to-limit",
                  {"k": args.k, "bound": str(args.bound)})


def cmd_sigma3(args, cfg: RunConfig) -> Report:
    if args.shape == "semiprime":
        results = [{"n": str(n)} for n in sigma3_div.scan_semiprimes(cfg.limit)]
    elif args.shape == "2powp":
        results = [v.to_dict() for v in sigma3_div.scan_two_power_times_prime(cfg.limit)]
    else:
        report = sigma3_div.conjecture_scan(cfg.limit, args.count)
        return Report("sigma3", report.counterexamples, "up-to-limit", report.to_dict())
    return Report("sigma3", results, "up-to-limit", {"shape": args.shape})


def cmd_fib(args, cfg: RunConfig) -> Report:
    if args.index is not None:
        i = args.index
        record = {"index": i, "fib": str(fib(i)), "lucas": str(lucas(i))}
    else:
        idx = is_fibonacci(args.is_value)
        record = {"x": str(args.is_value), "is_fibonacci": idx is not None, "index": idx}
    return Report("fib", [record], "certified")


COMMANDS = {
    "search": cmd_search,
    "verify": cmd_verify,
    "certify": cmd_certify,
    "cf": cmd_cf,
    "pell": cmd_pell,
    "markov": cmd_markov,
    "sigma3": cmd_sigma3,
    "fib": cmd_fib,
}


def envelope(report: Report, cfg: RunConfig, elapsed_ms: int) -> dict:
    doc = {
        "command": report.command,
        "config": cfg.to_dict(),
        "results": report.results,
        "elapsed_ms": elapsed_ms,
        "completeness": report.completeness,
    }
    if report.analysis is not None:
        doc["analysis"] = report.analysis
    return doc


def _render_text(doc: dict) -> str:
    lines = [f"{doc['command']}: {len(doc['results'])} result(s), "
             f"completeness={doc['completeness']}, {doc['elapsed_ms']} ms"]
    for r in doc["results"]:
        lines.append("  " + ", ".join(f"{k}={_text_value(v)}" for k, v in r.items()))
    if doc.get("analysis"):
        lines.append("  analysis: " + ", ".join(
            f"{k}={_text_value(v)}" for k, v in doc["analysis"].items()))
    return "\n".join(lines)


def _text_value(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    cfg = _config(args)
    start = time.perf_counter()
    try:
        report = COMMANDS[args.command](args, cfg)
    except (DomainError, FactorizationBudgetExceeded) as exc:
        print(f"fibperfect: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    elapsed = 0 if getattr(args, "no_timing", False) else round(
        (time.perf_counter() - start) * 1000)
    doc = envelope(report, cfg, elapsed)
    if cfg.output_format == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(_render_text(doc) + "\n")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
