"""Command-line entry point: ``ssid classify|gen|graph|bench|selftest``."""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import List, Optional

from .arith import FieldSpec, construct_field, first_nonresidue, smallest_quadratic_extension
from .classify import DETERMINISTIC, LAS_VEGAS, METHODS, ClassifierConfig, classify
from .curve import Curve
from .errors import InvariantViolation, SsidError
from .gen import UnsupportedPrime, random_ordinary_curve, random_supersingular_curve

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit integer")
    return value


def _int_list(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ssid", description="Supersingular elliptic curve identification.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify y^2 = x^3 + Ax + B")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--alpha", type=int, help="t^2 = alpha defines F_{p^2}; omit for F_p")
    c.add_argument("--A", required=True, help="c0[,c1]")
    c.add_argument("--B", required=True, help="c0[,c1]")
    c.add_argument("--method", choices=METHODS, default="auto")
    c.add_argument("--mode", choices=("det", "lv"), default="lv")
    c.add_argument("--qnr", help="quadratic non-residue of F_{p^2} (det mode)")
    c.add_argument("--cnr", help="cubic non-residue of F_{p^2} (det mode)")
    c.add_argument("--seed", type=_u64, default=0)
    c.add_argument("--mc-reps", type=int, default=2)

    g = sub.add_parser("gen", help="emit a random curve as 'p[;alpha] A B'")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--type", choices=("supersingular", "ordinary"), required=True)
    g.add_argument("--seed", type=_u64, default=0)
    g.add_argument("--prime-field", action="store_true", help="curve over F_p instead of F_{p^2}")

    gr = sub.add_parser("graph", help="export G_ell(F_q) at desk scale")
    gr.add_argument("--p", type=int, required=True)
    gr.add_argument("--ext", action="store_true", help="use F_{p^2} instead of F_p")
    gr.add_argument("--ell", type=int, required=True)
    gr.add_argument("--format", choices=("dot", "json", "csv"), default="dot")

    b = sub.add_parser("bench", help="time each method, CSV on stdout")
    b.add_argument("--bits", type=_int_list, required=True, help="comma-separated bit sizes")
    b.add_argument("--count", type=int, required=True)
    b.add_argument("--methods", default="volcano,shortcut,mc")
    b.add_argument("--seed", type=_u64, default=0)
    b.add_argument("--records", help="also write per-instance verdicts (JSON lines) here")

    s = sub.add_parser("selftest", help="oracle equivalence and volcano structure")
    s.add_argument("--max-p", type=int, default=100)
    return ap


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def cmd_classify(args) -> int:
    field = construct_field(args.p, args.alpha)
    E = Curve(field, field.parse(args.A), field.parse(args.B))
    ext = field if field.degree == 2 else smallest_quadratic_extension(args.p)
    if args.mode == "det":
        qnr = ext.parse(args.qnr) if args.qnr else first_nonresidue(ext, 2)
        cnr = ext.parse(args.cnr) if args.cnr else first_nonresidue(ext, 3)
        cfg = ClassifierConfig(DETERMINISTIC, qnr, cnr, args.seed, args.mc_reps)
    else:
        cfg = ClassifierConfig(LAS_VEGAS, seed=args.seed, mc_repetitions=args.mc_reps)
    t0 = time.perf_counter()
    verdict = classify(E, args.method, cfg)
    ms = (time.perf_counter() - t0) * 1000.0
    _emit({
        "command": "classify",
        "curve": str(E),
        "mode": args.mode,
        "seed": args.seed,
        "verdict": verdict.to_dict(),
        "result": verdict.result,
        "method": verdict.method,
        "timing_ms": round(ms, 3),
    })
    return EXIT_OK


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    construct_field(args.p)
    if args.type == "supersingular":
        E = random_supersingular_curve(args.p, rng, prime_field=args.prime_field)
    else:
        E = random_ordinary_curve(args.p, rng, prime_field=args.prime_field)
    sys.stdout.write(f"{E}\n")
    return EXIT_OK


def cmd_graph(args) -> int:
    from .volcano import build_graph

    field = smallest_quadratic_extension(args.p) if args.ext else construct_field(args.p)
    G = build_graph(field, args.ell)
    sys.stdout.write({"dot": G.to_dot, "json": G.to_json, "csv": G.to_csv}[args.format]())
    return EXIT_OK


def cmd_bench(args) -> int:
    from .bench import METHODS as BENCH_METHODS, run_bench, summarize

    methods = [m for m in args.methods.split(",") if m]
    unknown = [m for m in methods if m not in BENCH_METHODS]
    if unknown:
        raise ValueError(f"unknown bench methods {unknown}; choose from {list(BENCH_METHODS)}")
    samples = run_bench(args.bits, args.count, methods, args.seed)
    sys.stdout.write("\n".join(summarize(samples)) + "\n")
    if args.records:
        with open(args.records, "w", encoding="utf-8") as fh:
            for s in samples:
                rec = {"bits": s.bits, "field": s.field, "class": s.klass, "method": s.method}
                rec["verdict"] = s.verdict.to_dict()
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import oracle_equivalence, volcano_structure

    max_ext = min(13, args.max_p)
    bad = oracle_equivalence(args.max_p, max_ext)
    print(f"oracle equivalence (p < {args.max_p}, F_p^2 for p <= {max_ext}): {len(bad)} mismatches",
          file=sys.stderr)
    checked, vbad = volcano_structure(args.max_p)
    print(f"volcano structure (q <= {args.max_p}): {checked} components, {len(vbad)} violations",
          file=sys.stderr)
    for line in (bad + vbad)[:20]:
        print("  " + line, file=sys.stderr)
    ok = not bad and not vbad
    _emit({"command": "selftest", "max_p": args.max_p, "mismatches": len(bad),
           "components": checked, "violations": len(vbad), "ok": ok})
    return EXIT_OK if ok else EXIT_INPUT


COMMANDS = {
    "classify": cmd_classify,
    "gen": cmd_gen,
    "graph": cmd_graph,
    "bench": cmd_bench,
    "selftest": cmd_selftest,
}


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except (InvariantViolation, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (SsidError, UnsupportedPrime, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
