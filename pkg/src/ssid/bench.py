"""Timing harness: methods x field x class, CSV rows."""

from __future__ import annotations

import random
import statistics
import sys
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from .classify import (
    ClassifierConfig,
    Verdict,
    identify,
    identify_fp_shortcut,
    modpoly_primes,
    monte_carlo,
    prove_modpoly,
)
from .curve import Curve, j_invariant
from .errors import ExcludedJInvariant, FileMissing
from .gen import random_ordinary_curve, random_supersingular_curve, random_supersingular_prime
from .modpoly import ModpolyDatabase

CSV_HEADER = "bits,field,class,method,count,mean_ms,median_ms"
METHODS = ("volcano", "shortcut", "mc", "modpoly")
DEFAULT_METHODS = ("volcano", "shortcut", "mc")


def instance_rng(seed: int, *labels) -> random.Random:
    """Independent stream per (master seed, instance labels)."""
    return random.Random(":".join(str(x) for x in (seed,) + labels))


def run_method(method: str, E: Curve, seed: int, db: Optional[ModpolyDatabase] = None) -> Optional[Verdict]:
    cfg = ClassifierConfig(seed=seed)
    if method == "volcano":
        return identify(E, cfg)
    if method == "shortcut":
        if E.field.degree != 1:
            return None
        return identify_fp_shortcut(E, cfg)
    if method == "mc":
        return monte_carlo(E, cfg)
    if method == "modpoly":
        try:
            return prove_modpoly(j_invariant(E), db)
        except ExcludedJInvariant:
            return None
    raise ValueError(f"unknown method {method!r}")


@dataclass
class Sample:
    bits: int
    field: str
    klass: str
    method: str
    ms: float
    verdict: Verdict


def make_instances(bits: int, count: int, seed: int) -> List[Dict[str, Curve]]:
    out = []
    for index in range(count):
        rng = instance_rng(seed, bits, index)
        p = random_supersingular_prime(bits, rng)
        out.append(
            {
                ("p", "ordinary"): random_ordinary_curve(p, rng, prime_field=True),
                ("p2", "ordinary"): random_ordinary_curve(p, rng),
                ("p", "supersingular"): random_supersingular_curve(p, rng, prime_field=True),
                ("p2", "supersingular"): random_supersingular_curve(p, rng),
            }
        )
    return out


def time_call(fn: Callable[[], object]):
    t0 = time.perf_counter()
    value = fn()
    return value, (time.perf_counter() - t0) * 1000.0


def run_bench(bits_list, count: int, methods=DEFAULT_METHODS, seed: int = 0, db=None, log=sys.stderr):
    samples: List[Sample] = []
    db = db or ModpolyDatabase()
    skipped = set()
    if "modpoly" in methods and bits_list:
        missing = [ell for ell in modpoly_primes(2 ** max(bits_list)) if not db.has(ell)]
        if missing:
            print(f"skipping modpoly: no data for ell in {missing} "
                  f"(set SSID_MODPOLY_DIR)", file=log)
            skipped.add("modpoly")
    for bits in bits_list:
        for index, inst in enumerate(make_instances(bits, count, seed)):
            for (fld, klass), E in inst.items():
                for method in methods:
                    if method in skipped:
                        continue
                    try:
                        verdict, ms = time_call(lambda: run_method(method, E, index, db))
                    except FileMissing as exc:
                        print(f"skipping {method}: {exc}", file=log)
                        skipped.add(method)
                        continue
                    if verdict is not None:
                        samples.append(Sample(bits, fld, klass, method, ms, verdict))
    return samples


def summarize(samples: List[Sample]) -> List[str]:
    groups: Dict[tuple, List[float]] = {}
    for s in samples:
        groups.setdefault((s.bits, s.field, s.klass, s.method), []).append(s.ms)
    rows = [CSV_HEADER]
    order = {m: i for i, m in enumerate(METHODS)}
    for key in sorted(groups, key=lambda k: (k[0], k[1], k[2], order[k[3]])):
        ms = groups[key]
        bits, fld, klass, method = key
        rows.append(
            f"{bits},{fld},{klass},{method},{len(ms)},"
            f"{statistics.fmean(ms):.3f},{statistics.median(ms):.3f}"
        )
    return rows
