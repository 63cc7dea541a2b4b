"""Exhaustive cross-checks shared by the CLI selftest and the test suite."""

from __future__ import annotations

import math
from typing import Iterator, List, Tuple

from .arith import FieldSpec, is_probable_prime, smallest_quadratic_extension
from .classify import (
    ClassifierConfig,
    identify,
    identify_fp_shortcut,
    oracle_hasse,
    prove_modpoly,
)
from .curve import curve_from_j
from .volcano import build_graph, profile_component, verify_paths, verify_volcano


def primes_between(lo: int, hi: int) -> List[int]:
    """Primes p with lo < p < hi."""
    return [p for p in range(lo + 1, hi) if is_probable_prime(p)]


def equivalence_cases(max_p: int = 200, max_p_ext: int = 13) -> Iterator[Tuple[FieldSpec, object]]:
    """Every j in F_p for 3 < p < max_p and every j in F_{p^2} for 3 < p <= max_p_ext."""
    for p in primes_between(3, max_p):
        F = FieldSpec(p)
        for j in F.elements():
            yield F, j
    for p in primes_between(3, max_p_ext + 1):
        K = smallest_quadratic_extension(p)
        for j in K.elements():
            yield K, j


def oracle_equivalence(max_p: int = 200, max_p_ext: int = 13) -> List[str]:
    """Mismatches between the fast deciders and the Hasse oracle."""
    bad = []
    for field, j in equivalence_cases(max_p, max_p_ext):
        E = curve_from_j(field, j)
        truth = oracle_hasse(E)
        cfg = ClassifierConfig.deterministic_for(smallest_quadratic_extension(field.p))
        got = {"identify": identify(E, cfg).is_supersingular}
        if j.in_base_field():
            got["shortcut"] = identify_fp_shortcut(E, cfg).is_supersingular
        if not (j.is_zero() or j == 1728):
            got["modpoly"] = prove_modpoly(j).is_supersingular
        for name, value in got.items():
            if value != truth:
                bad.append(f"{name} q={field.q} j={j}: got {value}, oracle {truth}")
    return bad


def structure_fields(max_q: int = 2000) -> List[FieldSpec]:
    fields = [FieldSpec(p) for p in primes_between(3, max_q + 1)]
    fields += [
        smallest_quadratic_extension(p)
        for p in primes_between(3, math.isqrt(max_q) + 1)
    ]
    return fields


def volcano_structure(max_q: int = 2000, ells=(2, 3)) -> Tuple[int, List[str]]:
    """(ordinary components checked, violations) over every q <= max_q."""
    checked = 0
    bad = []
    for field in structure_fields(max_q):
        for ell in ells:
            if ell == field.p:
                continue
            G = build_graph(field, ell)
            for comp in G.components():
                if comp[0] in G.supersingular:
                    continue
                checked += 1
                rep = verify_volcano(G, profile_component(G, comp[0], comp))
                for clause, vertices in rep.failures().items():
                    bad.append(f"q={field.q} ell={ell} clause {clause} at {vertices[:5]}")
            paths = verify_paths(G)
            for vertex, why in paths.violations:
                bad.append(f"q={field.q} ell={ell} paths at {G.vertex(vertex)}: {why}")
    return checked, bad
