"""Random primes and random ordinary / supersingular curves."""

from __future__ import annotations

import math
from typing import List, Optional

from .arith import FieldSpec, Fp2Element, is_probable_prime, smallest_quadratic_extension
from .classify import ClassifierConfig, identify
from .curve import Curve, curve_from_j
from .modpoly import instantiate, phi2
from .roots import default_context, solve_cubic


class UnsupportedPrime(ValueError):
    """p = 1 mod 12 has no supersingular j in {0, 1728}; CM construction is out of scope."""


def random_prime(bits: int, rng, residue: Optional[int] = None, modulus: int = 1) -> int:
    """Uniform-ish prime with exactly ``bits`` bits, optionally p = residue mod modulus."""
    if bits < 3:
        raise ValueError("need at least 3 bits")
    while True:
        n = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if residue is not None and n % modulus != residue % modulus:
            n += (residue - n) % modulus
            if n.bit_length() != bits or n % 2 == 0:
                continue
        if n > 3 and is_probable_prime(n):
            return n


def random_supersingular_prime(bits: int, rng) -> int:
    """Prime with p != 1 mod 12, so 0 or 1728 seeds the supersingular walk."""
    while True:
        p = random_prime(bits, rng)
        if p % 12 != 1:
            return p


def supersingular_start(p: int) -> int:
    if p % 4 == 3:
        return 1728 % p
    if p % 3 == 2:
        return 0
    raise UnsupportedPrime(
        f"p={p} = 1 mod 12: no supersingular j in {{0, 1728}}; "
        "starting points need the CM method, which is not implemented"
    )


def walk_steps(p: int) -> int:
    return 2 * math.ceil(math.log2(p))


def _neighbors(j: Fp2Element) -> List[Fp2Element]:
    field = j.field
    c = instantiate(phi2(), j).coeffs
    return solve_cubic(c[2], c[1], c[0], default_context(field, 2), default_context(field, 3))


def random_supersingular_j(
    p: int,
    rng,
    steps: Optional[int] = None,
    prime_field: bool = False,
    field: Optional[FieldSpec] = None,
) -> Fp2Element:
    """Endpoint of a random non-backtracking walk on the supersingular 2-isogeny graph.

    With ``prime_field`` only F_p-rational neighbours are used, so the result
    lies in F_p (backtracking is allowed when it is the only way on).
    """
    K = field or smallest_quadratic_extension(p)
    cur = K(supersingular_start(p))
    prev = None
    for _ in range(walk_steps(p) if steps is None else steps):
        roots = _neighbors(cur)
        if len(roots) != 3:
            raise AssertionError(f"supersingular vertex {cur} has {len(roots)} neighbours")
        options = list(roots)
        if prev is not None:
            options.remove(prev)
        if prime_field:
            options = [r for r in options if r.in_base_field()] or [
                r for r in roots if r.in_base_field()
            ]
        nxt = options[rng.randrange(len(options))]
        prev, cur = cur, nxt
    return cur


def random_supersingular_curve(p: int, rng, prime_field: bool = False, steps=None) -> Curve:
    j = random_supersingular_j(p, rng, steps=steps, prime_field=prime_field)
    if prime_field:
        return curve_from_j(FieldSpec(p), j.c0)
    return curve_from_j(j.field, j)


def random_ordinary_curve(p: int, rng, prime_field: bool = False) -> Curve:
    field = FieldSpec(p) if prime_field else smallest_quadratic_extension(p)
    cfg = ClassifierConfig.deterministic_for(smallest_quadratic_extension(p))
    while True:
        E = curve_from_j(field, field.random_element(rng))
        if not identify(E, cfg).is_supersingular:
            return E
