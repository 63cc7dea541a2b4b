"""Square roots, cube roots and radical solutions of quadratics and cubics.

Root extraction follows the Tonelli-Shanks / Adleman-Manders-Miller shape:
one exponentiation plus a discrete logarithm in the r-Sylow subgroup of
F_q^*, using a generator derived from a supplied r-th power non-residue.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional

from .arith import (
    FieldSpec,
    Fp2Element,
    construct_field,
    first_nonresidue,
    is_rth_residue,
    valuation,
)
from .errors import NotANonResidue, NotInSubgroup


@dataclass(frozen=True)
class SylowContext:
    """Generator data for the r-Sylow subgroup H_r of F_q^*.

    ``s = r**e`` is the exact r-part of q - 1 and ``m = (q - 1) / s``.
    """

    field: FieldSpec
    r: int
    e: int
    s: int
    m: int
    gamma: Fp2Element

    @property
    def root_of_unity(self) -> Fp2Element:
        """gamma**(s/r), a primitive r-th root of unity."""
        return self.gamma ** (self.s // self.r)


def sylow_context(field: FieldSpec, r: int, nonresidue: Fp2Element) -> SylowContext:
    nonresidue = field.lift(nonresidue)
    q1 = field.q - 1
    if nonresidue.is_zero() or is_rth_residue(nonresidue, r):
        raise NotANonResidue(f"{nonresidue} is an {r}-th power in F_{field.q}")
    e = valuation(q1, r)
    s = r**e
    m = q1 // s
    gamma = nonresidue**m
    if not (gamma**s).is_one() or (gamma ** (s // r)).is_one():
        raise AssertionError("Sylow generator failed its order check")
    return SylowContext(field, r, e, s, m, gamma)


@lru_cache(maxsize=256)
def default_context(field: FieldSpec, r: int) -> Optional[SylowContext]:
    """Context from the deterministic non-residue search; None if r does not divide q - 1."""
    if (field.q - 1) % r:
        return None
    return sylow_context(field, r, first_nonresidue(field, r))


def sylow_dlog(ctx: SylowContext, h: Fp2Element) -> int:
    """x in [0, s) with gamma**x == h, found one base-r digit at a time."""
    r, e = ctx.r, ctx.e
    if not (h**ctx.s).is_one():
        raise NotInSubgroup(f"{h} is not in the {r}-Sylow subgroup")
    if e == 0:
        return 0
    zeta = ctx.root_of_unity
    zeta_pows = [zeta**d for d in range(r)]
    ginv = ctx.gamma.inverse()
    # ginv_pows[i] = gamma^(-r^i)
    ginv_pows = [ginv]
    for _ in range(e - 1):
        ginv_pows.append(ginv_pows[-1] ** r)
    x = 0
    cur = h
    for i in range(e):
        t = cur
        for _ in range(e - 1 - i):
            t = t**r
        for d in range(r):
            if t == zeta_pows[d]:
                break
        else:
            raise NotInSubgroup(f"digit {i} of dlog not found")
        if d:
            x += d * r**i
            cur = cur * ginv_pows[i] ** d
    return x


def _rth_root_any(x: Fp2Element, ctx: SylowContext) -> Optional[Fp2Element]:
    # y0 = x^a with r*a = 1 mod m gives y0^r = x * B, B in H_r
    r, m = ctx.r, ctx.m
    a = pow(r, -1, m) if m > 1 else 0
    y0 = x**a
    B = y0**r / x
    K = sylow_dlog(ctx, B)
    if K % r:
        return None
    return y0 * ctx.gamma ** ((-(K // r)) % ctx.s)


def sqrt(x: Fp2Element, ctx2: SylowContext) -> Optional[Fp2Element]:
    """Canonically smaller square root of x, or None for a non-square."""
    x = ctx2.field.lift(x)
    if x.is_zero():
        return x
    y = _rth_root_any(x, ctx2)
    if y is None:
        return None
    return min(y, -y)


def rth_root(x: Fp2Element, ctx: SylowContext) -> Optional[Fp2Element]:
    """Canonically smallest r-th root of x, or None if x is not an r-th power."""
    x = ctx.field.lift(x)
    if x.is_zero():
        return x
    y = _rth_root_any(x, ctx)
    if y is None:
        return None
    zeta = ctx.root_of_unity
    roots = [y]
    for _ in range(ctx.r - 1):
        roots.append(roots[-1] * zeta)
    return min(roots)


def _unique_cube_root(x: Fp2Element) -> Fp2Element:
    # only valid when 3 does not divide q - 1, so cubing is a bijection
    q1 = x.field.q - 1
    return x ** pow(3, -1, q1)


def solve_quadratic(b: Fp2Element, c: Fp2Element, ctx2: SylowContext) -> List[Fp2Element]:
    """Roots of X^2 + bX + c in F_q with multiplicity, sorted."""
    field = ctx2.field
    b, c = field.lift(b), field.lift(c)
    disc = b.square() - 4 * c
    half = field(pow(2, -1, field.p))
    if disc.is_zero():
        r = -b * half
        return [r, r]
    d = sqrt(disc, ctx2)
    if d is None:
        return []
    return sorted([(-b + d) * half, (-b - d) * half])


def _cubic_value(a2, a1, a0, x):
    return ((x + a2) * x + a1) * x + a0


def solve_cubic(
    a2: Fp2Element,
    a1: Fp2Element,
    a0: Fp2Element,
    ctx2: SylowContext,
    ctx3: Optional[SylowContext] = None,
) -> List[Fp2Element]:
    """Roots of X^3 + a2 X^2 + a1 X + a0 in F_q with multiplicity, sorted.

    Cardano on the depressed cubic; ``ctx3`` may be None only when 3 does
    not divide q - 1.  Every candidate is checked by evaluation.
    """
    field = ctx2.field
    a2, a1, a0 = field.lift(a2), field.lift(a1), field.lift(a0)
    three_divides = (field.q - 1) % 3 == 0
    if three_divides and ctx3 is None:
        raise ValueError("cube roots of unity exist in F_q; a cubic context is required")
    inv3 = field(pow(3, -1, field.p))
    shift = a2 * inv3
    P = a1 - a2 * shift
    Q = 2 * shift.square() * shift - a1 * shift + a0

    ys: List[Fp2Element]
    if P.is_zero():
        if Q.is_zero():
            ys = [field.zero] * 3
        elif three_divides:
            u = rth_root(-Q, ctx3)
            ys = [] if u is None else _times_unity(u, ctx3)
        else:
            ys = [_unique_cube_root(-Q)]
    else:
        disc = Q.square() + 4 * P.square() * P * field(pow(27, -1, field.p))
        if disc.is_zero():
            y1 = 3 * Q / P
            y2 = -y1 * field(pow(2, -1, field.p))
            ys = [y1, y2, y2]
        else:
            d = sqrt(disc, ctx2)
            if d is not None:
                U = (-Q + d) * field(pow(2, -1, field.p))
                if three_divides:
                    u = rth_root(U, ctx3)
                    us = [] if u is None else _times_unity(u, ctx3)
                else:
                    us = [_unique_cube_root(U)]
                ys = [w - P * inv3 / w for w in us]
            elif three_divides:
                ys = _rational_roots_by_gcd(field, P, Q)
            else:
                ys = _roots_via_extension(field, P, Q, ctx2)

    roots = [y - shift for y in ys]
    roots = [x for x in roots if _cubic_value(a2, a1, a0, x).is_zero()]
    return sorted(roots)


def _times_unity(u: Fp2Element, ctx3: SylowContext) -> List[Fp2Element]:
    w = ctx3.root_of_unity
    return [u, u * w, u * w.square()]


def _rational_roots_by_gcd(field: FieldSpec, P: Fp2Element, Q: Fp2Element) -> List[Fp2Element]:
    # distinct roots of y^3 + Py + Q lying in F_q: gcd with y^q - y
    from .poly import UniPoly, gcd, x_pow_mod

    f = UniPoly(field, [Q, P, field.zero, field.one])
    g = gcd(f, x_pow_mod(f, field.q) - UniPoly.x(field))
    if g.degree == 1:
        return [-g.coeffs[0]]
    if g.degree <= 0:
        return []
    raise AssertionError(f"unexpected rational part of degree {g.degree}")


def _roots_via_extension(
    field: FieldSpec, P: Fp2Element, Q: Fp2Element, ctx2: SylowContext
) -> List[Fp2Element]:
    # q = p = 2 mod 3 with a non-square Cardano discriminant: the cubic has
    # square discriminant, so it either splits over F_p or has no root.
    # Cardano needs F_{p^2}; gamma of the 2-Sylow context is a non-square.
    ext = construct_field(field.p, ctx2.gamma.c0)
    ectx2 = default_context(ext, 2)
    ectx3 = default_context(ext, 3)
    roots = solve_cubic(ext.zero, ext(P.c0), ext(Q.c0), ectx2, ectx3)
    return [field(r.c0) for r in roots if r.in_base_field()]
