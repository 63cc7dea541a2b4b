"""Supersingularity deciders behind one verdict type.

* ``oracle_hasse`` / ``oracle_legendre``: exponential-time ground truth.
* ``monte_carlo``: random point times p +/- 1; can only prove ordinarity.
* ``prove_modpoly``: splitting of Phi_l(j, X) over F_{p^2} for primes l
  whose product exceeds 2p.
* ``identify``: three non-backtracking walks in G_2(F_{p^2}); an ordinary
  j-invariant always has a walk that falls off the floor of its volcano
  within floor(log2 p) + 2 steps, a supersingular one never does.
* ``identify_fp_shortcut``: for j in F_p, first walk G_2(F_p) to a vertex of
  F_p-degree 1 and then extend a single path out of F_p.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field as dc_field
from typing import List, Optional, Tuple

from .arith import (
    FieldSpec,
    Fp2Element,
    construct_field,
    find_nonresidue,
    first_nonresidue,
    is_probable_prime,
)
from .curve import Curve, j_invariant, random_point, scalar_mul
from .errors import (
    BadLambda,
    CharTooSmall,
    ExcludedJInvariant,
    FieldMismatch,
    MissingNonResidue,
    NotDefinedOverPrimeField,
    PrimeTooLargeForOracle,
)
from .modpoly import ModpolyDatabase, instantiate, phi2, splits_completely
from .roots import SylowContext, solve_cubic, solve_quadratic, sylow_context

ORDINARY = "ordinary"
SUPERSINGULAR = "supersingular"
PROBABLY_SUPERSINGULAR = "probably_supersingular"

DETERMINISTIC = "deterministic"
LAS_VEGAS = "las_vegas"

ORACLE_MAX_P = 2**20


@dataclass(frozen=True)
class Verdict:
    result: str
    method: str
    steps: int = 0
    terminated_at: str = "complete"
    seed: Optional[int] = None

    @property
    def is_supersingular(self) -> bool:
        return self.result == SUPERSINGULAR

    @property
    def is_ordinary(self) -> bool:
        return self.result == ORDINARY

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ClassifierConfig:
    mode: str = LAS_VEGAS
    quadratic_nonresidue: Optional[Fp2Element] = None
    cubic_nonresidue: Optional[Fp2Element] = None
    seed: int = 0
    mc_repetitions: int = 2

    def __post_init__(self):
        if self.mode not in (DETERMINISTIC, LAS_VEGAS):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == DETERMINISTIC and (
            self.quadratic_nonresidue is None or self.cubic_nonresidue is None
        ):
            raise MissingNonResidue("deterministic mode needs both non-residues")

    @classmethod
    def deterministic_for(cls, field: FieldSpec, **kw) -> "ClassifierConfig":
        """Deterministic config using the first non-residues of a degree-2 field."""
        if field.degree != 2:
            raise FieldMismatch("non-residues for the walk live in F_{p^2}")
        return cls(
            mode=DETERMINISTIC,
            quadratic_nonresidue=first_nonresidue(field, 2),
            cubic_nonresidue=first_nonresidue(field, 3),
            **kw,
        )


# --------------------------------------------------------------------------
# exponential-time oracles


def _check_oracle_size(p: int) -> None:
    if p > ORACLE_MAX_P:
        raise PrimeTooLargeForOracle(f"p={p} exceeds the oracle bound 2^20")


def _factorials_mod(n: int, p: int) -> Tuple[List[int], List[int]]:
    fact = [1] * (n + 1)
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i % p
    inv = [1] * (n + 1)
    inv[n] = pow(fact[n], -1, p)
    for i in range(n, 0, -1):
        inv[i - 1] = inv[i] * i % p
    return fact, inv


def hasse_coefficient(E: Curve) -> Fp2Element:
    """Coefficient of x^(p-1) in (x^3 + Ax + B)^((p-1)/2)."""
    field = E.field
    p = field.p
    _check_oracle_size(p)
    m = (p - 1) // 2
    fact, inv = _factorials_mod(m, p)
    total = field.zero
    # x^(3a) (Ax)^b B^c with a + b + c = m and 3a + b = p - 1
    for a in range(0, (p - 1) // 3 + 1):
        b = p - 1 - 3 * a
        c = m - a - b
        if b < 0 or c < 0:
            continue
        multinomial = fact[m] * inv[a] % p * inv[b] % p * inv[c] % p
        total = total + multinomial * (E.A**b) * (E.B**c)
    return total


def oracle_hasse(E: Curve) -> bool:
    return hasse_coefficient(E).is_zero()


def oracle_legendre(lam: Fp2Element) -> bool:
    """Supersingularity of y^2 = x(x-1)(x-lambda) via sum C(m,i)^2 lambda^i."""
    field = lam.field
    p = field.p
    _check_oracle_size(p)
    if lam.is_zero() or lam.is_one():
        raise BadLambda(f"lambda={lam} gives a singular curve")
    m = (p - 1) // 2
    fact, inv = _factorials_mod(m, p)
    acc = field.zero
    for i in range(m, -1, -1):
        binom = fact[m] * inv[i] % p * inv[m - i] % p
        acc = acc * lam + binom * binom
    return acc.is_zero()


def legendre_curve(lam: Fp2Element) -> Curve:
    """Short Weierstrass model of y^2 = x(x-1)(x-lambda)."""
    field = lam.field
    # x^3 + a x^2 + b x with a = -(1 + lambda), b = lambda, shifted by a/3
    a, b = -(1 + lam), lam
    inv3 = field(pow(3, -1, field.p))
    A = b - a.square() * inv3
    B = 2 * a.square() * a * field(pow(27, -1, field.p)) - a * b * inv3
    return Curve(field, A, B)


def footnote_rule(p: int, j: Fp2Element) -> Optional[bool]:
    """j = 0 is supersingular iff p != 1 mod 3, j = 1728 iff p != 1 mod 4."""
    if j.is_zero():
        return p % 3 != 1
    if j == 1728:
        return p % 4 != 1
    return None


def identify_small_characteristic(p: int, j_is_zero: bool) -> Verdict:
    """In characteristic 2 or 3 a curve is supersingular iff j = 0."""
    if p not in (2, 3):
        raise ValueError("only for p in {2, 3}")
    return Verdict(SUPERSINGULAR if j_is_zero else ORDINARY, "volcano", 0, "step2")


# --------------------------------------------------------------------------
# Monte Carlo


def _mc_orders(E: Curve, j: Fp2Element) -> List[int]:
    p = E.field.p
    if E.field.degree == 1:
        return [p + 1]
    orders = [p - 1, p + 1]
    # twists of j = 0 / 1728 over F_{p^2} can have trace +-p or 0
    if j.is_zero():
        orders += [p * p - p + 1, p * p + p + 1]
    elif j == 1728:
        orders.append(p * p + 1)
    return orders


def monte_carlo(E: Curve, config: ClassifierConfig = ClassifierConfig()) -> Verdict:
    rng = random.Random(config.seed)
    orders = _mc_orders(E, j_invariant(E))
    for rep in range(1, config.mc_repetitions + 1):
        P = random_point(E, rng)
        if not any(scalar_mul(n, P).is_infinity() for n in orders):
            return Verdict(ORDINARY, "monte_carlo", rep, f"repetition:{rep}", config.seed)
    return Verdict(
        PROBABLY_SUPERSINGULAR, "monte_carlo", config.mc_repetitions, "complete", config.seed
    )


def monte_carlo_round(E: Curve, rng) -> bool:
    """One round of the test: True when the random point passes."""
    orders = _mc_orders(E, j_invariant(E))
    P = random_point(E, rng)
    return any(scalar_mul(n, P).is_infinity() for n in orders)


def monte_carlo_bound(q: int) -> float:
    """Upper bound 8 sqrt(q) / (sqrt(q) - 1)^2 on a false 'true' per round."""
    r = q**0.5
    return 8 * r / (r - 1) ** 2


# --------------------------------------------------------------------------
# modular polynomial prover


def _primes_not_p(p: int):
    ell = 2
    while True:
        if ell != p and is_probable_prime(ell):
            yield ell
        ell += 1


def modpoly_primes(p: int) -> List[int]:
    """Smallest primes l != p whose product exceeds 2p."""
    S, M = [], 1
    for ell in _primes_not_p(p):
        S.append(ell)
        M *= ell
        if M > 2 * p:
            return S
    raise AssertionError("unreachable")


def prove_modpoly(j: Fp2Element, data=None) -> Verdict:
    """Supersingular iff Phi_l(j, X) splits over F_{p^2} for every l in S."""
    p = j.field.p
    if j.is_zero() or j == 1728:
        raise ExcludedJInvariant(f"j={j} needs the congruence rule")
    db = data if isinstance(data, ModpolyDatabase) else ModpolyDatabase(
        None if data is None else ([data] if isinstance(data, str) or hasattr(data, "is_dir") else data)
    )
    if j.in_base_field():
        j = FieldSpec(p)(j.c0)
    S = modpoly_primes(p)
    for n, ell in enumerate(S, start=1):
        phi = phi2() if ell == 2 and not db.has(2) else db.get(ell)
        if not splits_completely(instantiate(phi, j), q=p * p):
            return Verdict(ORDINARY, "modpoly", n, f"ell={ell}")
    return Verdict(SUPERSINGULAR, "modpoly", len(S), "complete")


# --------------------------------------------------------------------------
# isogeny-volcano walk


def walk_length(p: int) -> int:
    """m = floor(log2 p) + 1; walks run to length m + 1."""
    return p.bit_length()


def _walk_setup(E: Curve, config: ClassifierConfig):
    """Quadratic extension, Sylow contexts and the rng for one classification."""
    rng = random.Random(config.seed)
    p = E.field.p
    if config.mode == DETERMINISTIC:
        qnr, cnr = config.quadratic_nonresidue, config.cubic_nonresidue
        if E.field.degree == 2:
            ext = E.field
        elif qnr.field.degree == 2:
            ext = qnr.field
        else:
            raise MissingNonResidue("non-residues must be elements of F_{p^2}")
        if qnr.field.p != p or cnr.field.p != p:
            raise FieldMismatch("non-residues belong to a different characteristic")
        qnr, cnr = ext.lift(qnr), ext.lift(cnr)
    else:
        ext = E.field if E.field.degree == 2 else construct_field(p, rng=rng)
        qnr = find_nonresidue(ext, 2, rng)
        cnr = find_nonresidue(ext, 3, rng)
    ctx2 = sylow_context(ext, 2, qnr)
    ctx3 = sylow_context(ext, 3, cnr)
    return ext, ctx2, ctx3


def _phi2_cubic(j: Fp2Element):
    c = instantiate(phi2(), j).coeffs
    return c[2], c[1], c[0]


def _phi2_quotient(j: Fp2Element, prev: Fp2Element):
    """(b, c) with Phi_2(j, X) / (X - prev) = X^2 + bX + c."""
    a2, a1, _ = _phi2_cubic(j)
    b = a2 + prev
    return b, a1 + prev * b


def _walk(paths, k_start, m, ctx2, seed, steps_before=0):
    """Extend each (prev, cur) path up to step m; returns a Verdict."""
    for k in range(k_start, m + 1):
        for i, (prev, cur) in enumerate(paths):
            b, c = _phi2_quotient(cur, prev)
            roots = solve_quadratic(b, c, ctx2)
            if not roots:
                return Verdict(ORDINARY, "volcano", steps_before + k, f"step5:{k}", seed)
            paths[i] = (cur, roots[0])
    return Verdict(SUPERSINGULAR, "volcano", steps_before + m + 1, "complete", seed)


def identify(E: Curve, config: ClassifierConfig = ClassifierConfig()) -> Verdict:
    ext, ctx2, ctx3 = _walk_setup(E, config)
    j = ext.lift(j_invariant(E))
    roots = solve_cubic(*_phi2_cubic(j), ctx2, ctx3)
    if len(roots) < 3:
        return Verdict(ORDINARY, "volcano", 0, "step3", config.seed)
    m = walk_length(ext.p)
    paths = [(j, r) for r in roots]
    return _walk(paths, 1, m, ctx2, config.seed)


def identify_fp_shortcut(E: Curve, config: ClassifierConfig = ClassifierConfig()) -> Verdict:
    j0 = j_invariant(E)
    if not j0.in_base_field():
        raise NotDefinedOverPrimeField(f"j={j0} is not in F_p")
    ext, ctx2, ctx3 = _walk_setup(E, config)
    j = ext.lift(j0) if E.field.degree == 2 else ext(j0.c0)
    roots = solve_cubic(*_phi2_cubic(j), ctx2, ctx3)
    if len(roots) < 3:
        return Verdict(ORDINARY, "volcano", 0, "step3", config.seed)
    m = walk_length(ext.p)
    rational = [r for r in roots if r.in_base_field()]
    if len(rational) == 1:
        # j itself has F_p-degree 1
        exit_edge = (j, min(r for r in roots if not r.in_base_field()))
        return _walk([exit_edge], 1, m, ctx2, config.seed)
    paths = [(j, r) for r in roots]
    for k in range(1, m + 1):
        for i, (prev, cur) in enumerate(paths):
            b, c = _phi2_quotient(cur, prev)
            nxt = solve_quadratic(b, c, ctx2)
            if not nxt:
                # cannot happen for a quadratic over F_p; kept for safety
                return Verdict(ORDINARY, "volcano", k, f"step5:{k}", config.seed)
            if not nxt[0].in_base_field():
                # cur has F_p-degree 1: its two other edges leave F_p and
                # descend if the curve is ordinary, so one path suffices
                return _walk([(cur, nxt[0])], 1, m, ctx2, config.seed, steps_before=k)
            paths[i] = (cur, nxt[0])
    v = identify(E, config)
    return Verdict(v.result, v.method, v.steps + m, v.terminated_at, v.seed)


# --------------------------------------------------------------------------
# facade

METHODS = ("auto", "volcano", "mc", "modpoly", "oracle")


def classify(
    E: Curve,
    method: str = "auto",
    config: ClassifierConfig = ClassifierConfig(),
    data=None,
) -> Verdict:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    j = j_invariant(E)
    p = E.field.p
    if method == "oracle":
        ss = oracle_hasse(E)
        return Verdict(SUPERSINGULAR if ss else ORDINARY, "oracle", 0, "complete")
    if method == "mc":
        return monte_carlo(E, config)
    if method == "modpoly":
        rule = footnote_rule(p, j)
        if rule is not None:
            return Verdict(SUPERSINGULAR if rule else ORDINARY, "modpoly", 0, "footnote")
        return prove_modpoly(j, data)
    if method == "volcano" or not j.in_base_field():
        return identify(E, config)
    return identify_fp_shortcut(E, config)
