"""Prime-field and quadratic-extension arithmetic.

F_{p^2} is represented as F_p[t]/(t^2 - alpha) with alpha a quadratic
non-residue mod p, so an element is a pair (c0, c1) meaning c0 + c1*t and
F_p sits inside as the elements with c1 == 0.  Elements are totally ordered
by (c0, c1) lexicographically; every deterministic choice among field
elements in the package goes through that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

import gmpy2

from .errors import (
    CharTooSmall,
    FieldMismatch,
    NotANonResidue,
    NotPrime,
    ParseError,
    RNotDividingGroupOrder,
    ZeroInput,
)


def is_probable_prime(n: int) -> bool:
    return n > 1 and bool(gmpy2.is_prime(n, 32))


def valuation(n: int, r: int) -> int:
    """Largest e with r**e dividing n (n != 0)."""
    e = 0
    while n % r == 0:
        n //= r
        e += 1
    return e


@dataclass(frozen=True)
class FieldSpec:
    """F_p (alpha is None) or F_{p^2} = F_p(t), t^2 = alpha."""

    p: int
    alpha: Optional[int] = None

    @property
    def degree(self) -> int:
        return 1 if self.alpha is None else 2

    @property
    def q(self) -> int:
        return self.p if self.alpha is None else self.p * self.p

    def __call__(self, c0, c1: int = 0) -> "Fp2Element":
        if isinstance(c0, Fp2Element):
            return self.lift(c0)
        if c1 % self.p and self.alpha is None:
            raise FieldMismatch(f"element with t-component in prime field F_{self.p}")
        return Fp2Element(c0 % self.p, c1 % self.p, self)

    @property
    def zero(self) -> "Fp2Element":
        return Fp2Element(0, 0, self)

    @property
    def one(self) -> "Fp2Element":
        return Fp2Element(1, 0, self)

    @property
    def gen(self) -> "Fp2Element":
        """The element t (degree-2 fields only)."""
        if self.alpha is None:
            raise FieldMismatch("prime field has no generator t")
        return Fp2Element(0, 1, self)

    def lift(self, x: "Fp2Element") -> "Fp2Element":
        """Move x into this field; x must have the same characteristic."""
        if x.field == self:
            return x
        if x.field.p != self.p:
            raise FieldMismatch(f"characteristic {x.field.p} != {self.p}")
        if x.c1:
            raise FieldMismatch("cannot move an F_p^2 element between different extensions")
        return Fp2Element(x.c0, 0, self)

    def base(self) -> "FieldSpec":
        return FieldSpec(self.p) if self.alpha is not None else self

    def elements(self) -> Iterator["Fp2Element"]:
        """All elements in canonical order."""
        p = self.p
        if self.alpha is None:
            for c0 in range(p):
                yield Fp2Element(c0, 0, self)
        else:
            for c0 in range(p):
                for c1 in range(p):
                    yield Fp2Element(c0, c1, self)

    def element_from_index(self, i: int) -> "Fp2Element":
        """Inverse of Fp2Element.index."""
        return Fp2Element(i % self.p, i // self.p, self)

    def random_element(self, rng, nonzero: bool = False) -> "Fp2Element":
        p = self.p
        while True:
            c0 = rng.randrange(p)
            c1 = rng.randrange(p) if self.alpha is not None else 0
            if c0 or c1 or not nonzero:
                return Fp2Element(c0, c1, self)

    def parse(self, text: str) -> "Fp2Element":
        parts = text.strip().split(",")
        try:
            if len(parts) == 1:
                return self(int(parts[0]))
            if len(parts) == 2:
                return self(int(parts[0]), int(parts[1]))
        except ValueError as exc:
            raise ParseError(f"bad field element {text!r}") from exc
        raise ParseError(f"bad field element {text!r}")

    def __str__(self) -> str:
        return str(self.p) if self.alpha is None else f"{self.p};{self.alpha}"

    @classmethod
    def parse_spec(cls, text: str) -> "FieldSpec":
        parts = text.strip().split(";")
        try:
            p = int(parts[0])
            alpha = int(parts[1]) if len(parts) == 2 else None
        except (ValueError, IndexError) as exc:
            raise ParseError(f"bad field spec {text!r}") from exc
        if len(parts) > 2:
            raise ParseError(f"bad field spec {text!r}")
        return construct_field(p, alpha)


def construct_field(p: int, alpha: Optional[int] = None, rng=None) -> FieldSpec:
    """Validate p (and alpha) and return the field spec.

    With ``rng`` and no alpha, a random quadratic non-residue is sampled and
    F_{p^2} is returned.
    """
    if p <= 3:
        if p in (2, 3):
            raise CharTooSmall(f"characteristic {p} is handled by the j == 0 rule")
        raise NotPrime(p)
    if not is_probable_prime(p):
        raise NotPrime(p)
    if alpha is None:
        if rng is None:
            return FieldSpec(p)
        while True:
            a = rng.randrange(2, p)
            if pow(a, (p - 1) // 2, p) == p - 1:
                return FieldSpec(p, a)
    if not 0 < alpha < p:
        raise NotANonResidue(f"alpha={alpha} not in (0, p)")
    if pow(alpha, (p - 1) // 2, p) != p - 1:
        raise NotANonResidue(f"{alpha} is a square mod {p}")
    return FieldSpec(p, alpha)


@lru_cache(maxsize=None)
def smallest_quadratic_extension(p: int) -> FieldSpec:
    """F_{p^2} built on the least quadratic non-residue mod p."""
    a = 2
    while pow(a, (p - 1) // 2, p) != p - 1:
        a += 1
    return construct_field(p, a)


class Fp2Element:
    __slots__ = ("c0", "c1", "field")

    def __init__(self, c0: int, c1: int, field: FieldSpec):
        self.c0 = c0
        self.c1 = c1
        self.field = field

    # construction helpers -------------------------------------------------

    def _coerce(self, other) -> "Fp2Element":
        if isinstance(other, Fp2Element):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return Fp2Element(other % self.field.p, 0, self.field)
        return NotImplemented

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return Fp2Element((self.c0 + o.c0) % p, (self.c1 + o.c1) % p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return Fp2Element((self.c0 - o.c0) % p, (self.c1 - o.c1) % p, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        p = self.field.p
        return Fp2Element(-self.c0 % p, -self.c1 % p, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        f = self.field
        p = f.p
        a0, a1, b0, b1 = self.c0, self.c1, o.c0, o.c1
        if not a1 and not b1:
            return Fp2Element(a0 * b0 % p, 0, f)
        return Fp2Element((a0 * b0 + f.alpha * a1 * b1) % p, (a0 * b1 + a1 * b0) % p, f)

    __rmul__ = __mul__

    def square(self) -> "Fp2Element":
        f = self.field
        p = f.p
        a0, a1 = self.c0, self.c1
        if not a1:
            return Fp2Element(a0 * a0 % p, 0, f)
        return Fp2Element((a0 * a0 + f.alpha * a1 * a1) % p, 2 * a0 * a1 % p, f)

    def inverse(self) -> "Fp2Element":
        f = self.field
        p = f.p
        a0, a1 = self.c0, self.c1
        if not a1:
            if not a0:
                raise ZeroDivisionError("inverse of zero")
            return Fp2Element(pow(a0, -1, p), 0, f)
        n = pow((a0 * a0 - f.alpha * a1 * a1) % p, -1, p)
        return Fp2Element(a0 * n % p, -a1 * n % p, f)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        return power(self, e)

    # predicates and comparisons ------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.c0 or self.c1)

    def is_zero(self) -> bool:
        return not (self.c0 or self.c1)

    def is_one(self) -> bool:
        return self.c0 == 1 and not self.c1

    def in_base_field(self) -> bool:
        return not self.c1

    def __eq__(self, other) -> bool:
        if isinstance(other, Fp2Element):
            return (
                self.c0 == other.c0
                and self.c1 == other.c1
                and self.field.p == other.field.p
            )
        if isinstance(other, int):
            return not self.c1 and self.c0 == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.c0, self.c1))

    def key(self) -> tuple:
        return (self.c0, self.c1)

    def __lt__(self, other: "Fp2Element") -> bool:
        return (self.c0, self.c1) < (other.c0, other.c1)

    def __le__(self, other: "Fp2Element") -> bool:
        return (self.c0, self.c1) <= (other.c0, other.c1)

    def __gt__(self, other: "Fp2Element") -> bool:
        return (self.c0, self.c1) > (other.c0, other.c1)

    def __ge__(self, other: "Fp2Element") -> bool:
        return (self.c0, self.c1) >= (other.c0, other.c1)

    def index(self) -> int:
        """Position c0 + p*c1; a bijection onto range(q)."""
        return self.c0 + self.field.p * self.c1

    def frobenius(self) -> "Fp2Element":
        return frobenius(self)

    def norm(self) -> int:
        """N(x) = x * x^p as an integer mod p."""
        f = self.field
        if f.alpha is None:
            return self.c0
        return (self.c0 * self.c0 - f.alpha * self.c1 * self.c1) % f.p

    def __str__(self) -> str:
        return str(self.c0) if not self.c1 else f"{self.c0},{self.c1}"

    def __repr__(self) -> str:
        return f"Fp2Element({self.c0}, {self.c1}, {self.field})"


def field_op(x: Fp2Element, y: Fp2Element, kind: str) -> Fp2Element:
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    if kind == "div":
        return x / y
    raise ValueError(f"unknown operation {kind!r}")


def _pow_fp2(a0: int, a1: int, e: int, p: int, alpha: int) -> tuple:
    # left-to-right square and multiply on raw coefficients
    r0, r1 = 1, 0
    for bit in bin(e)[2:]:
        r0, r1 = (r0 * r0 + alpha * r1 * r1) % p, 2 * r0 * r1 % p
        if bit == "1":
            r0, r1 = (r0 * a0 + alpha * r1 * a1) % p, (r0 * a1 + r1 * a0) % p
    return r0, r1


def power(x: Fp2Element, e: int) -> Fp2Element:
    """x**e; x**0 == 1 for every x, negative e inverts first."""
    f = x.field
    if e < 0:
        x = x.inverse()
        e = -e
    if not x.c1:
        return Fp2Element(pow(x.c0, e, f.p), 0, f)
    q1 = f.p * f.p - 1
    if e >= q1:
        e %= q1
    # x^e = frob(x)^hi * x^lo with e = hi*p + lo halves the squaring chain
    p = f.p
    hi, lo = divmod(e, p)
    if hi == 0:
        c0, c1 = _pow_fp2(x.c0, x.c1, lo, p, f.alpha)
        return Fp2Element(c0, c1, f)
    return _pow_fp2_pair(x, hi, lo)


def _pow_fp2_pair(x: Fp2Element, hi: int, lo: int) -> Fp2Element:
    # simultaneous exponentiation of frob(x)^hi * x^lo
    f = x.field
    p, alpha = f.p, f.alpha
    a0, a1 = x.c0, x.c1
    b0, b1 = a0, -a1 % p
    ab0, ab1 = (a0 * b0 + alpha * a1 * b1) % p, (a0 * b1 + a1 * b0) % p
    table = {(0, 1): (a0, a1), (1, 0): (b0, b1), (1, 1): (ab0, ab1)}
    r0, r1 = 1, 0
    n = max(hi.bit_length(), lo.bit_length())
    for i in range(n - 1, -1, -1):
        r0, r1 = (r0 * r0 + alpha * r1 * r1) % p, 2 * r0 * r1 % p
        sel = ((hi >> i) & 1, (lo >> i) & 1)
        if sel != (0, 0):
            m0, m1 = table[sel]
            r0, r1 = (r0 * m0 + alpha * r1 * m1) % p, (r0 * m1 + r1 * m0) % p
    return Fp2Element(r0, r1, f)


def frobenius(x: Fp2Element) -> Fp2Element:
    """x**p, which is c0 - c1*t because t**p = -t."""
    f = x.field
    if f.alpha is None:
        return x
    return Fp2Element(x.c0, -x.c1 % f.p, f)


def is_rth_residue(x: Fp2Element, r: int) -> bool:
    if x.is_zero():
        raise ZeroInput("residue test of zero")
    q1 = x.field.q - 1
    if q1 % r:
        raise RNotDividingGroupOrder(f"{r} does not divide q-1 = {q1}")
    return power(x, q1 // r).is_one()


def find_nonresidue(field: FieldSpec, r: int, rng) -> Fp2Element:
    """Sample field elements until one is not an r-th power."""
    if (field.q - 1) % r:
        raise RNotDividingGroupOrder(f"{r} does not divide q-1 = {field.q - 1}")
    while True:
        x = field.random_element(rng, nonzero=True)
        if not is_rth_residue(x, r):
            return x


def first_nonresidue(field: FieldSpec, r: int) -> Fp2Element:
    """First non-r-th-power in a fixed search sequence.

    The sequence is 2, 3, 4, ... in F_p and t, 1 + t, 2 + t, ... in F_{p^2}
    (every element of F_p is a square in F_{p^2}, so the extension search
    starts off the prime field).
    """
    if (field.q - 1) % r:
        raise RNotDividingGroupOrder(f"{r} does not divide q-1 = {field.q - 1}")
    return _first_nonresidue(field, r)


@lru_cache(maxsize=256)
def _first_nonresidue(field: FieldSpec, r: int) -> Fp2Element:
    if field.alpha is None:
        candidates = (field(c) for c in range(2, field.p))
    else:
        candidates = (field(c, 1) for c in range(field.p))
    for x in candidates:
        if not is_rth_residue(x, r):
            return x
    raise AssertionError(f"no {r}-th power non-residue found in {field}")
