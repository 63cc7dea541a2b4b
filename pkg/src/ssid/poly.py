"""Dense univariate polynomials over F_p or F_{p^2}."""

from __future__ import annotations

from typing import Iterable, Sequence

from .arith import FieldSpec, Fp2Element


class UniPoly:
    """Coefficients low-to-high with no trailing zeros (zero poly is [])."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable):
        cs = [c if isinstance(c, Fp2Element) else field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = cs

    @classmethod
    def x(cls, field: FieldSpec) -> "UniPoly":
        return cls(field, [field.zero, field.one])

    @classmethod
    def from_roots(cls, field: FieldSpec, roots: Sequence[Fp2Element]) -> "UniPoly":
        f = cls(field, [field.one])
        for r in roots:
            f = f * cls(field, [-r, field.one])
        return f

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fp2Element:
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __call__(self, x: Fp2Element) -> Fp2Element:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(self.field, out)

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(self.field, [])
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for k, y in enumerate(b):
                out[i + k] = out[i + k] + x * y
        return UniPoly(self.field, out)

    def scale(self, c: Fp2Element) -> "UniPoly":
        return UniPoly(self.field, [c * x for x in self.coeffs])

    def monic(self) -> "UniPoly":
        if not self.coeffs or self.lead().is_one():
            return self
        return self.scale(self.lead().inverse())

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return UniPoly(self.field, []), self
        inv_lead = other.lead().inverse()
        quo = [self.field.zero] * (len(rem) - db)
        bc = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c.is_zero():
                continue
            c = c * inv_lead
            quo[i - db] = c
            for k in range(db + 1):
                rem[i - db + k] = rem[i - db + k] - c * bc[k]
        return UniPoly(self.field, quo), UniPoly(self.field, rem[:db])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def powmod(self, e: int, modulus: "UniPoly") -> "UniPoly":
        result = UniPoly(self.field, [self.field.one]) % modulus
        base = self % modulus
        for bit in bin(e)[2:]:
            result = (result * result) % modulus
            if bit == "1":
                result = (result * base) % modulus
        return result


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def x_pow_mod(f: UniPoly, e: int) -> UniPoly:
    return UniPoly.x(f.field).powmod(e, f)
