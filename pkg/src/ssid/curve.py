"""Short Weierstrass curves y^2 = x^3 + Ax + B over F_p or F_{p^2}."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .arith import FieldSpec, Fp2Element
from .errors import ParseError, PointsOnDifferentCurves, SingularCurve
from .roots import default_context, sqrt


@dataclass(frozen=True, eq=False)
class Curve:
    field: FieldSpec
    A: Fp2Element
    B: Fp2Element

    def __post_init__(self):
        object.__setattr__(self, "A", self.field(self.A))
        object.__setattr__(self, "B", self.field(self.B))
        if self.discriminant().is_zero():
            raise SingularCurve(f"4A^3 + 27B^2 = 0 for A={self.A}, B={self.B}")

    def discriminant(self) -> Fp2Element:
        return 4 * self.A.square() * self.A + 27 * self.B.square()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Curve):
            return NotImplemented
        return self.field == other.field and self.A == other.A and self.B == other.B

    def __hash__(self) -> int:
        return hash((self.field, self.A.key(), self.B.key()))

    def rhs(self, x: Fp2Element) -> Fp2Element:
        return (x.square() + self.A) * x + self.B

    def is_on_curve(self, P: "Point") -> bool:
        if P.is_infinity():
            return True
        return P.y.square() == self.rhs(P.x)

    @property
    def infinity(self) -> "Point":
        return Point(self, None, None)

    def point(self, x, y) -> "Point":
        P = Point(self, self.field(x), self.field(y))
        if not self.is_on_curve(P):
            raise ValueError(f"({P.x}, {P.y}) is not on the curve")
        return P

    def points(self) -> Iterator["Point"]:
        """Every point, infinity first (desk-scale enumeration)."""
        yield self.infinity
        ctx2 = default_context(self.field, 2)
        for x in self.field.elements():
            v = self.rhs(x)
            y = sqrt(v, ctx2)
            if y is None:
                continue
            yield Point(self, x, y)
            if not y.is_zero():
                yield Point(self, x, -y)

    def __str__(self) -> str:
        return f"{self.field} {self.A} {self.B}"

    @classmethod
    def parse(cls, text: str) -> "Curve":
        parts = text.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'p[;alpha] A B', got {text!r}")
        field = FieldSpec.parse_spec(parts[0])
        return cls(field, field.parse(parts[1]), field.parse(parts[2]))


class Point:
    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: Curve, x: Optional[Fp2Element], y: Optional[Fp2Element]):
        self.curve = curve
        self.x = x
        self.y = y

    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        if self.is_infinity() or other.is_infinity():
            return self.is_infinity() and other.is_infinity()
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash(None if self.x is None else (self.x.key(), self.y.key()))

    def __neg__(self) -> "Point":
        if self.is_infinity():
            return self
        return Point(self.curve, self.x, -self.y)

    def __add__(self, other: "Point") -> "Point":
        return add(self, other)

    def __rmul__(self, k: int) -> "Point":
        return scalar_mul(k, self)

    def __repr__(self) -> str:
        if self.is_infinity():
            return "Point(infinity)"
        return f"Point({self.x}, {self.y})"


def j_invariant(E: Curve) -> Fp2Element:
    a3 = 4 * E.A.square() * E.A
    d = a3 + 27 * E.B.square()
    if d.is_zero():
        raise SingularCurve("singular curve has no j-invariant")
    return 1728 * a3 / d


def curve_from_j(field: FieldSpec, j: Fp2Element) -> Curve:
    """Fixed representative with the given j-invariant."""
    j = field(j)
    if j.is_zero():
        return Curve(field, field.zero, field.one)
    if j == 1728:
        return Curve(field, field.one, field.zero)
    k = j / (1728 - j)
    return Curve(field, 3 * k, 2 * k)


def add(P: Point, Q: Point) -> Point:
    E = P.curve
    if Q.curve is not E and Q.curve != E:
        raise PointsOnDifferentCurves("points lie on different curves")
    if P.is_infinity():
        return Q
    if Q.is_infinity():
        return P
    if P.x == Q.x:
        if (P.y + Q.y).is_zero():
            return E.infinity
        lam = (3 * P.x.square() + E.A) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam.square() - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return Point(E, x3, y3)


def scalar_mul(k: int, P: Point) -> Point:
    if k < 0:
        return scalar_mul(-k, -P)
    R = P.curve.infinity
    for bit in bin(k)[2:]:
        R = add(R, R)
        if bit == "1":
            R = add(R, P)
    return R


def random_point(E: Curve, rng) -> Point:
    """Uniform affine point: random x until x^3+Ax+B is a square, random sign."""
    ctx2 = default_context(E.field, 2)
    while True:
        x = E.field.random_element(rng)
        y = sqrt(E.rhs(x), ctx2)
        if y is None:
            continue
        # x with y == 0 carries one point, not two: keep it half the time
        if rng.getrandbits(1):
            if y.is_zero():
                continue
            y = -y
        return Point(E, x, y)


def count_points(E: Curve) -> int:
    """#E(F_q) by summing the quadratic character (q small)."""
    field = E.field
    half = (field.q - 1) // 2
    total = field.q + 1
    for x in field.elements():
        v = E.rhs(x)
        if v.is_zero():
            continue
        total += 1 if (v**half).is_one() else -1
    return total
