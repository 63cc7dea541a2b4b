"""Classical modular polynomials and the split-completely test.

Data files are UTF-8 text: a first line ``ell <l>``, then one line
``<dx> <dy> <coefficient>`` per stored coefficient with dx >= dy (the
symmetric partner is implied).  ``#`` starts a comment.
"""

from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .arith import Fp2Element, is_probable_prime
from .errors import FileMissing, InvariantViolation, ParseError
from .poly import UniPoly, gcd, x_pow_mod

__all__ = [
    "ModularPolynomial",
    "ModpolyDatabase",
    "UniPoly",
    "phi2",
    "load_modpoly",
    "parse_modpoly",
    "instantiate",
    "splits_completely",
    "default_data_dirs",
]

PACKAGED_DATA_DIR = Path(__file__).parent / "data" / "modpoly"
ENV_VAR = "SSID_MODPOLY_DIR"


class ModularPolynomial:
    """Symmetric Phi_ell in Z[X, Y], stored on pairs (dx, dy) with dx >= dy."""

    def __init__(self, ell: int, coefficients: Dict[Tuple[int, int], int], check: bool = True):
        self.ell = ell
        self.coefficients = {k: v for k, v in coefficients.items() if v}
        n = ell + 2
        dense = [[0] * n for _ in range(n)]
        for (dx, dy), c in self.coefficients.items():
            if dx < dy:
                raise InvariantViolation(f"coefficient ({dx}, {dy}) stored with dx < dy")
            if dx >= n:
                raise InvariantViolation(f"degree {dx} exceeds ell + 1 = {ell + 1}")
            dense[dx][dy] = c
            dense[dy][dx] = c
        self._dense = dense
        self._reduced: Dict[int, List[List[int]]] = {}
        if check:
            self.check()

    def coefficient(self, dx: int, dy: int) -> int:
        n = self.ell + 2
        if not (0 <= dx < n and 0 <= dy < n):
            return 0
        return self._dense[dx][dy]

    def check(self) -> None:
        ell = self.ell
        if not is_probable_prime(ell):
            raise InvariantViolation(f"ell={ell} is not prime")
        if self.coefficient(ell + 1, 0) != 1:
            raise InvariantViolation("leading coefficient of X^(ell+1) is not 1")
        if self.coefficient(ell + 1, ell + 1) != 0:
            raise InvariantViolation("X^(ell+1) Y^(ell+1) must be absent")
        if self.coefficient(ell, ell) != -1:
            raise InvariantViolation("coefficient of X^ell Y^ell must be -1")
        for dx in range(1, ell + 2):
            if self.coefficient(ell + 1, dx) != 0:
                raise InvariantViolation(f"X^(ell+1) Y^{dx} must be absent")

    def reduced(self, p: int) -> List[List[int]]:
        """Dense coefficient matrix reduced mod p (cached per p)."""
        table = self._reduced.get(p)
        if table is None:
            table = [[c % p for c in row] for row in self._dense]
            self._reduced[p] = table
        return table

    def evaluate(self, x: Fp2Element, y: Fp2Element) -> Fp2Element:
        return instantiate(self, x)(y)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModularPolynomial):
            return NotImplemented
        return self.ell == other.ell and self.coefficients == other.coefficients

    def __repr__(self) -> str:
        return f"ModularPolynomial(ell={self.ell}, terms={len(self.coefficients)})"


_PHI2 = {
    (3, 0): 1,
    (2, 2): -1,
    (2, 1): 1488,
    (2, 0): -162000,
    (1, 1): 40773375,
    (1, 0): 8748000000,
    (0, 0): -157464000000000,
}


@lru_cache(maxsize=1)
def phi2() -> ModularPolynomial:
    return ModularPolynomial(2, dict(_PHI2))


def parse_modpoly(text: str, expected_ell: Optional[int] = None) -> ModularPolynomial:
    ell = None
    coeffs: Dict[Tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if ell is None:
            if len(parts) != 2 or parts[0] != "ell":
                raise ParseError("expected header 'ell <l>'", lineno)
            try:
                ell = int(parts[1])
            except ValueError:
                raise ParseError(f"bad ell {parts[1]!r}", lineno) from None
            continue
        if len(parts) != 3:
            raise ParseError(f"expected '<dx> <dy> <coefficient>', got {line!r}", lineno)
        try:
            dx, dy, c = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(f"non-integer field in {line!r}", lineno) from None
        if dx < dy:
            raise ParseError(f"dx < dy in {line!r}", lineno)
        if (dx, dy) in coeffs:
            raise ParseError(f"duplicate monomial ({dx}, {dy})", lineno)
        coeffs[(dx, dy)] = c
    if ell is None:
        raise ParseError("empty modular polynomial file")
    if expected_ell is not None and ell != expected_ell:
        raise InvariantViolation(f"file declares ell={ell}, expected {expected_ell}")
    return ModularPolynomial(ell, coeffs)


def default_data_dirs() -> List[Path]:
    dirs = []
    env = os.environ.get(ENV_VAR)
    if env:
        dirs.append(Path(env))
    dirs.append(PACKAGED_DATA_DIR)
    return dirs


class ModpolyDatabase:
    """Directory search path with an in-memory cache of loaded polynomials."""

    def __init__(self, dirs: Optional[Sequence[Union[str, Path]]] = None):
        self.dirs = [Path(d) for d in (dirs if dirs is not None else default_data_dirs())]
        self._cache: Dict[int, ModularPolynomial] = {}

    def path_for(self, ell: int) -> Optional[Path]:
        for d in self.dirs:
            path = d / f"phi_{ell}.txt"
            if path.is_file():
                return path
        return None

    def has(self, ell: int) -> bool:
        return ell == 2 or self.path_for(ell) is not None

    def get(self, ell: int) -> ModularPolynomial:
        poly = self._cache.get(ell)
        if poly is None:
            poly = load_modpoly(ell, self.dirs)
            self._cache[ell] = poly
        return poly


def load_modpoly(
    ell: int, source: Union[str, Path, Iterable[Union[str, Path]], None] = None
) -> ModularPolynomial:
    """Read Phi_ell from the first directory in ``source`` that has it."""
    if isinstance(source, ModpolyDatabase):
        return source.get(ell)
    if source is None:
        dirs = default_data_dirs()
    elif isinstance(source, (str, Path)):
        dirs = [Path(source)]
    else:
        dirs = [Path(d) for d in source]
    if not is_probable_prime(ell):
        raise FileMissing(ell, dirs)
    for d in dirs:
        path = d / f"phi_{ell}.txt"
        if path.is_file():
            return parse_modpoly(path.read_text(encoding="utf-8"), expected_ell=ell)
    if ell == 2:
        return phi2()
    raise FileMissing(ell, dirs)


def instantiate(phi: ModularPolynomial, j: Fp2Element) -> UniPoly:
    """phi(j, X) over the field of j."""
    field = j.field
    p = field.p
    M = phi.reduced(p)
    n = phi.ell + 2
    pw0, pw1 = [1], [0]
    alpha = field.alpha or 0
    j0, j1 = j.c0, j.c1
    for _ in range(n - 1):
        a0, a1 = pw0[-1], pw1[-1]
        pw0.append((a0 * j0 + alpha * a1 * j1) % p)
        pw1.append((a0 * j1 + a1 * j0) % p)
    coeffs = []
    for b in range(n):
        s0 = s1 = 0
        for a in range(n):
            c = M[a][b]
            if c:
                s0 += c * pw0[a]
                s1 += c * pw1[a]
        coeffs.append(Fp2Element(s0 % p, s1 % p, field))
    return UniPoly(field, coeffs)


def splits_completely(f: UniPoly, q: Optional[int] = None) -> bool:
    """True iff f is a product of linear factors over F_q.

    Repeatedly strips the linear part: g = gcd(f, X^q - X), then
    f <- f/g, g <- gcd(f, g) until deg g == 0.  ``q`` defaults to the size
    of f's field; passing p**2 for a polynomial over F_p tests splitting
    over F_{p^2} while staying in F_p[X].
    """
    field = f.field
    if q is None:
        q = field.q
    p = field.p
    if q not in (p, p * p):
        raise ValueError(f"q={q} must be p or p^2")
    f = f.monic()
    if f.degree <= 0:
        return True
    h = x_pow_mod(f, p)
    if q == p * p:
        h = h.powmod(p, f)
    g = gcd(f, h - UniPoly.x(field))
    while g.degree > 0:
        f = f // g
        g = gcd(f, g)
    return f.degree == 0
