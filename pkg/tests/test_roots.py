import itertools
import random
from collections import Counter

import pytest

from ssid.arith import FieldSpec, construct_field, is_rth_residue, smallest_quadratic_extension
from ssid.errors import NotANonResidue, NotInSubgroup
from ssid.roots import (
    default_context,
    rth_root,
    solve_cubic,
    solve_quadratic,
    sqrt,
    sylow_context,
    sylow_dlog,
)

F7 = FieldSpec(7)


def test_sylow_context_examples(F49):
    c = sylow_context(F7, 2, F7(3))
    assert (c.e, c.s, c.gamma) == (1, 2, F7(6))
    c = sylow_context(F7, 3, F7(2))
    assert (c.e, c.s, c.gamma) == (1, 3, F7(4))
    # t is a square in F_49 (its norm -3 = 4 is a square mod 7); 1 + t is not
    with pytest.raises(NotANonResidue):
        sylow_context(F49, 2, F49.gen)
    c = sylow_context(F49, 2, F49(1, 1))
    assert (c.e, c.s, c.m) == (4, 16, 3)
    assert c.gamma == F49(1, 1) ** 3
    assert (c.gamma**16).is_one() and not (c.gamma**8).is_one()


def test_sylow_dlog_examples(F49):
    c7 = sylow_context(F7, 2, F7(3))
    assert sylow_dlog(c7, F7(1)) == 0
    assert sylow_dlog(c7, F7(6)) == 1
    c49 = sylow_context(F49, 2, F49(1, 1))
    assert sylow_dlog(c49, c49.gamma**13) == 13
    for k in range(16):
        assert sylow_dlog(c49, c49.gamma**k) == k
    with pytest.raises(NotInSubgroup):
        sylow_dlog(c49, F49(2))  # order 3


def test_sqrt_examples(F49):
    c7 = default_context(F7, 2)
    assert sqrt(F7(2), c7) == F7(3)
    assert sqrt(F7(3), c7) is None
    assert sqrt(F7(0), c7) == F7(0)
    assert sqrt(F49(3), default_context(F49, 2)) == F49.gen


def test_rth_root_examples():
    c3 = default_context(F7, 3)
    assert rth_root(F7(6), c3) == F7(3)
    assert rth_root(F7(1), c3) == F7(1)
    K = construct_field(7, 3)
    assert rth_root(K(2), default_context(K, 3)) is None


def test_solve_quadratic_examples():
    c7 = default_context(F7, 2)
    assert solve_quadratic(F7(-3), F7(2), c7) == [F7(1), F7(2)]
    assert solve_quadratic(F7(0), F7(-3), c7) == []
    assert solve_quadratic(F7(-2), F7(1), c7) == [F7(1), F7(1)]


def test_solve_cubic_examples(F49):
    c2, c3 = default_context(F7, 2), default_context(F7, 3)
    assert solve_cubic(F7(0), F7(0), F7(-1), c2, c3) == [F7(1), F7(2), F7(4)]
    assert solve_cubic(F7(0), F7(0), F7(-2), c2, c3) == []
    assert solve_cubic(F49(0), F49(0), F49(-2), default_context(F49, 2), default_context(F49, 3)) == []
    F11 = FieldSpec(11)
    # Phi_2(0, X) = (X - 54000)^3 and 54000 = 1 mod 11
    got = solve_cubic(F11(-3), F11(3), F11(-1), default_context(F11, 2), default_context(F11, 3))
    assert got == [F11(1)] * 3


def _brute_roots(field, coeffs):
    out = []
    for x in field.elements():
        # multiplicity by repeated synthetic division
        c = list(coeffs)
        m = 0
        while len(c) > 1:
            acc = field.zero
            quot = []
            for a in reversed(c):
                acc = acc * x + a
                quot.append(acc)
            if not quot[-1].is_zero():
                break
            m += 1
            c = list(reversed(quot[:-1]))
        out += [x] * m
    return sorted(out)


SMALL_FIELDS = [FieldSpec(p) for p in (5, 7, 11, 13, 17, 19)] + [
    smallest_quadratic_extension(p) for p in (5, 7, 11)
]


@pytest.mark.parametrize("field", SMALL_FIELDS, ids=str)
def test_solvers_match_enumeration(field):
    rng = random.Random(field.q)
    c2, c3 = default_context(field, 2), default_context(field, 3)
    for _ in range(300):
        b, c = field.random_element(rng), field.random_element(rng)
        assert Counter(solve_quadratic(b, c, c2)) == Counter(_brute_roots(field, [c, b, field.one]))
        a2, a1, a0 = (field.random_element(rng) for _ in range(3))
        got = solve_cubic(a2, a1, a0, c2, c3)
        assert got == _brute_roots(field, [a0, a1, a2, field.one])


@pytest.mark.parametrize("field", [FieldSpec(7), FieldSpec(13), smallest_quadratic_extension(7)], ids=str)
def test_cubics_from_roots(field):
    # every multiset of three roots, including repeated ones
    c2, c3 = default_context(field, 2), default_context(field, 3)
    elems = list(field.elements())[: min(field.q, 13)]
    for r in itertools.combinations_with_replacement(elems, 3):
        a2 = -(r[0] + r[1] + r[2])
        a1 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2]
        a0 = -(r[0] * r[1] * r[2])
        assert solve_cubic(a2, a1, a0, c2, c3) == sorted(r)


@pytest.mark.parametrize("p", [10007, 2**127 - 1, 2**255 - 19])
def test_root_roundtrip_large(p):
    rng = random.Random(p)
    for field in (FieldSpec(p), smallest_quadratic_extension(p)):
        c2 = default_context(field, 2)
        c3 = default_context(field, 3)
        for _ in range(25):
            y = field.random_element(rng, nonzero=True)
            assert sqrt(y * y, c2) ** 2 == y * y
            x = field.random_element(rng, nonzero=True)
            assert (sqrt(x, c2) is None) == (not is_rth_residue(x, 2))
            if c3 is not None:
                assert rth_root(y**3, c3) ** 3 == y**3
