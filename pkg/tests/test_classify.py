import math
import random

import pytest

from ssid.arith import FieldSpec, first_nonresidue, is_probable_prime, smallest_quadratic_extension
from ssid.classify import (
    DETERMINISTIC,
    ORDINARY,
    PROBABLY_SUPERSINGULAR,
    SUPERSINGULAR,
    ClassifierConfig,
    classify,
    footnote_rule,
    hasse_coefficient,
    identify,
    identify_fp_shortcut,
    identify_small_characteristic,
    legendre_curve,
    modpoly_primes,
    monte_carlo,
    monte_carlo_bound,
    oracle_hasse,
    oracle_legendre,
    prove_modpoly,
    walk_length,
)
from ssid.curve import Curve, curve_from_j, j_invariant
from ssid.errors import (
    BadLambda,
    ExcludedJInvariant,
    FieldMismatch,
    MissingNonResidue,
    NotDefinedOverPrimeField,
    PrimeTooLargeForOracle,
)


def det(p):
    return ClassifierConfig.deterministic_for(smallest_quadratic_extension(p))


def test_oracle_hasse_examples():
    assert oracle_hasse(Curve(FieldSpec(5), 0, 1))
    assert oracle_hasse(Curve(FieldSpec(7), 1, 0))
    assert not oracle_hasse(Curve(FieldSpec(7), 0, 2))
    assert hasse_coefficient(Curve(FieldSpec(7), 0, 2)) == FieldSpec(7)(6)
    with pytest.raises(PrimeTooLargeForOracle):
        oracle_hasse(Curve(FieldSpec(1048583), 1, 0))


def test_oracle_legendre_examples():
    K = smallest_quadratic_extension(5)
    F5 = FieldSpec(5)
    assert not oracle_legendre(F5(2))
    # roots of lambda^2 - lambda + 1 live in F_25
    roots = [x for x in K.elements() if (x * x - x + 1).is_zero()]
    assert len(roots) == 2
    assert all(oracle_legendre(r) for r in roots)
    for bad in (0, 1):
        with pytest.raises(BadLambda):
            oracle_legendre(F5(bad))


def test_legendre_matches_hasse():
    for p in range(5, 50):
        if not is_probable_prime(p):
            continue
        F = FieldSpec(p)
        for lam in range(2, p):
            assert oracle_legendre(F(lam)) == oracle_hasse(legendre_curve(F(lam)))


def test_monte_carlo_examples():
    one = ClassifierConfig(mc_repetitions=1)
    v = monte_carlo(Curve(FieldSpec(11), 1, 0), one)
    assert v.result == PROBABLY_SUPERSINGULAR and v.steps == 1
    v = monte_carlo(Curve(FieldSpec(7), 0, 2), one)
    assert v.result == ORDINARY and v.method == "monte_carlo"
    assert monte_carlo_bound(121) == pytest.approx(0.88)


def test_modpoly_primes():
    assert modpoly_primes(7) == [2, 3, 5]
    assert modpoly_primes(5) == [2, 3, 7]  # 2*3 = 6 < 10
    assert modpoly_primes(13) == [2, 3, 5]


def test_prove_modpoly_examples():
    F13 = FieldSpec(13)
    assert prove_modpoly(F13(5)).result == SUPERSINGULAR
    assert prove_modpoly(F13(3)).result == ORDINARY
    for j in (0, 1728):
        with pytest.raises(ExcludedJInvariant):
            prove_modpoly(F13(j))


def test_identify_examples():
    v = identify(Curve(FieldSpec(1009), 1, 0), det(1009))
    assert v.result == ORDINARY
    v = identify(Curve(FieldSpec(1019), 1, 0), det(1019))
    assert v.result == SUPERSINGULAR
    assert walk_length(1019) == 10
    assert v.steps == 11 and v.terminated_at == "complete"
    v = identify(Curve(FieldSpec(11), 0, 1), det(11))
    assert v.result == SUPERSINGULAR


def test_identify_step3_label():
    F = FieldSpec(1009)
    for c in range(2, 200):
        E = curve_from_j(F, F(c))
        v = identify(E, det(1009))
        if v.terminated_at == "step3":
            assert v.result == ORDINARY and v.steps == 0
            return
    pytest.fail("no step-3 termination among 200 curves")


def test_identify_fp_shortcut_examples():
    E = Curve(FieldSpec(1019), 1, 0)
    assert identify_fp_shortcut(E, det(1019)).result == SUPERSINGULAR
    K = smallest_quadratic_extension(1019)
    with pytest.raises(NotDefinedOverPrimeField):
        identify_fp_shortcut(curve_from_j(K, K(3, 1)), det(1019))


def test_small_characteristic():
    assert identify_small_characteristic(2, True).result == SUPERSINGULAR
    assert identify_small_characteristic(3, False).result == ORDINARY


def test_config_validation():
    with pytest.raises(MissingNonResidue):
        ClassifierConfig(mode=DETERMINISTIC)
    with pytest.raises(FieldMismatch):
        ClassifierConfig.deterministic_for(FieldSpec(7))
    K = smallest_quadratic_extension(1009)
    wrong = smallest_quadratic_extension(1013)
    cfg = ClassifierConfig(DETERMINISTIC, first_nonresidue(wrong, 2), first_nonresidue(wrong, 3))
    with pytest.raises(FieldMismatch):
        identify(curve_from_j(K, K(5)), cfg)


def test_footnote_rule():
    assert footnote_rule(11, FieldSpec(11)(0)) is True
    assert footnote_rule(13, FieldSpec(13)(0)) is False
    assert footnote_rule(1019, FieldSpec(1019)(1728)) is True
    assert footnote_rule(1009, FieldSpec(1009)(1728)) is False
    assert footnote_rule(1009, FieldSpec(1009)(5)) is None


def test_facade_dispatch():
    E = Curve(FieldSpec(1019), 1, 0)
    assert classify(E).method == "volcano"
    assert classify(E, "oracle").result == SUPERSINGULAR
    assert classify(E, "modpoly").terminated_at == "footnote"
    assert classify(E, "mc").result == PROBABLY_SUPERSINGULAR
    with pytest.raises(ValueError):
        classify(E, "magic")


def test_mode_independence_and_twists(rng):
    for p in (101, 103, 107, 109, 113, 127):
        F = FieldSpec(p)
        K = smallest_quadratic_extension(p)
        for field in (F, K):
            for _ in range(40):
                j = field.random_element(rng)
                E = curve_from_j(field, j)
                ref = identify(E, det(p))
                for seed in (1, 2):
                    assert identify(E, ClassifierConfig(seed=seed)).result == ref.result
                u = field.random_element(rng, nonzero=True)
                twist = Curve(field, E.A * u**4, E.B * u**6)
                assert j_invariant(twist) == j
                assert identify(twist, det(p)).result == ref.result


def test_walk_never_exceeds_bound(rng):
    for p in (1019, 10007, 65537):
        m = walk_length(p)
        F = FieldSpec(p)
        for _ in range(100):
            v = identify(curve_from_j(F, F.random_element(rng)), det(p))
            assert v.steps <= m + 1


def _coset_reps(K, n):
    """One element of each coset of (K*)^n in K*."""
    reps = {}
    for c in K.elements():
        if not c.is_zero():
            reps.setdefault(c ** ((K.q - 1) // math.gcd(n, K.q - 1)), c)
    return list(reps.values())


def _twists(E):
    """Representatives of every twist class of E."""
    K = E.field
    if E.A.is_zero():
        return [Curve(K, 0, E.B * c) for c in _coset_reps(K, 6)]
    if E.B.is_zero():
        return [Curve(K, E.A * c, 0) for c in _coset_reps(K, 4)]
    return [Curve(K, E.A * c**2, E.B * c**3) for c in _coset_reps(K, 2)]


def test_monte_carlo_over_extension_never_rejects_supersingular():
    # every twist, including the sextic and quartic ones of j = 0 and 1728,
    # whose orders over F_{p^2} are p^2 +- p + 1 and p^2 + 1
    for p in (5, 7, 11, 13, 17, 19, 23):
        K = smallest_quadratic_extension(p)
        for j in K.elements():
            E = curve_from_j(K, j)
            if not oracle_hasse(E):
                continue
            for T in _twists(E):
                assert monte_carlo(T, ClassifierConfig(mc_repetitions=3)).result == PROBABLY_SUPERSINGULAR


def test_verdict_serialisation():
    v = identify(Curve(FieldSpec(1019), 1, 0), ClassifierConfig(seed=9))
    d = v.to_dict()
    assert d == {"result": "supersingular", "method": "volcano", "steps": 11,
                 "terminated_at": "complete", "seed": 9}


def test_las_vegas_reproducible():
    K = smallest_quadratic_extension(2**61 - 1)
    E = curve_from_j(K, K.random_element(random.Random(5)))
    assert identify(E, ClassifierConfig(seed=3)) == identify(E, ClassifierConfig(seed=3))
