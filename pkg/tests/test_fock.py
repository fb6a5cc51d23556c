import math
from fractions import Fraction

import pytest

from loopstar.fock import (FLOAT, RATIONAL, FockVector, HbarSeries, annihilate,
                           annihilate_general, annihilate_power, contract_channels,
                           wick_exponential, wick_product)
from loopstar.modes import ModeIndex, MultiIndex

M1 = ModeIndex(1, 1)
M2 = ModeIndex(1, 2)
D1 = ModeIndex(1, 1, dual=True)


def mono(pairs, coeff=Fraction(1)):
    return FockVector({MultiIndex(tuple(pairs)): coeff})


def test_constructor_validates_and_caps():
    with pytest.raises(TypeError):
        FockVector({MultiIndex.single(M1): 0.5})          # float into rational mode
    capped = FockVector({MultiIndex(((M1, 3),)): Fraction(1),
                         MultiIndex.single(M2): Fraction(2)}, max_degree=2)
    assert capped.degree() == 1
    assert len(capped) == 1


def test_zero_unit_monomial():
    assert FockVector.zero().is_zero()
    assert FockVector.unit().vacuum_component() == Fraction(1)
    m = FockVector.monomial(MultiIndex.single(M1), Fraction(2, 3))
    assert m.degree() == 1
    assert not m.is_zero()


def test_equality_ignores_cap_but_not_scalar_mode():
    a = FockVector({MultiIndex.single(M1): Fraction(1)})
    b = FockVector({MultiIndex.single(M1): Fraction(1)}, max_degree=7)
    assert a == b
    assert a != a.to_float()
    with pytest.raises(TypeError):
        hash(a)


def test_vector_space_operations():
    a = mono([(M1, 1)], Fraction(1, 2))
    b = mono([(M1, 1)], Fraction(1, 3))
    assert (a + b) == mono([(M1, 1)], Fraction(5, 6))
    assert (a - a).is_zero()
    assert (-a) == a.scale(-1)
    assert a.scale(Fraction(2)) == mono([(M1, 1)], Fraction(1))


def test_wick_product_is_union_of_exponents():
    a = mono([(M1, 1)], Fraction(2))
    b = mono([(M1, 2), (M2, 1)], Fraction(3))
    p = wick_product(a, b)
    assert p == mono([(M1, 3), (M2, 1)], Fraction(6))
    unit = FockVector.unit()
    assert wick_product(unit, b) == b
    assert wick_product(a, FockVector.zero()).is_zero()


def test_product_respects_quotient_cap():
    a = mono([(M1, 2)])
    b = mono([(M1, 2)])
    full = wick_product(a, b)
    capped = wick_product(a, b, max_degree=3)
    assert capped.is_zero()
    assert full.truncate(3) == capped


def test_annihilate_falling_factorial():
    f = mono([(M1, 3)])
    assert annihilate(M1, f) == mono([(M1, 2)], Fraction(3))
    assert annihilate(M2, f).is_zero()
    assert annihilate_power(M1, 3, f) == FockVector.unit().scale(Fraction(6))
    assert annihilate_power(M1, 4, f).is_zero()
    # duals are independent slots
    g = mono([(M1, 1), (D1, 2)])
    assert annihilate(D1, g) == mono([(M1, 1), (D1, 1)], Fraction(2))


def test_annihilate_general_is_linear():
    f = mono([(M1, 2), (M2, 1)])
    h = {M1: Fraction(2), M2: Fraction(-1)}
    got = annihilate_general(h, f)
    want = annihilate(M1, f).scale(2) + annihilate(M2, f).scale(-1)
    assert got == want


def test_contract_channels_matches_brute_force_r2():
    F = mono([(M1, 2), (M2, 1)], Fraction(1, 2))
    G = mono([(D1, 3)], Fraction(4))
    ch = [(M1, D1, Fraction(5))]
    got = contract_channels(F, G, ch, 2)
    # one channel taken twice: weight 2!/2! * 5^2, two annihilations each side
    want = wick_product(annihilate(M1, annihilate(M1, F)),
                        annihilate(D1, annihilate(D1, G))).scale(Fraction(25))
    assert got == want


def test_contract_channels_multinomial_weight():
    F = mono([(M1, 1), (M2, 1)])
    G = mono([(D1, 1), (ModeIndex(1, 2, dual=True), 1)])
    D2 = ModeIndex(1, 2, dual=True)
    ch = [(M1, D1, Fraction(2)), (M2, D2, Fraction(3))]
    got = contract_channels(F, G, ch, 2)
    # distinct channels once each: weight 2!/(1!1!) * 2 * 3 = 12, fully contracted
    assert got == FockVector.unit().scale(Fraction(12))


def test_wick_exponential_coefficients_and_validation():
    gamma = {M1: Fraction(1, 2)}
    phi = wick_exponential(gamma, {}, 4)
    for n in range(5):
        key = MultiIndex(((M1, n),)) if n else MultiIndex()
        assert phi.terms.get(key, Fraction(0)) == Fraction(1, 2) ** n / math.factorial(n)
    assert phi.max_degree == 4
    with pytest.raises(ValueError):
        wick_exponential({D1: Fraction(1)}, {}, 3)      # dual key on the primal side
    with pytest.raises(ValueError):
        wick_exponential({}, {M1: Fraction(1)}, 3)      # primal key on the dual side


def test_wick_exponential_two_modes_cross_terms():
    gamma = {M1: Fraction(1), M2: Fraction(2)}
    phi = wick_exponential(gamma, {}, 2)
    assert phi.terms[MultiIndex(((M1, 1), (M2, 1)))] == Fraction(2)
    assert phi.terms[MultiIndex(((M2, 2),))] == Fraction(2)


def test_series_cauchy_product():
    a0, a1 = mono([(M1, 1)]), mono([(M2, 1)], Fraction(2))
    b0, b1 = mono([(M1, 1)], Fraction(3)), FockVector.unit()
    S = HbarSeries([a0, a1])
    T = HbarSeries([b0, b1])
    P = S.wick_mul(T)
    assert P.coefficient(0) == wick_product(a0, b0)
    assert P.coefficient(1) == wick_product(a0, b1) + wick_product(a1, b0)
    assert P.order == 1


def test_series_helpers():
    F = mono([(M1, 2)])
    S = HbarSeries.from_vector(F, 2)
    assert S.coefficient(0) == F
    assert S.coefficient(1).is_zero() and S.coefficient(2).is_zero()
    assert S.truncate_degree(1).coefficient(0).is_zero()
    Z = HbarSeries.zero(2)
    assert S + Z == S
    assert (S - S) == Z
    with pytest.raises(ValueError):
        S._check_compatible(HbarSeries.zero(3))
