from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hecke_workbench.laurent import (
    HalfLaurent, ModC, ModP, NotIntegralError, Real, abs_lt_one, is_prime, specialize,
)

half_laurents = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=5).map(HalfLaurent)
nonneg = st.dictionaries(st.integers(0, 8), st.integers(-5, 5), max_size=5).map(HalfLaurent)


@given(half_laurents, half_laurents, half_laurents)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == HalfLaurent()


@given(half_laurents)
def test_print_parse_round_trip(a):
    assert HalfLaurent.parse(str(a)) == a


@settings(max_examples=500)
@given(nonneg, nonneg, st.sampled_from([2, 3, 5, 7]))
def test_mod_p_is_a_homomorphism(a, b, p):
    t = ModP(p)
    assert specialize(a + b, t) == (specialize(a, t) + specialize(b, t)) % p
    assert specialize(a * b, t) == specialize(a, t) * specialize(b, t) % p


@settings(max_examples=500)
@given(half_laurents, half_laurents, st.sampled_from([(2, 1), (3, 2), (5, 3), (7, 6)]))
def test_mod_c_is_a_homomorphism(a, b, cr):
    t = ModC(*cr)
    c = cr[0]
    assert specialize(a + b, t) == (specialize(a, t) + specialize(b, t)) % c
    assert specialize(a * b, t) == specialize(a, t) * specialize(b, t) % c


@given(half_laurents, half_laurents, st.sampled_from([4, 9, Fraction(9, 4)]))
def test_real_is_a_homomorphism(a, b, q0):
    t = Real(q0)
    assert specialize(a * b, t) == specialize(a, t) * specialize(b, t)


def test_mod_p_rejects_negative_exponents():
    with pytest.raises(NotIntegralError):
        specialize(HalfLaurent.q_power(-1), ModP(3))


def test_specialization_targets_validate():
    with pytest.raises(ValueError):
        ModP(4)
    with pytest.raises(ValueError):
        ModC(3, 3)
    with pytest.raises(ValueError):
        Real(1)


def test_q_half_squares_to_q():
    h = HalfLaurent.q_half()
    assert h * h == HalfLaurent.q_power(1)
    assert specialize(h, Real(4)) == 2


def test_inverse_and_exact_division():
    m = HalfLaurent.monomial(3, -1)
    assert m * m.inverse() == HalfLaurent.const(1)
    q = HalfLaurent.q_power(1)
    two_q = HalfLaurent.q_power(1, 2)
    assert ((q + 1) * two_q).exact_div(two_q) == q + 1
    with pytest.raises(ArithmeticError):
        (q + 1).exact_div(two_q)
    with pytest.raises(ZeroDivisionError):
        two_q.inverse()
    with pytest.raises(ValueError):
        (q + 1).inverse()


@pytest.mark.parametrize("text, verdict", [
    ("1*q^(-1/2)", "always"),
    ("-1*q^(-4/2)", "always"),
    ("1*q^(0/2)", "never"),
    ("-1*q^(0/2)", "never"),
    ("1*q^(2/2)", "never"),
    ("1*q^(-1/2) + 1*q^(-2/2)", "depends"),
])
def test_abs_lt_one(text, verdict):
    assert abs_lt_one(HalfLaurent.parse(text)) == verdict


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
