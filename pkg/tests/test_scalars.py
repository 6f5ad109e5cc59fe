from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from hopfdeform.errors import ConfigError, InputError
from hopfdeform.scalars import (cyclotomic_session, format_scalar, get_field, parse_scalar, qbinom, qfactorial,
                                qint, root_of_unity)

T = sympy.Symbol("t")
ORDERS = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12, 15])
COEFFS = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=1, max_size=6)


def element(F, coeffs):
    total = F.zero
    for k, c in enumerate(coeffs):
        total = total + F.from_rational(c) * F.root(k)
    return total


def sympy_value(E, coeffs):
    """The same element as a sympy polynomial reduced modulo the cyclotomic polynomial."""
    phi = sympy.cyclotomic_poly(E, T)
    poly = sum(sympy.Rational(c.numerator, c.denominator) * T ** k for k, c in enumerate(coeffs))
    return sympy.rem(sympy.expand(poly), phi, T)


def to_sympy(s):
    return sympy.expand(sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * T ** k
                            for k, c in enumerate(s.c)))


@given(ORDERS, COEFFS, COEFFS)
def test_product_matches_sympy_reduction(E, a, b):
    with cyclotomic_session(E) as F:
        x, y = element(F, a), element(F, b)
        phi = sympy.cyclotomic_poly(E, T)
        expected = sympy.rem(sympy.expand(sympy_value(E, a) * sympy_value(E, b)), phi, T)
        assert sympy.expand(to_sympy(x * y) - expected) == 0
        assert sympy.expand(to_sympy(x + y) - sympy_value(E, a) - sympy_value(E, b)) == 0


@given(ORDERS, COEFFS)
def test_inverse_multiplies_back(E, a):
    with cyclotomic_session(E) as F:
        x = element(F, a)
        if x:
            assert x * x.inv() == F.one


@given(ORDERS, st.integers(-40, 40))
def test_roots_have_the_right_order(E, k):
    with cyclotomic_session(E) as F:
        z = F.root(k)
        assert z ** E == F.one
        assert z == F.root(k + E)


@given(ORDERS, COEFFS)
def test_format_parse_round_trip(E, a):
    with cyclotomic_session(E) as F:
        x = element(F, a)
        assert parse_scalar(format_scalar(x)) == x


def test_parse_rejects_foreign_roots():
    with cyclotomic_session(6):
        with pytest.raises(ConfigError):
            parse_scalar("z4")
        with pytest.raises(InputError):
            parse_scalar("x + 1")


def test_root_of_unity_requires_the_session_order():
    with cyclotomic_session(12) as F:
        assert root_of_unity(12, 4) == F.root(4)
        with pytest.raises(ConfigError):
            root_of_unity(3, 1)


def test_q_numbers_at_a_primitive_root():
    with cyclotomic_session(5):
        q = get_field().root(1)
        assert qint(5, q) == get_field().zero
        assert all(qint(j, q) for j in range(1, 5))
        assert qfactorial(4, q) != 0
        for i in range(6):
            assert qbinom(5, i, q) == (1 if i in (0, 5) else 0)


@given(st.integers(0, 7), st.integers(0, 7))
def test_qbinom_pascal_rule(n, i):
    with cyclotomic_session(7) as F:
        q = F.root(1)
        lhs = qbinom(n + 1, i + 1, q)
        rhs = qbinom(n, i, q) + q ** (i + 1) * qbinom(n, i + 1, q)
        assert lhs == rhs
