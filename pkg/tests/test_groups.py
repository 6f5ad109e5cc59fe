import cmath

import pytest
from hypothesis import given, strategies as st

from hopfdeform.errors import ConfigError, InputError
from hopfdeform.groups import FiniteAbelianGroup, annihilator, generated_subgroup
from hopfdeform.scalars import cyclotomic_session

GROUPS = st.lists(st.integers(1, 6), min_size=1, max_size=3)


@st.composite
def group_and_elements(draw, count=2):
    orders = draw(GROUPS)
    G = FiniteAbelianGroup(orders)
    elems = [tuple(draw(st.integers(0, m - 1)) for m in orders) for _ in range(count)]
    return G, elems


def numeric_character(orders, chi, g):
    return cmath.exp(2j * cmath.pi * sum(c * x / m for c, x, m in zip(chi, g, orders)))


@given(group_and_elements(3))
def test_character_values_match_complex_exponentials(data):
    G, (chi, g, h) = data
    with cyclotomic_session(G.exponent) as F:
        value = G.char_eval(chi, g)
        z = cmath.exp(2j * cmath.pi / F.E)
        approx = sum(complex(float(c)) * z ** k for k, c in enumerate(value.c))
        assert abs(approx - numeric_character(G.orders, chi, g)) < 1e-9
        assert G.char_eval(chi, G.mul(g, h)) == value * G.char_eval(chi, h)


@given(group_and_elements(2))
def test_subgroup_and_annihilator_orders_multiply_to_the_group_order(data):
    G, gens = data
    H = generated_subgroup(G, gens)
    assert G.order % len(H) == 0
    assert len(H) * len(annihilator(G, H)) == G.order
    assert all(G.mul(a, b) in H for a in H for b in H)


def test_element_validation():
    G = FiniteAbelianGroup([4, 6])
    assert G.element((5, -1)) == (1, 5)
    assert G.exponent == 12
    with pytest.raises(InputError):
        G.element((1,))
    with pytest.raises(InputError):
        FiniteAbelianGroup([0])


def test_character_needs_field_of_matching_order():
    G = FiniteAbelianGroup([4])
    with cyclotomic_session(6):
        with pytest.raises(ConfigError):
            G.char_eval((1,), (1,))
