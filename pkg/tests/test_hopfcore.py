import random

import pytest
from hypothesis import given, strategies as st

from hopfdeform.errors import InputError, PropertyFailure
from hopfdeform.groups import FiniteAbelianGroup
from hopfdeform.hopfcore import (Functional, convolution, convolution_inverse, coradical_filtration,
                                 counit_functional, generates, group_algebra, grouplikes_of_dual,
                                 matrix_algebra, parse_pbw_label, radical, render_pbw_label,
                                 verify_hopf_axioms)
from hopfdeform.liftings import LiftingParams, build_lifting, cyclic_datum, nichols_algebra
from hopfdeform.scalars import cyclotomic_session


def taft():
    """x^3 = 0, g^6 = 1, gx = q xg with q of order 3."""
    d = cyclic_datum(6, [(1, 2)])
    d.activate()
    return d, nichols_algebra(d)


def test_group_algebra_is_a_hopf_algebra_with_dual_group():
    G = FiniteAbelianGroup([2, 3])
    with cyclotomic_session(6):
        H = group_algebra(G)
        assert verify_hopf_axioms(H, mode="full")["ok"]
        assert len(grouplikes_of_dual(H)) == G.order
        assert radical(H) == []


def test_matrix_algebra_is_semisimple_and_truncated_polynomials_are_not():
    from hopfdeform.cocycles import truncated_polynomial_algebra
    with cyclotomic_session(1):
        assert radical(matrix_algebra(2)) == []
        assert len(radical(truncated_polynomial_algebra(4))) == 3


def test_broken_antipode_is_reported_with_witness():
    G = FiniteAbelianGroup([3])
    with cyclotomic_session(3):
        H = group_algebra(G)
        H.antipode = [H.basis_vec(i) for i in range(H.dim)]
        rep = verify_hopf_axioms(H, mode="full")
        assert not rep["ok"]
        assert rep["checks"]["antipode"]["witness"]["args"] == ["g"]


def test_generator_reduction_agrees_with_full_scan():
    d, A = taft()
    reduced = verify_hopf_axioms(A, mode="full", reduction="generators")
    plain = verify_hopf_axioms(A, mode="full", reduction="none")
    assert reduced["ok"] and plain["ok"]
    assert reduced["checks"]["associativity"]["checked"] < plain["checks"]["associativity"]["checked"]

    broken = A.with_structure(mul_fn=lambda i, j: A.mul(j, i))
    broken.antipode = A.antipode
    assert not verify_hopf_axioms(broken, mode="full", reduction="generators")["ok"]
    assert not verify_hopf_axioms(broken, mode="full", reduction="none")["ok"]


def test_sampled_mode_is_deterministic_for_a_seed():
    d, A = taft()
    one = verify_hopf_axioms(A, mode="sampled", seed=7, count=50)
    two = verify_hopf_axioms(A, mode="sampled", seed=7, count=50)
    assert one == two and one["seed"] == 7 and one["ok"]


def test_generation_check():
    d, A = taft()
    x = A.pbw_gens[0][0]
    g = A.index[((0,), (1,))]
    g2 = A.index[((0,), (2,))]
    assert generates(A, [x, g])
    assert not generates(A, [x, g2])


def test_coradical_filtration_of_a_graded_lifting():
    d, A = taft()
    assert coradical_filtration(A)["dims"] == [6, 12, 18]


@given(st.lists(st.integers(0, 4), min_size=1, max_size=3), st.lists(st.integers(0, 6), min_size=1, max_size=2))
def test_pbw_label_round_trip(exps, g):
    label = (tuple(exps), tuple(g))
    assert parse_pbw_label(render_pbw_label(label), len(exps), len(g)) == label


def test_pbw_parser_rejects_unknown_letters():
    with pytest.raises(InputError):
        parse_pbw_label("x3 g", 2, 1)
    with pytest.raises(InputError):
        parse_pbw_label("y1", 1, 1)


def random_unipotent(A, rng):
    """eps (x) eps plus random values on pairs of positive total degree."""
    F = A.counit[0].F
    f = counit_functional(A, 2)
    vals = dict(f.values)
    for _ in range(6):
        a, b = rng.randrange(A.dim), rng.randrange(A.dim)
        if A.degree[a] + A.degree[b] > 0:
            vals[(a, b)] = vals.get((a, b), F.zero) + F.coerce(rng.randint(-3, 3))
    return Functional(2, vals)


@given(st.integers(0, 10 ** 6))
def test_convolution_inverse_multiplies_back(seed):
    d, A = taft()
    f = random_unipotent(A, random.Random(seed))
    inv = convolution_inverse(f, A)
    unit = counit_functional(A, 2)
    assert convolution(f, inv, A) == unit == convolution(inv, f, A)


def test_convolution_inverse_rejects_non_unipotent():
    d, A = taft()
    f = counit_functional(A, 2).scale(A.counit[0].F.coerce(2))
    with pytest.raises(PropertyFailure):
        convolution_inverse(f, A)


def test_liftings_with_parameters_pass_and_forced_zeros_are_recorded():
    d = cyclic_datum(6, [(1, 2)])
    d.activate()
    H = build_lifting(d, LiftingParams([1]))
    assert H.verification["ok"] and H.forced_zeros == []
    d3 = cyclic_datum(3, [(1, 1)])
    d3.activate()
    H3 = build_lifting(d3, LiftingParams([1]), verify=False)
    assert H3.forced_zeros[0]["reason"] == "g^n = 1" and H3.forced_zeros[0]["requested_nonzero"]
    assert not H3.params.diag[0]
