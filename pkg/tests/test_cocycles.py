import random
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from hopfdeform.cocycles import (CochainComplex, braided_nichols_algebra, certify_zeta_family, compose_mul,
                                 counit_tensor, exp_functional, f_l, graded_cocycle_check, infinitesimal_part,
                                 is_mult_cocycle, kac_identity_holds, kunneth_dim, psi_inverse, psi_iso,
                                 truncated_polynomial_algebra, zeta_cocycle, zeta_commutation_sums)
from hopfdeform.errors import InputError
from hopfdeform.hopfcore import Functional, convolution, counit_functional
from hopfdeform.liftings import cyclic_datum, nichols_algebra
from hopfdeform.scalars import cyclotomic_session, get_field


def two_by_two():
    """Z/2, two generators with q_ii = -1: a dim-8 bosonized quantum linear space."""
    d = cyclic_datum(2, [(1, 1), (1, 1)])
    d.activate()
    return d, nichols_algebra(d)


def z6_plane():
    d = cyclic_datum(6, [(1, 2), (1, 4)])
    d.activate()
    return d, nichols_algebra(d)


def random_functional(A, arity, rng, count=8, normalized=True):
    F = get_field()
    idx = range(1 if normalized else 0, A.dim)
    vals = {}
    for _ in range(count):
        key = tuple(rng.choice(idx) for _ in range(arity))
        vals[key] = F.coerce(rng.randint(-3, 3))
    return Functional(arity, vals)


# ---------------------------------------------------------------- Hochschild complex


def brute_differential_1(f, A):
    F = get_field()
    out = {}
    for a, b in product(range(1, A.dim), repeat=2):
        v = A.counit[a] * f(b) + f(a) * A.counit[b]
        for k, c in A.mul(a, b).items():
            v = v - c * f(k)
        if v:
            out[(a, b)] = v
    return Functional(2, out)


def normalized_part(f, unit=0):
    return Functional(f.arity, {k: v for k, v in f.values.items() if unit not in k})


@given(st.integers(0, 10 ** 6))
def test_differential_matches_the_defining_formulas(seed):
    rng = random.Random(seed)
    with cyclotomic_session(1):
        A = truncated_polynomial_algebra(4)
        C = CochainComplex(A)
        f1 = random_functional(A, 1, rng)
        assert C.differential(f1) == brute_differential_1(f1, A)
        f2 = random_functional(A, 2, rng)
        oracle = (counit_tensor(f2, A, "left") - compose_mul(f2, A, "right")
                  + compose_mul(f2, A, "left") - counit_tensor(f2, A, "right"))
        assert C.differential(f2) == normalized_part(oracle)


@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_differential_squares_to_zero(seed, arity):
    rng = random.Random(seed)
    d, _ = z6_plane()
    B = braided_nichols_algebra(d)
    C = CochainComplex(B)
    f = random_functional(B, arity, rng)
    assert C.differential(C.differential(f)).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_truncated_polynomial_cohomology_is_one_dimensional_in_each_degree(n):
    with cyclotomic_session(1):
        C = CochainComplex(truncated_polynomial_algebra(n))
        assert [C.cohomology_dim(j) for j in range(4)] == [1, 1, 1, 1]


def test_coboundary_preimage_solves_the_equation():
    with cyclotomic_session(1):
        A = truncated_polynomial_algebra(4)
        C = CochainComplex(A)
        g = Functional(1, {(2,): get_field().coerce(5), (3,): get_field().one})
        h = C.coboundary_preimage(C.differential(g))
        assert h is not None and C.differential(h) == C.differential(g)
        assert C.coboundary_preimage(f_l(A, 4)) is None


def test_kunneth_formula_counts():
    assert kunneth_dim([[1, 1, 1], [1, 1, 1]], 2) == 3
    assert kunneth_dim([[1, 2], [1, 3]], 1) == 5


def test_invariant_complex_rejects_non_invariant_cochains():
    d, _ = z6_plane()
    B = braided_nichols_algebra(d)
    C = CochainComplex(B, invariant=True)
    x1 = B.labels.index((1, 0))
    with pytest.raises(InputError):
        C.check_cochain(Functional(1, {(x1,): get_field().one}))


# ---------------------------------------------------------------- multiplicative cocycles


def brute_mult_cocycle(sigma, H):
    """sigma(x_1, y_1) sigma(x_2 y_2, z) = sigma(y_1, z_1) sigma(x, y_2 z_2) on every basis triple."""
    F = get_field()
    for x, y, z in product(range(H.dim), repeat=3):
        lhs = F.zero
        for (x1, x2), a in H.comul(x).items():
            for (y1, y2), b in H.comul(y).items():
                s = sigma(x1, y1)
                if s:
                    for w, c in H.mul(x2, y2).items():
                        lhs = lhs + a * b * c * s * sigma(w, z)
        rhs = F.zero
        for (y1, y2), a in H.comul(y).items():
            for (z1, z2), b in H.comul(z).items():
                s = sigma(y1, z1)
                if s:
                    for w, c in H.mul(y2, z2).items():
                        rhs = rhs + a * b * c * s * sigma(x, w)
        if lhs != rhs:
            return False
    return True


def test_mult_cocycle_check_agrees_with_brute_force():
    d, A = two_by_two()
    F = get_field()
    z1, z2 = zeta_cocycle(A, 0), zeta_cocycle(A, 1)
    good = exp_functional(z1.scale(F.coerce(2)) + z2, A)
    assert bool(is_mult_cocycle(good, A)) and brute_mult_cocycle(good, A)
    rng = random.Random(3)
    for _ in range(4):
        extra = {k: v for k, v in random_functional(A, 2, rng, 3).values.items()
                 if A.degree[k[0]] + A.degree[k[1]] > 0}
        bad = counit_functional(A, 2) + Functional(2, extra)
        assert bool(is_mult_cocycle(bad, A)) == brute_mult_cocycle(bad, A)


def generic_families(A, f):
    """e (x) f, f(1 (x) m) and f (x) e, f(m (x) 1) as arity-3 functionals."""
    return ([counit_tensor(f, A, "left"), compose_mul(f, A, "left")],
            [counit_tensor(f, A, "right"), compose_mul(f, A, "right")])


def commutes(fs, A):
    return all(convolution(a, b, A) == convolution(b, a, A) for a in fs for b in fs)


def test_commuting_family_reduction_matches_arity_three_convolution():
    d, A = two_by_two()
    z = [zeta_cocycle(A, 0), zeta_cocycle(A, 1)]
    cert = certify_zeta_family(A, z)
    left = generic_families(A, z[0])[0] + generic_families(A, z[1])[0]
    right = generic_families(A, z[0])[1] + generic_families(A, z[1])[1]
    assert cert["A_l_commutative"] == commutes(left, A) is True
    assert cert["A_r_commutative"] == commutes(right, A) is True
    rng = random.Random(11)
    for _ in range(3):
        f = Functional(2, {k: v for k, v in random_functional(A, 2, rng, 4).values.items()
                           if A.degree[k[0]] + A.degree[k[1]] > 0})
        cert = certify_zeta_family(A, [f])
        fam_l, fam_r = generic_families(A, f)
        assert cert["A_l_commutative"] == commutes(fam_l, A)
        assert cert["A_r_commutative"] == commutes(fam_r, A)


def test_zeta_is_a_hochschild_cocycle_and_exp_has_unit_degree_zero():
    d, A = z6_plane()
    z = zeta_cocycle(A, 0)
    assert CochainComplex(A).differential(z).is_zero()
    sigma = exp_functional(z, A)
    assert all(v for v in graded_cocycle_check(sigma, A, 6).values())
    part = infinitesimal_part(sigma, A)
    assert part.s == 3 and part.sigma_s == z


def test_exp_and_infinitesimal_part_reject_bad_input():
    d, A = z6_plane()
    with pytest.raises(InputError):
        exp_functional(counit_functional(A, 2), A)
    with pytest.raises(InputError):
        infinitesimal_part(counit_functional(A, 2), A)


# ---------------------------------------------------------------- Psi


def test_psi_is_a_chain_map_on_invariant_cochains():
    d, A = z6_plane()
    B = braided_nichols_algebra(d)
    CB = CochainComplex(B, invariant=True)
    CA = CochainComplex(A)
    rng = random.Random(5)
    for n in (1, 2):
        basis = CB.basis(n)
        for _ in range(4):
            f = Functional(n, {t: get_field().coerce(rng.randint(-2, 2)) for t in rng.sample(basis, min(3, len(basis)))})
            assert CA.differential(psi_iso(f, B, A)) == psi_iso(CB.differential(f), B, A)
            assert psi_inverse(psi_iso(f, B, A), B, A) == f


# ---------------------------------------------------------------- q-identities


def sympy_qbinom(n, k, q):
    if k < 0 or k > n:
        return 0
    num = sympy.prod([1 - q ** (n - i) for i in range(k)])
    den = sympy.prod([1 - q ** (i + 1) for i in range(k)])
    return sympy.cancel(num / den)


def test_kac_identity_as_a_polynomial_identity():
    q = sympy.Symbol("q")
    for i, k in product(range(4), repeat=2):
        for beta in range(i + k + 1):
            lhs = sum(sympy_qbinom(i, s, q) * sympy_qbinom(k, beta - s, q) * q ** (s * (k - beta + s))
                      for s in range(beta + 1))
            assert sympy.expand(sympy.cancel(lhs - sympy_qbinom(i + k, beta, q))) == 0


@pytest.mark.parametrize("E", [2, 3, 4, 5, 6])
def test_kac_identity_at_roots_of_unity(E):
    with cyclotomic_session(E) as F:
        q = F.root(1)
        assert all(kac_identity_holds(i, k, b, q) for i in range(5) for k in range(5) for b in range(i + k + 1))


@pytest.mark.parametrize("N", [3, 4, 5])
def test_zeta_commutation_sums_match_sympy_q_binomials(N):
    """Both sums are Vandermonde convolutions: (s+p choose M)_q for M = N and M = N - r."""
    import cmath
    qs = sympy.Symbol("q")
    z = cmath.exp(2j * cmath.pi / N)
    with cyclotomic_session(N) as F:
        q = F.root(1)

        def numeric(x):
            return sum(complex(float(c)) * z ** k for k, c in enumerate(x.c))

        for r, s, p in product(range(1, N), range(N), range(N)):
            a, b = zeta_commutation_sums(N, r, s, p, q)
            for got, M in ((a, N), (b, N - r)):
                expected = complex(sympy.N(sympy.sympify(sympy_qbinom(s + p, M, qs)).subs(qs, sympy.exp(2 * sympy.pi * sympy.I / N))))
                assert abs(numeric(got) - expected) < 1e-8
            if r + s + p == 2 * N:
                assert (a, b) == (F.one, F.one)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_f_l_beyond_n_is_not_a_cocycle(n):
    # (x, x, x^{l-2}) picks up -f(x^2, x^{l-2}) and nothing else once x^{l-1} = 0
    with cyclotomic_session(1):
        A = truncated_polynomial_algebra(n)
        C = CochainComplex(A)
        assert all(C.differential(f_l(A, l)).is_zero() for l in range(2, n + 1))
        assert not any(C.differential(f_l(A, l)).is_zero() for l in range(n + 1, 2 * n - 1))
