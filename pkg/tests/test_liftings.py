import pytest

from hopfdeform.errors import ConfigError, InputError
from hopfdeform.fixtures import theta_checks
from hopfdeform.liftings import (LiftingParams, build_K_and_f, build_irrep, build_lifting,
                                 coproduct_coefficients, cyclic_datum, dual_invariants, k_generators,
                                 lifting_from_f, linked_plane_datum, linked_plane_params, normalize,
                                 small_linked_datum,
                                 taft_lifting_datum, theta, u_coefficients, z_monomial)
from hopfdeform.scalars import cyclotomic_session, get_field


def test_taft_lifting_relations():
    d = taft_lifting_datum(3, 2)
    d.activate()
    H = build_lifting(d, LiftingParams([2]))
    F = get_field()
    assert H.dim == 18 and H.verification["ok"]
    g3 = H.index_of[((0,), (3,))]
    assert normalize(H, "x1 x1 x1") == {0: F.coerce(-2), g3: F.coerce(2)}
    xg = H.index_of[((1,), (1,))]
    assert normalize(H, "g x1") == {xg: d.q(0, 0)}


def test_relabelling_generators_gives_an_isomorphic_lifting():
    d = linked_plane_datum(3)
    d.activate()
    p = LiftingParams([1, 2], {(0, 1): 3})
    H = build_lifting(d, p, verify=False)
    Hr = build_lifting(d.relabel((1, 0)), p.relabel((1, 0), d), verify=False)
    F = get_field()

    def phi(k):
        """x1 -> x2', x2 -> x1' on the PBW word x1^a x2^b g^c."""
        (a, b), (c,) = H.labels[k]
        return normalize(Hr, " ".join(["x2"] * a + ["x1"] * b + [f"g^{c}"]))

    def phi_vec(v):
        out = {}
        for k, c in v.items():
            for m, e in phi(k).items():
                out[m] = out.get(m, F.zero) + c * e
        return {m: c for m, c in out.items() if c}

    for i in range(0, H.dim, 5):
        for j in range(0, H.dim, 3):
            assert phi_vec(H.mul(i, j)) == Hr.mul_vec(phi(i), phi(j))


def test_forced_zero_on_linking_parameter():
    d = cyclic_datum(6, [(1, 2), (1, 2)], require_qls=False)
    d.activate()
    H = build_lifting(d, LiftingParams([0, 0], {(0, 1): 1}), verify=False)
    assert [f["param"] for f in H.forced_zeros] == ["a12"]
    assert H.params.link == {}


def test_parameter_count_is_validated():
    d = taft_lifting_datum(3, 2)
    d.activate()
    with pytest.raises(InputError):
        build_lifting(d, LiftingParams([1, 1]), verify=False)


def test_k_generator_names_and_grades():
    d = linked_plane_datum(3)
    d.activate()
    names = [z.name for z in k_generators(d)]
    assert names == ["z1", "z2", "z12"]


@pytest.mark.parametrize("values", [[1], [0], [-3]])
def test_u_of_f_equals_h_of_a_rank_one(values):
    d = taft_lifting_datum(3, 2)
    d.activate()
    U, cert = lifting_from_f(d, values)
    assert cert["ok"], cert["first_mismatch"]


def test_theta_formula_and_multiplicativity_with_a_link():
    d = linked_plane_datum(3)
    d.activate()
    rep = theta_checks(d, [1, 2, 1], [0, 1, -1])
    assert rep["ok"]


def test_dual_grouplikes_detect_linking():
    d = linked_plane_datum(3)
    d.activate()
    linked = dual_invariants(build_lifting(d, linked_plane_params(3, 1, 1)))
    graded = dual_invariants(build_lifting(d, linked_plane_params(3, 0, 0)))
    assert linked["grouplikes_of_dual"] == 1 and not linked["dual_pointed"]
    assert graded["grouplikes_of_dual"] == 9 and graded["dual_pointed"]


def matmul(A, B, zero):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), zero) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("p", [3, 5])
def test_irreps_satisfy_the_relations_recomputed_independently(p):
    with cyclotomic_session(p) as F:
        for r in range(1, p + 1):
            rep = build_irrep(p, r)
            G, X, Y, xi = rep["G"], rep["X"], rep["Y"], rep["xi"]
            xy = matmul(X, Y, F.zero)
            yx = matmul(Y, X, F.zero)
            gg = matmul(G, G, F.zero)
            for i in range(r):
                for j in range(r):
                    assert xy[i][j] - xi.inv() * yx[i][j] == gg[i][j] - (1 if i == j else 0)
            gx = matmul(G, X, F.zero)
            xg = matmul(X, G, F.zero)
            assert all(gx[i][j] == xi * xg[i][j] for i in range(r) for j in range(r))
            assert rep["span_dim"] == r * r


def test_irreps_need_the_roots_of_unity():
    with cyclotomic_session(4):
        with pytest.raises(ConfigError):
            build_irrep(3, 2)
    with cyclotomic_session(3):
        with pytest.raises(InputError):
            build_irrep(3, 4)


def test_small_linked_lifting_dimension():
    d = small_linked_datum(3)
    d.activate()
    H = build_lifting(d, LiftingParams([0, 0], {(0, 1): 1}))
    assert H.dim == 27 and H.verification["ok"]


def test_u_recursion_at_height_two_differs_from_theta_constant_term():
    # Z/9, q of order 3, h = g^3 with h^2 != 1; by hand, Delta(z^2) has t^2_{11} = 2, so
    # u_2 = f^2(1 - h^2) + 2f * f(1 - h) = f^2(3 - 2h - h^2) while Theta(z^2) has z-free part f^2(1 - h)^2
    d = cyclic_datum(9, [(1, 3)])
    d.activate()
    F = get_field()
    K = build_K_and_f(d, LiftingParams([5]), degree_cap=6)
    assert coproduct_coefficients(K, (2,)) == {((1,), (1,)): F.coerce(2)}
    assert u_coefficients(K, (2,)) == {(0,): F.coerce(75), (3,): F.coerce(-50), (6,): F.coerce(-25)}
    th = theta(K, z_monomial(K, (2,)))
    constant = {g: c for (w, g), c in th.items() if not w}
    assert constant == {(0,): F.coerce(25), (3,): F.coerce(-50), (6,): F.coerce(25)}
