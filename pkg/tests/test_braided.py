from itertools import permutations, product

import pytest
from hypothesis import given, strategies as st

from hopfdeform.braided import (DiagonalDatum, apply_operator, braid_generator_action, braided_commutator, compose,
                                identity_operator, letter, nichols_relations, quantum_symmetrizer,
                                reduced_word, shuffle_piece, symmetrizer_image_dim, tensor_operator)
from hopfdeform.errors import BudgetError, InputError
from hopfdeform.braided import set_size_budget
from hopfdeform.groups import FiniteAbelianGroup
from hopfdeform.linalg import rank


def datum(orders, gens, qls=True):
    d = DiagonalDatum(FiniteAbelianGroup(orders), tuple(g for g, _ in gens), tuple(c for _, c in gens), qls)
    d.activate()
    return d


DATA = [([6], [((1,), (2,)), ((1,), (4,))], True),
        ([3, 3], [((1, 0), (1, 1)), ((0, 1), (-1, 1))], True),
        ([4], [((1,), (1,)), ((2,), (1,))], False)]


def small_data():
    """Each datum is activated as the generator reaches it."""
    for orders, gens, qls in DATA:
        yield datum(orders, gens, qls)


def nth_datum(k):
    return datum(*DATA[k])


def closed_form_symmetrizer(d, word):
    """sum over tau of prod_{crossings} q_{w_a w_b} tau(w): each crossing of a letter past a letter to its right."""
    n = len(word)
    out = {}
    for perm in permutations(range(n)):
        new = [None] * n
        for a, p in enumerate(perm):
            new[p] = word[a]
        e = sum(d.qexp[word[a]][word[b]] for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        key = tuple(new)
        out[key] = out.get(key, 0) + d.root(e)
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_symmetrizer_matches_closed_form(n):
    for d in small_data():
        S = quantum_symmetrizer(d, n)
        for word in product(range(d.theta), repeat=n):
            assert S[word] == closed_form_symmetrizer(d, word)


def test_reduced_word_conventions_give_the_same_operator():
    d = nth_datum(1)
    assert quantum_symmetrizer(d, 3, "bubble") == quantum_symmetrizer(d, 3, "selection")


@given(st.permutations(range(5)))
def test_reduced_word_realises_the_permutation(perm):
    labels = list(range(5))
    seq = reduced_word(perm)
    pos = list(perm)
    for s in seq:
        pos[s - 1], pos[s] = pos[s], pos[s - 1]
    assert pos == labels
    inversions = sum(1 for i in range(5) for j in range(i + 1, 5) if perm[i] > perm[j])
    assert len(seq) == inversions


@given(st.lists(st.integers(0, 1), min_size=3, max_size=3))
def test_braid_relation(word):
    d = nth_datum(0)
    t = {tuple(word): d.root(0)}
    lhs = braid_generator_action(d, 1, braid_generator_action(d, 2, braid_generator_action(d, 1, t)))
    rhs = braid_generator_action(d, 2, braid_generator_action(d, 1, braid_generator_action(d, 2, t)))
    assert lhs == rhs


@pytest.mark.parametrize("i,j", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_shuffle_factorisation(i, j):
    d = nth_datum(0)
    lhs = compose(shuffle_piece(d, i, j), tensor_operator(quantum_symmetrizer(d, i), quantum_symmetrizer(d, j), i))
    assert lhs == quantum_symmetrizer(d, i + j)


def test_kernel_and_image_dimensions_are_complementary():
    for d in small_data():
        for n in (2, 3):
            assert len(nichols_relations(d, n)) + symmetrizer_image_dim(d, n) == d.theta ** n


def test_nichols_relations_are_killed_by_the_full_symmetrizer():
    for d in small_data():
        for n in (2, 3):
            S = quantum_symmetrizer(d, n)
            ker = nichols_relations(d, n)
            assert all(not any(apply_operator(S, v).values()) for v in ker)
            assert rank(ker) == len(ker)


def test_q_commutator_spans_degree_two_kernel_for_a_quantum_linear_space():
    d = nth_datum(1)
    ker = nichols_relations(d, 2)
    comm = braided_commutator(d, letter(d, 0), letter(d, 1))
    assert len(ker) == 1
    assert rank(ker + [comm]) == 1


def test_quantum_linear_space_condition_names_the_pair():
    with pytest.raises(InputError, match=r"pair \(1,2\)"):
        DiagonalDatum(FiniteAbelianGroup([4]), ((1,), (2,)), ((1,), (1,)))


def test_trivial_self_braiding_is_rejected():
    with pytest.raises(InputError, match="truncation order"):
        DiagonalDatum(FiniteAbelianGroup([4]), ((2,),), ((2,),))


def test_budget_guards_tensor_powers():
    d = nth_datum(0)
    set_size_budget(7)
    try:
        with pytest.raises(BudgetError):
            quantum_symmetrizer(d, 3)
    finally:
        set_size_budget(None)


def test_identity_operator_is_neutral():
    d = nth_datum(0)
    S = quantum_symmetrizer(d, 2)
    assert compose(S, identity_operator(d, 2)) == S
