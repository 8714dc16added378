import random

import pytest
from hypothesis import given, strategies as st

from homotopes.algebra import (PROFILES, direct_sum, dual_numbers, field_algebra,
                               inverse, is_two_sided_ideal, matrix_algebra, polynomial_algebra,
                               random_element, random_test_algebra, random_unit, upper_triangular)
from homotopes.errors import CharacteristicError, MissingSplittingError, NotSplitError
from homotopes.experiments import rank_representative, split_trial
from homotopes.linalg import GF, QQ, Matrix
from homotopes.structure import (block_ranks, center, homotope_rep_dims, is_invertible,
                                 jacobson_radical, minimal_polynomial, primitive_idempotents_commutative,
                                 quotient_blocks, radical_compare, rank_normal_form, semisimple_quotient,
                                 suitable_form, unit_factor, wedderburn_blocks)

seeds = st.integers(0, 10 ** 6)
profiles = st.sampled_from(PROFILES)


def test_radical_examples():
    T = upper_triangular(2)
    assert jacobson_radical(T) == [T["e12"]]
    assert len(jacobson_radical(polynomial_algebra([0, 0, 0, 1]))) == 2
    assert jacobson_radical(matrix_algebra(3)) == []
    assert len(jacobson_radical(upper_triangular(3))) == 3


def test_radical_needs_large_characteristic():
    with pytest.raises(CharacteristicError):
        jacobson_radical(matrix_algebra(2, GF(3)))
    assert jacobson_radical(matrix_algebra(2, GF(5))) == []


def test_blocks_examples():
    S = direct_sum(matrix_algebra(2), field_algebra())
    _, _, bd = quotient_blocks(S)
    assert sorted(bd.block_sizes) == [1, 2]
    with pytest.raises(NotSplitError):
        wedderburn_blocks(polynomial_algebra([-2, 0, 1]))
    _, _, bd = quotient_blocks(polynomial_algebra([-2, 0, 1], GF(7)))  # 3^2 = 2 mod 7
    assert bd.block_sizes == [1, 1]


def test_center_of_matrix_algebra_is_scalars():
    M = matrix_algebra(3)
    assert [z.coords for z in center(M)] == [M.one().coords]


def test_minimal_polynomial_of_nilpotent():
    A = polynomial_algebra([0, 0, 0, 1])
    assert minimal_polynomial(A, A["x"]) == [0, 0, 0, 1]


def test_rank_normal_form_example():
    X = Matrix([[1, 2], [2, 4]], QQ)
    P, Q, r = rank_normal_form(X)
    assert r == 1 and P @ X @ Q == Matrix([[1, 0], [0, 0]], QQ)


def test_matrix_block_ranks_and_rep_dims():
    M = matrix_algebra(3)
    d = rank_representative(M, 3, 2)
    assert block_ranks(M, d, "lift") == [2] == block_ranks(M, d, "quotient")
    assert homotope_rep_dims(M, d) == [1, 2]


def test_missing_complement():
    A = polynomial_algebra([0, -1, 1])
    A.blocks = None
    with pytest.raises(MissingSplittingError):
        block_ranks(A, A["x"], "lift")


def test_suitable_form_triangular_example():
    T = upper_triangular(2)
    f = suitable_form(T, T["e11"] + T["e12"])
    assert f.s == T["e11"] and not f.r
    assert f.u == T.one() and f.v == T.one() - T["e12"]


def test_unit_factor_orders():
    T = upper_triangular(2)
    u = T["e11"] + 2 * T["e22"] + T["e12"]
    right = unit_factor(T, u, "right")
    left = unit_factor(T, u, "left")
    g = T["e11"] + 2 * T["e22"]
    assert right.semisimple_part == g == left.semisimple_part
    assert right.unipotent_part == T.one() + T["e12"]
    assert left.unipotent_part == T.one() + QQ.parse("1/2") * T["e12"]
    assert right.product() == u == left.product()


def test_radical_comparison_examples():
    M = matrix_algebra(2)
    rc = radical_compare(M, M["e11"])
    assert rc.dims == (0, 3) and rc.contained and not rc.equal
    D = dual_numbers()
    rc = radical_compare(D, D["x"])
    assert rc.dims == (1, 2) and rc.consistent
    rc = radical_compare(D, D.one())
    assert rc.equal and rc.delta_invertible


def test_primitive_idempotents_of_split_commutative():
    A = polynomial_algebra([0, 2, -3, 1])  # x(x-1)(x-2)
    es = primitive_idempotents_commutative(A)
    assert len(es) == 3
    assert sum(es[1:], es[0]) == A.one()
    for i, e in enumerate(es):
        assert e * e == e
        assert all(not (e * f) for f in es[i + 1:])


@given(seeds, profiles)
def test_radical_is_nilpotent_ideal_of_expected_size(seed, profile):
    A = random_test_algebra(seed, profile, max_dim=7, scramble=seed % 3 == 0)
    R = jacobson_radical(A)
    assert is_two_sided_ideal(A, [x.coords for x in R])
    assert A.dim - len(R) == sum(n * n for n in A.blocks.block_sizes)
    S, _ = semisimple_quotient(A)
    assert jacobson_radical(S) == []


@given(seeds, profiles)
def test_block_rank_routes_agree(seed, profile):
    A = random_test_algebra(seed, profile, max_dim=7)
    rng = random.Random(seed)
    delta = random_element(A, rng, 1)
    assert block_ranks(A, delta, "lift") == block_ranks(A, delta, "quotient")


@given(seeds, profiles)
def test_block_ranks_invariant_under_units(seed, profile):
    A = random_test_algebra(seed, profile, max_dim=7)
    rng = random.Random(seed)
    delta = random_element(A, rng, 1)
    c, d = random_unit(A, rng), random_unit(A, rng)
    assert block_ranks(A, delta) == block_ranks(A, c * delta * d)


@given(seeds, profiles)
def test_suitable_form_invariants(seed, profile):
    A = random_test_algebra(seed, profile, max_dim=7)
    delta = random_element(A, random.Random(seed), 1)
    f = suitable_form(A, delta)
    assert f.check(delta)
    assert f.ranks == block_ranks(A, delta)
    rad = [x.coords for x in jacobson_radical(A)]
    from homotopes.linalg import span
    assert span(rad, A.dim, A.field).contains(f.r.coords)


@given(seeds, profiles, st.sampled_from(["left", "right"]))
def test_unit_factorization(seed, profile, side):
    A = random_test_algebra(seed, profile, max_dim=7)
    u = random_unit(A, random.Random(seed))
    f = unit_factor(A, u, side)
    assert f.product() == u
    assert inverse(A, f.semisimple_part) is not None


@given(seeds, st.integers(0, 59))
def test_split_identities(seed, trial):
    t = split_trial(seed, trial)
    assert t.dimension_identity and t.radical_identity and t.wt_via_ranks, t


def test_is_invertible_matches_inverse():
    T = upper_triangular(2)
    for x in (T.one(), T["e11"], T["e11"] + T["e22"] + T["e12"], T["e12"]):
        assert is_invertible(T, x) == (inverse(T, x) is not None)


def test_rep_dims_of_sum_of_matrix_algebras():
    A = direct_sum(matrix_algebra(2), matrix_algebra(2))
    assert homotope_rep_dims(A, A["e11_1"]) == [1, 1]
    assert homotope_rep_dims(A, A.one()) == [1, 2, 2]


def test_unit_factor_of_unipotent():
    T = upper_triangular(2)
    f = unit_factor(T, T.one() + T["e12"])
    assert f.semisimple_part == T.one() and f.unipotent_part == T.one() + T["e12"]
    f = unit_factor(T, T.one())
    assert f.semisimple_part == T.one() == f.unipotent_part
