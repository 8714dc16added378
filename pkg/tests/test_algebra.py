import random

import pytest
from hypothesis import given, strategies as st

from homotopes.algebra import (LEFT, PROFILES, RIGHT, AlgebraMorphism, Element, adjoin_unit,
                               associator_failure, augmented_homotope, change_basis, direct_sum,
                               dual_numbers, embed_in_homotope, epsilon_morphism, field_algebra,
                               find_unit, homotope, ideal_closure, inverse, is_associative,
                               is_two_sided_ideal, is_well_tempered_criterion, matrix_algebra,
                               parse_element, polynomial_algebra, principal_two_sided_ideal,
                               psi_morphisms, quotient, random_element, random_test_algebra,
                               random_unimodular, random_unit, same_structure, upper_triangular,
                               zero_algebra)
from homotopes.errors import AlgebraError, MorphismError, NotAssociativeError
from homotopes.experiments import functoriality_trial, unit_translation_morphism
from homotopes.linalg import GF, QQ, Matrix
from homotopes.nonassoc import random_tensor

seeds = st.integers(0, 10 ** 6)
profiles = st.sampled_from(PROFILES)


def sample(seed, profile, max_dim=6, field=QQ):
    A = random_test_algebra(seed, profile, field, max_dim=max_dim)
    rng = random.Random(seed)
    return A, rng


def test_matrix_units_multiply():
    M = matrix_algebra(2)
    assert M.dim == 4 and M.unit == M["e11"] + M["e22"]
    assert M["e12"] * M["e21"] == M["e11"]
    assert M["e21"] * M["e21"] == M.zero()
    assert is_associative(M)


def test_upper_triangular_and_dual_numbers():
    T = upper_triangular(2)
    assert T.labels == ["e11", "e12", "e22"]
    assert T["e11"] * T["e12"] == T["e12"] and T["e12"] * T["e11"] == T.zero()
    D = dual_numbers()
    assert D["x"] * D["x"] == D.zero()
    assert find_unit(D) == D.one()


def test_polynomial_algebra_reduces_modulo_f():
    A = polynomial_algebra([2, 0, 1])  # x^2 = -2
    x = A["x"]
    assert x * x == -2 * A.one()
    assert inverse(A, x) == Element(A, [0, QQ.parse("-1/2")])


def test_parse_element_forms():
    M = matrix_algebra(2)
    assert parse_element(M, "0,1,0,0") == M["e12"]
    assert parse_element(M, "e12") == M["e12"]
    x = parse_element(M, "e11 - 1/2*e12")
    assert x.coords[1] == QQ.parse("-1/2")
    assert parse_element(M, "0") == M.zero()
    assert parse_element(M, repr(x)) == x
    with pytest.raises(ValueError):
        parse_element(M, "1,2")
    with pytest.raises(ValueError):
        parse_element(M, "e33")


def test_element_algebra_mismatch():
    with pytest.raises(AlgebraError):
        matrix_algebra(2).one() * upper_triangular(2).one()


def test_associator_witness_on_tensor():
    m = random_tensor(2, QQ, seed=3)
    assert not is_associative(m)
    assert associator_failure(m) is not None
    with pytest.raises(NotAssociativeError):
        augmented_homotope(m, m.basis(0))


def test_homotope_by_unit_is_identity():
    T = upper_triangular(3)
    assert same_structure(homotope(T, T.one(), LEFT), T)
    assert same_structure(homotope(T, T.one(), RIGHT), T)


def test_augmented_homotope_small():
    D = dual_numbers()
    B = augmented_homotope(D, D["x"])
    assert B.dim == 3
    a = embed_in_homotope(B, D.one())
    assert a * a == embed_in_homotope(B, D["x"])
    assert B.unit == B.basis(0)


def test_principal_ideal_examples():
    M = matrix_algebra(3)
    assert len(principal_two_sided_ideal(M, M["e11"])) == 9
    T = upper_triangular(2)
    assert [x.coords for x in principal_two_sided_ideal(T, T["e12"])] == [T["e12"].coords]
    assert not is_well_tempered_criterion(T, T["e12"])
    assert is_well_tempered_criterion(T, T.one())


def test_quotient_by_radical_of_triangular():
    T = upper_triangular(2)
    Q, proj = quotient(T, [T["e12"].coords])
    assert Q.dim == 2 and Q.is_commutative()
    assert proj(T["e12"]) == Q.zero()
    assert Q.meta["quotient_of"][0] is T


def test_adjoin_unit_and_zero_algebra():
    Z = zero_algebra(2)
    U = adjoin_unit(Z)
    assert U.dim == 3 and find_unit(U) is not None
    assert find_unit(Z) is None


def test_morphism_rejects_non_multiplicative():
    M = matrix_algebra(2)
    P = Matrix.identity(4, QQ)
    P.rows[0][1] = QQ.one
    with pytest.raises(MorphismError):
        AlgebraMorphism(M, M, P)


def test_epsilon_and_psi_are_unital():
    M = matrix_algebra(2)
    d = M["e11"]
    B = augmented_homotope(M, d)
    p1, p2 = psi_morphisms(M, d, B)
    b = embed_in_homotope(B, M["e12"])
    assert p1(b) == M["e12"] * d
    assert p2(b) == d * M["e12"]
    eps = epsilon_morphism(B)
    assert eps(B.one()).coords == field_algebra(QQ).one().coords


@given(seeds, profiles)
def test_product_is_bilinear(seed, profile):
    A, rng = sample(seed, profile)
    x, y, z = (random_element(A, rng) for _ in range(3))
    c = QQ(rng.randint(-3, 3))
    assert (x + c * y) * z == x * z + c * (y * z)
    assert z * (x + c * y) == z * x + c * (z * y)


@given(seeds, profiles)
def test_test_algebras_are_associative_and_unital(seed, profile):
    A, _ = sample(seed, profile)
    assert is_associative(A)
    assert find_unit(A) == A.one()


@given(seeds, profiles, st.sampled_from([LEFT, RIGHT]))
def test_homotope_of_associative_is_associative(seed, profile, side):
    A, rng = sample(seed, profile, max_dim=5)
    a = random_element(A, rng)
    H = homotope(A, a, side)
    assert is_associative(H)
    x, y = random_element(H, rng), random_element(H, rng)
    lift = lambda e: Element._raw(A, e.coords)
    assert (x * y).coords == (lift(x) * a * lift(y)).coords
    assert same_structure(H, homotope(A, a, RIGHT if side == LEFT else LEFT))


@given(seeds, profiles)
def test_augmented_homotope_product_rule(seed, profile):
    A, rng = sample(seed, profile, max_dim=5)
    delta = random_element(A, rng)
    B = augmented_homotope(A, delta)
    lam, mu = QQ(rng.randint(-2, 2)), QQ(rng.randint(-2, 2))
    a, b = random_element(A, rng), random_element(A, rng)
    x = lam * B.one() + embed_in_homotope(B, a)
    y = mu * B.one() + embed_in_homotope(B, b)
    expect = lam * mu * B.one() + embed_in_homotope(B, lam * b + mu * a + a * delta * b)
    assert x * y == expect
    assert is_associative(B)


@given(seeds, profiles)
def test_psi_morphisms_are_algebra_maps(seed, profile):
    A, rng = sample(seed, profile, max_dim=5)
    delta = random_element(A, rng)
    p1, p2 = psi_morphisms(A, delta)
    p1.verify()
    p2.verify()


@given(seeds, profiles)
def test_unit_translation_is_isomorphism(seed, profile):
    A, rng = sample(seed, profile, max_dim=5)
    delta = random_element(A, rng)
    c, d = random_unit(A, rng), random_unit(A, rng)
    f = unit_translation_morphism(A, delta, c, d)
    assert f.is_isomorphism()
    assert is_well_tempered_criterion(A, delta) == is_well_tempered_criterion(A, c * delta * d)


@given(seeds, profiles)
def test_change_basis_gives_isomorphic_algebra(seed, profile):
    A, rng = sample(seed, profile, max_dim=5)
    P = random_unimodular(A.dim, rng, QQ)
    A2, f = change_basis(A, P)
    f.verify()
    assert f.is_isomorphism()
    assert is_associative(A2) and find_unit(A2) is not None


@given(seeds, st.integers(0, 49))
def test_functoriality_of_homotopes(seed, trial):
    t = functoriality_trial(seed, trial)
    assert t.ok, t


@given(seeds, profiles)
def test_ideal_closure_is_ideal(seed, profile):
    A, rng = sample(seed, profile, max_dim=5)
    I = ideal_closure(A, [random_element(A, rng).coords]).basis()
    assert is_two_sided_ideal(A, I)


def test_direct_sum_dimensions_and_units():
    S = direct_sum(matrix_algebra(2), dual_numbers())
    assert S.dim == 6 and find_unit(S) == S.one()
    assert is_associative(S)


def test_algebra_over_finite_field():
    M = matrix_algebra(2, GF(3))
    assert M.field == GF(3)
    assert (M["e11"] + M["e12"]) * (M["e11"] + M["e12"]) == M["e11"] + M["e12"]
