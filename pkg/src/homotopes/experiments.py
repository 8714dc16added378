"""Seeded instance generators and trial runners shared by the CLI, scripts and tests.

Every runner returns plain dataclasses with per-trial records so callers can
both assert on aggregates and report individual failures.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import (LEFT, PROFILES, RIGHT, Algebra, AlgebraMorphism, Element, augmented_homotope,
                      direct_sum, homotope, ideal_closure, inverse, is_two_sided_ideal,
                      is_well_tempered_criterion, polynomial_algebra, quotient,
                      random_delta, random_element, random_test_algebra, same_structure)
from .errors import AlgebraError, MorphismError
from .linalg import QQ, FieldSpec, Matrix, rank
from .modules import (augmentation_modules, cyclic_quotient, default_b_samples, direct_sum_modules,
                      ext1_trivial, is_projective, recollement_report, regular_module,
                      trivial_module)
from .structure import block_ranks, is_invertible, radical_compare


# ---------------------------------------------------------------------------
# oracle: projectivity of B^+ against A delta A = A

@dataclass
class OracleTrial:
    seed: object
    profile: str
    dim: int
    delta: tuple
    projective_left: bool
    projective_right: bool
    criterion: bool
    ext1: int | None = None

    @property
    def agree(self) -> bool:
        return (self.projective_left and self.projective_right) == self.criterion

    @property
    def ext_agree(self) -> bool:
        return self.ext1 is None or (self.ext1 == 0) == self.criterion


def oracle_instance(seed, trial: int, max_dim: int = 8, field: FieldSpec = QQ):
    rng = random.Random("oracle/%s/%d" % (seed, trial))
    profile = PROFILES[trial % len(PROFILES)]
    A = random_test_algebra("%s/%d" % (seed, trial), profile, field, max_dim=max_dim,
                            scramble=rng.random() < 0.3)
    return A, random_delta(A, rng), profile


def oracle_trial(seed, trial: int, max_dim: int = 8, field: FieldSpec = QQ, with_ext: bool = True) -> OracleTrial:
    A, delta, profile = oracle_instance(seed, trial, max_dim, field)
    mods = augmentation_modules(A, delta)
    pl = is_projective(mods.B_plus_left)
    pr = is_projective(mods.B_plus_right)
    crit = is_well_tempered_criterion(A, delta)
    ext = ext1_trivial(A, delta, mods) if with_ext else None
    return OracleTrial("%s/%d" % (seed, trial), profile, A.dim, delta.coords, pl, pr, crit, ext)


def run_oracle(trials: int, seed, max_dim: int = 8, field: FieldSpec = QQ, with_ext: bool = True):
    return [oracle_trial(seed, t, max_dim, field, with_ext) for t in range(trials)]


# ---------------------------------------------------------------------------
# rank corollaries

@dataclass
class SplitTrial:
    seed: object
    dim: int
    ranks: list
    dim_B: int
    dim_RA: int
    dim_RB: int
    invertible: bool
    contained: bool
    equal: bool
    criterion: bool

    @property
    def dimension_identity(self) -> bool:
        return self.dim_B - self.dim_RB == 1 + sum(r * r for r in self.ranks if r > 0)

    @property
    def radical_identity(self) -> bool:
        return self.contained and self.equal == self.invertible

    @property
    def wt_via_ranks(self) -> bool:
        return self.criterion == all(r > 0 for r in self.ranks)


def split_trial(seed, trial: int, max_dim: int = 8) -> SplitTrial:
    A, delta, _ = oracle_instance("split/%s" % (seed,), trial, max_dim)
    B = augmented_homotope(A, delta)
    rk = block_ranks(A, delta)
    rc = radical_compare(A, delta, B)
    return SplitTrial("%s/%d" % (seed, trial), A.dim, rk, B.dim, rc.dims[0], rc.dims[1],
                      rc.delta_invertible, rc.contained, rc.equal, is_well_tempered_criterion(A, delta))


# ---------------------------------------------------------------------------
# matrix and commutative corollaries

def rank_representative(A: Algebra, n: int, r: int) -> Element:
    """``e_11 + ... + e_rr`` in M_n."""
    x = A.zero()
    for i in range(1, r + 1):
        x = x + A["e%d%d" % (i, i)]
    return x


COMMUTATIVE_MODULI = [
    # coefficients of monic f, low to high
    [0, 1], [-1, 1], [0, 0, 1], [-1, 0, 1], [1, 0, 1], [-2, 0, 1], [0, -1, 1],
    [0, 0, 0, 1], [0, -1, 0, 1], [1, 0, 0, 1], [0, 0, -1, 1], [-2, 3, -3, 1], [1, 1, 1, 1],
    [0, 0, 0, 0, 1], [1, 0, 0, 0, 1], [0, 0, 1, 0, 1], [4, 0, -5, 0, 1], [0, 1, 0, 0, 1],
    [1, -2, 1, 0, 1], [0, 0, -2, 0, 1], [2, 0, 0, 0, 1], [1, 0, 2, 0, 1],
]


@dataclass
class CommutativeTrial:
    modulus: list
    element: tuple
    criterion: bool
    invertible: bool

    @property
    def agree(self) -> bool:
        return self.criterion == self.invertible


def commutative_trials(seed=0, randoms: int = 20) -> list[CommutativeTrial]:
    out = []
    for f in COMMUTATIVE_MODULI:
        A = polynomial_algebra(f, QQ)
        rng = random.Random("commutative/%s/%s" % (seed, f))
        elems = [A.basis(i) for i in range(A.dim)] + [random_element(A, rng, 2) for _ in range(randoms)]
        for x in elems:
            out.append(CommutativeTrial(f, x.coords, is_well_tempered_criterion(A, x), is_invertible(A, x)))
    return out


# ---------------------------------------------------------------------------
# recollement

def recollement_instances(count: int, seed, max_dim: int = 7):
    """Well-tempered instances (A, delta) from the random profiles."""
    out, trial = [], 0
    while len(out) < count and trial < 50 * count:
        A, delta, _ = oracle_instance("recollement/%s" % (seed,), trial, max_dim)
        trial += 1
        if is_well_tempered_criterion(A, delta):
            out.append((A, delta))
    return out


def recollement_samples(A: Algebra, mods, rng: random.Random):
    a_samples = [regular_module(A, LEFT)]
    for _ in range(2):
        a_samples.append(cyclic_quotient(A, random_element(A, rng, 1), LEFT))
    b_samples = default_b_samples(A, mods)
    b_samples.append(direct_sum_modules([mods.trivial, mods.trivial]))
    b_samples.append(cyclic_quotient(mods.B, random_element(mods.B, rng, 1), LEFT))
    return a_samples, b_samples


def recollement_trial(A: Algebra, delta: Element, seed):
    rng = random.Random("recollement-samples/%s" % (seed,))
    mods = augmentation_modules(A, delta)
    a_s, b_s = recollement_samples(A, mods, rng)
    return recollement_report(A, delta, a_s, b_s, mods)


# ---------------------------------------------------------------------------
# functoriality of homotopes

@dataclass
class FunctorialityTrial:
    seed: object
    dim: int
    ideal_dim: int
    ideal_left: bool
    ideal_right: bool
    quotient_commutes: bool
    projection_is_morphism: bool

    @property
    def ok(self) -> bool:
        return self.ideal_left and self.ideal_right and self.quotient_commutes and self.projection_is_morphism


def functoriality_instance(seed, trial: int):
    """(A, I, a): random test algebras, or a sum of a random tensor and a test algebra."""
    from .nonassoc import random_tensor
    rng = random.Random("functoriality/%s/%d" % (seed, trial))
    A = random_test_algebra("%s/%d" % (seed, trial), PROFILES[trial % 3], QQ, max_dim=6)
    if trial % 2:
        T = random_tensor(rng.randint(1, 2), QQ, "%s/%d" % (seed, trial), bound=2)
        A = direct_sum(T, A) if rng.random() < 0.5 else direct_sum(A, T)
    gens = [random_element(A, rng, 1)]
    I = ideal_closure(A, [g.coords for g in gens]).basis()
    a = random_element(A, rng, 2)
    return A, I, a


def functoriality_trial(seed, trial: int) -> FunctorialityTrial:
    A, I, a = functoriality_instance(seed, trial)
    HL, HR = homotope(A, a, LEFT), homotope(A, a, RIGHT)
    left_ok = is_two_sided_ideal(HL, I)
    right_ok = is_two_sided_ideal(HR, I)
    commutes = True
    morphism = True
    for side, H in ((LEFT, HL), (RIGHT, HR)):
        Q1, _ = quotient(H, I)
        Q, proj = quotient(A, I)
        Q2 = homotope(Q, proj(a), side)
        commutes = commutes and same_structure(Q1, Q2)
        try:
            AlgebraMorphism(H, Q2, proj.matrix)
        except MorphismError:
            morphism = False
    return FunctorialityTrial("%s/%d" % (seed, trial), A.dim, len(I), left_ok, right_ok, commutes, morphism)


def unit_translation_morphism(A: Algebra, delta: Element, c: Element, d: Element) -> AlgebraMorphism:
    """``a -> d^-1 a c^-1`` from the delta-homotope to the ``c delta d``-homotope."""
    ci, di = inverse(A, c), inverse(A, d)
    if ci is None or di is None:
        raise AlgebraError("c and d must be invertible")
    H1 = homotope(A, delta, LEFT)
    H2 = homotope(A, c * delta * d, LEFT)
    cols = [(di * A.basis(i) * ci).coords for i in range(A.dim)]
    return AlgebraMorphism(H1, H2, Matrix.from_columns(cols, A.field, A.dim))


# ---------------------------------------------------------------------------
# fiber products

COMMUTATIVE_SPLIT_MODULI = [
    [0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 0, 1], [0, -1, 1], [0, 0, -1, 1], [0, -1, 0, 1],
    [0, 0, 1, -2, 1], [0, 0, 0, -1, 1], [0, 2, -3, 1], [0, 0, 0, 0, 0, 1], [0, 0, -1, 0, 1],
]


def fiber_instance(seed, trial: int):
    """(A, I, u): split commutative A, principal ideal I = (g) with 0 != I != A, u in I."""
    rng = random.Random("fiber/%s/%d" % (seed, trial))
    while True:
        f = rng.choice(COMMUTATIVE_SPLIT_MODULI)
        A = polynomial_algebra(f, QQ)
        if rng.random() < 0.3:
            A = direct_sum(A, polynomial_algebra(rng.choice(COMMUTATIVE_SPLIT_MODULI[:5]), QQ))
        if A.unit is None:
            continue
        g = random_element(A, rng, 2)
        if rng.random() < 0.5:
            # push g into the radical or a proper factor to get a non-invertible generator
            g = g * _nonunit(A, rng)
        I = ideal_closure(A, [g.coords]).basis()
        if 0 < len(I) < A.dim:
            break
    u = Element._raw(A, [A.field.zero] * A.dim)
    while not any(u.coords):
        u = Element._raw(A, g.coords) * random_element(A, rng, 1) if rng.random() < 0.5 else g
    return A, I, g, u


def _nonunit(A: Algebra, rng: random.Random) -> Element:
    while True:
        x = random_element(A, rng, 1)
        if any(x.coords) and not is_invertible(A, x):
            return x


@dataclass
class FiberTrial:
    seed: object
    dim_A: int
    dim_I: int
    identity_free: bool
    identity_glued: bool
    unit_surjective: bool
    kernel_dim: int
    dim_Au: int
    dim_Bu: int

    @property
    def expected_kernel(self) -> int:
        return self.dim_A - self.dim_I - 1

    @property
    def kernel_matches_quotient(self) -> bool:
        return self.kernel_dim == self.expected_kernel

    @property
    def kernel_matches_annihilator(self) -> bool:
        return self.kernel_dim == self.dim_Au - self.dim_Bu


def fiber_trial(seed, trial: int) -> FiberTrial:
    from . import fiber as fb
    A, I, g, u = fiber_instance(seed, trial)
    fp = fb.fiber_product(A, I)
    rng = random.Random("fiber-trial/%s/%d" % (seed, trial))
    n = 1 + trial % 2
    T = fb.free_triple(fp, n, fb.random_invertible_over(fp.C, n, rng))
    identity_free = fb.psi_psiprime_is_identity(fp, T)["identity"]
    L = cyclic_quotient(fp.B, random_element(fp.B, rng, 1), LEFT)
    identity_glued = fb.psi_psiprime_is_identity(fp, fb.glue(fp, L).triple)["identity"]
    V = fb.cyclic_ideal_quotient(fp, u)
    surjective = True
    for W in (V, L, regular_module(fp.B), trivial_module(fp.B)):
        m, U = fb.unit_map(fp, W)
        surjective = surjective and rank(m) == U.module.dim
    au, bu = fb.annihilator_formula(fp, u)
    return FiberTrial("%s/%d" % (seed, trial), A.dim, len(I), identity_free, identity_glued, surjective,
                      len(fb.unit_kernel(fp, V)), au, bu)
