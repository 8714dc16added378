"""Gluing modules over the fiber product ``B = A x_{A/I} k`` of commutative algebras.

``B`` has basis ``(1_A, 1)`` (index 0) followed by ``(x_t, 0)`` for a basis
x_t of I. A module L over B is sent to the triple
``(k (x)_B L, A (x)_B L, can)`` and a triple ``(N, M', phi)`` back to the
fiber product of ``N -> A/I (x) N`` and ``phi: M' -> A/I (x) N``.

A triple stores ``phi`` as an A-linear surjection ``M' -> C (x)_k N`` with
kernel ``I M'`` (``C = A/I``), which is the same datum as an isomorphism
``C (x)_A M' -> C (x)_k N`` without choosing a basis of the quotient.
Coordinates on ``C (x) N`` are ``i * dim N + j``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import (LEFT, RIGHT, Algebra, AlgebraMorphism, Element, _own, augmented_homotope,
                      is_two_sided_ideal, mult_operator, quotient, subspace)
from .errors import AlgebraError, NotAnIdealError, NotCommutativeError
from .linalg import Echelon, Matrix, kernel_basis, rank, solve, span
from .modules import (ModuleRep, cyclic_quotient, is_projective, regular_module, restrict_along,
                      submodule, tensor_over_algebra, trivial_module, _coords_in)


@dataclass(eq=False)
class FiberProduct:
    A: Algebra
    ideal: Echelon
    C: Algebra
    proj: AlgebraMorphism
    B: Algebra
    to_A: AlgebraMorphism

    @property
    def ideal_basis(self) -> list[list]:
        return self.ideal.basis()

    def element(self, a: Element, lam=0) -> Element:
        """``(a, lam)`` as an element of B; requires ``a - lam 1`` in I."""
        A, F = self.A, self.A.field
        rest = (a - F(lam) * A.unit).coords
        return Element._raw(self.B, [F(lam)] + _coords_in(self.ideal, self.ideal_basis, list(rest)))

    def from_ideal(self, x: Element) -> Element:
        return self.element(x, 0)


def _require_commutative(A: Algebra) -> None:
    if not A.is_commutative():
        raise NotCommutativeError("gluing is only defined for commutative algebras")


def fiber_product(A: Algebra, I) -> FiberProduct:
    """``A x_{A/I} k`` realized as ``k (1, 1) + (I, 0)``."""
    _require_commutative(A)
    I = [x.coords if isinstance(x, Element) else x for x in I]
    if not is_two_sided_ideal(A, I):
        raise NotAnIdealError("subspace is not an ideal")
    E = subspace(A, I)
    if E.rank == A.dim:
        raise AlgebraError("I = A: the quotient is zero")
    C, proj = quotient(A, I)
    F = A.field
    basis = E.basis()
    one = list(A.unit.coords)
    pairs = [(one, F.one)] + [(x, F.zero) for x in basis]
    m = len(pairs)

    def coords(a, lam):
        rest = [x - lam * u for x, u in zip(a, one)]
        return [lam] + _coords_in(E, basis, rest)

    table = {}
    for s, (a, la) in enumerate(pairs):
        for t, (b, lb) in enumerate(pairs):
            c = coords(A.product_coords(a, b), la * lb)
            table[(s, t)] = {l: v for l, v in enumerate(c) if v}
    labels = ["1"] + ["i%d" % t for t in range(1, m)]
    B = Algebra(F, m, table, labels=labels, unit=[F.one] + [F.zero] * (m - 1), name="fiber product")
    B._assoc = True
    to_A = AlgebraMorphism(B, A, Matrix.from_columns([a for a, _ in pairs], F, A.dim), unital=True)
    return FiberProduct(A, E, C, proj, B, to_A)


def homotope_to_fiber(A: Algebra, delta: Element, fp: FiberProduct | None = None):
    """``lam + a -> (lam + a delta, lam)`` from the augmented homotope onto ``A x_{A/(delta)} k``.

    Surjective with kernel the annihilator of delta (inside ``B^+``).
    """
    _own(A, delta)
    _require_commutative(A)
    if fp is None:
        fp = fiber_product(A, [A.basis(i) * delta for i in range(A.dim)])
    H = augmented_homotope(A, delta)
    cols = [fp.element(A.unit, 1).coords]
    for i in range(A.dim):
        cols.append(fp.element(A.basis(i) * delta, 0).coords)
    return AlgebraMorphism(H, fp.B, Matrix.from_columns(cols, A.field, fp.B.dim), unital=True)


# ---------------------------------------------------------------------------
# triples

@dataclass(eq=False)
class GluingTriple:
    n: int
    Mp: ModuleRep
    phi: Matrix


def _c_action(fp: FiberProduct, s: int, n: int) -> Matrix:
    """Action of ``e_s`` in A on ``C (x) N``."""
    C, F = fp.C, fp.A.field
    L = C.left_ops()
    x = fp.proj.matrix.column(s)
    Lx = Matrix.zeros(C.dim, C.dim, F)
    for t, c in enumerate(x):
        if c:
            Lx = Lx + L[t].scale(c)
    out = Matrix.zeros(C.dim * n, C.dim * n, F)
    for i in range(C.dim):
        for ip in range(C.dim):
            a = Lx.rows[i][ip]
            if a:
                for j in range(n):
                    out.rows[i * n + j][ip * n + j] = a
    return out


def validate_triple(fp: FiberProduct, T: GluingTriple) -> dict:
    """A-linearity, surjectivity and ``ker phi = I M'``."""
    A, M, phi = fp.A, T.Mp, T.phi
    linear = all(phi @ M.action[s] == _c_action(fp, s, T.n) @ phi for s in range(A.dim))
    surjective = rank(phi) == fp.C.dim * T.n
    IM = Echelon(M.dim, A.field)
    for x in fp.ideal_basis:
        X = M.act(Element._raw(A, x))
        for col in X.columns():
            IM.add(col)
    K = span(kernel_basis(phi), M.dim, A.field)
    from .linalg import is_subspace
    kernel_ok = is_subspace(IM, K) and IM.rank == K.rank
    return {"linear": linear, "surjective": surjective, "kernel_is_IM": kernel_ok,
            "valid": linear and surjective and kernel_ok}


def _right_modules(fp: FiberProduct):
    A_right = restrict_along(fp.to_A, regular_module(fp.A, RIGHT))
    k_right = trivial_module(fp.B, RIGHT)
    return A_right, k_right


@dataclass(eq=False)
class Glued:
    triple: GluingTriple
    eta_N: Matrix        # L -> N, l -> 1 (x) l
    eta_M: Matrix        # L -> M', l -> 1 (x) l


def glue(fp: FiberProduct, L: ModuleRep) -> Glued:
    """``Psi(L) = (k (x)_B L, A (x)_B L, can)``."""
    if L.algebra is not fp.B or L.side != LEFT:
        raise AlgebraError("L must be a left module over the fiber product")
    A, F = fp.A, fp.A.field
    A_right, k_right = _right_modules(fp)
    TN = tensor_over_algebra(k_right, L)
    TM = tensor_over_algebra(A_right, L)
    n, l = TN.dim, L.dim
    reps = TM.representatives
    action = []
    for Lop in A.left_ops():
        cols = []
        for i, j in reps:
            cols.append(TM.project({k * l + j: c for k, c in enumerate(Lop.column(i)) if c}))
        action.append(Matrix.from_columns(cols, F, TM.dim))
    Mp = ModuleRep(A, LEFT, TM.dim, action, {"name": "A (x)_B L"})
    eta_N = Matrix.from_columns([TN.project({j: F.one}) for j in range(l)], F, n)
    one = A.unit.coords
    eta_M = Matrix.from_columns([TM.elementary(one, _std(l, j, F)) for j in range(l)], F, TM.dim)
    cdim = fp.C.dim
    cols = []
    for i, j in reps:
        abar = fp.proj.matrix.column(i)
        eta = eta_N.column(j)
        cols.append([abar[a] * eta[b] for a in range(cdim) for b in range(n)])
    phi = Matrix.from_columns(cols, F, cdim * n)
    return Glued(GluingTriple(n, Mp, phi), eta_N, eta_M)


def _std(n, j, F):
    return [F.one if k == j else F.zero for k in range(n)]


@dataclass(eq=False)
class Unglued:
    module: ModuleRep
    basis: list          # vectors in N (+) M'
    echelon: Echelon


def unglue(fp: FiberProduct, T: GluingTriple, check: bool = True) -> Unglued:
    """``Psi'(N, M', phi) = N x_{C (x) N} M'`` with the componentwise B-action."""
    if check and not validate_triple(fp, T)["valid"]:
        raise AlgebraError("phi does not induce an isomorphism A/I (x) M' -> A/I (x) N")
    A, F = fp.A, fp.A.field
    n, M = T.n, T.Mp
    cdim = fp.C.dim
    onebar = fp.proj.matrix.apply(A.unit.coords)
    width = n + M.dim
    rows = []
    for a in range(cdim):
        for b in range(n):
            row = [F.zero] * width
            row[b] = -onebar[a]
            for c in range(M.dim):
                row[n + c] = T.phi.rows[a * n + b][c]
            rows.append(row)
    E = span(kernel_basis(Matrix._raw(rows, F, width)) if rows else
             [_std(width, k, F) for k in range(width)], width, F)
    basis = E.basis()
    action = []
    for s in range(fp.B.dim):
        a_img = fp.to_A.matrix.column(s)
        lam = F.one if s == 0 else F.zero
        R = M.act(Element._raw(A, a_img))
        cols = []
        for v in basis:
            w = [lam * x for x in v[:n]] + R.apply(v[n:])
            cols.append(_coords_in(E, basis, w))
        action.append(Matrix.from_columns(cols, F, len(basis)))
    X = ModuleRep(fp.B, LEFT, len(basis), action, {"name": "fiber product module"})
    return Unglued(X, basis, E)


def unit_map(fp: FiberProduct, V: ModuleRep):
    """``V -> Psi' Psi(V)``, ``v -> (1 (x) v, 1 (x) v)``, as a matrix and the target."""
    g = glue(fp, V)
    U = unglue(fp, g.triple, check=False)
    F = fp.A.field
    cols = []
    for j in range(V.dim):
        w = g.eta_N.column(j) + g.eta_M.column(j)
        cols.append(_coords_in(U.echelon, U.basis, w))
    return Matrix.from_columns(cols, F, U.module.dim), U


def unit_kernel(fp: FiberProduct, V: ModuleRep) -> list[list]:
    """Kernel of ``V -> Psi' Psi(V)``."""
    m, _ = unit_map(fp, V)
    return kernel_basis(m)


def psi_psiprime_is_identity(fp: FiberProduct, T: GluingTriple) -> dict:
    """Compare ``Psi(Psi'(T))`` with T through the natural maps to N and M'."""
    F = fp.A.field
    U = unglue(fp, T)
    g = glue(fp, U.module)
    T2 = g.triple
    n = T.n
    A_right, k_right = _right_modules(fp)
    TN = tensor_over_algebra(k_right, U.module)
    TM = tensor_over_algebra(A_right, U.module)
    # k (x) X -> N, 1 (x) (y, m) -> y
    beta = Matrix.from_columns([U.basis[j][:n] for _, j in TN.representatives], F, n)
    # A (x) X -> M', a (x) (y, m) -> a m
    alpha = Matrix.from_columns([T.Mp.action[i].apply(U.basis[j][n:]) for i, j in TM.representatives],
                                F, T.Mp.dim)
    iso_N = T2.n == n and rank(beta) == n
    iso_M = T2.Mp.dim == T.Mp.dim and rank(alpha) == T.Mp.dim and all(
        alpha @ P == Q @ alpha for P, Q in zip(T2.Mp.action, T.Mp.action))
    cdim = fp.C.dim
    lift_beta = Matrix.zeros(cdim * n, cdim * T2.n, F)
    for a in range(cdim):
        for b in range(n):
            for c in range(T2.n):
                lift_beta.rows[a * n + b][a * T2.n + c] = beta.rows[b][c]
    compatible = T.phi @ alpha == lift_beta @ T2.phi
    return {"iso_N": iso_N, "iso_M": iso_M, "compatible": compatible,
            "identity": iso_N and iso_M and compatible}


def free_triple(fp: FiberProduct, n: int, Phi_entries) -> GluingTriple:
    """Triple ``(k^n, A^n, phi)`` with ``phi(a e_c) = sum_c' abar Phi[c'][c] (x) e_c'``.

    ``Phi_entries[c'][c]`` are elements of C; Phi must be invertible over C.
    """
    A, C, F = fp.A, fp.C, fp.A.field
    d, cdim = A.dim, C.dim
    R = regular_module(A, LEFT)
    from .modules import direct_sum_modules
    Mp = direct_sum_modules([R] * n)
    cols = []
    for c in range(n):
        for t in range(d):
            abar = Element._raw(C, fp.proj.matrix.column(t))
            col = [F.zero] * (cdim * n)
            for cp in range(n):
                prod = (abar * Phi_entries[cp][c]).coords
                for a in range(cdim):
                    col[a * n + cp] = prod[a]
            cols.append(col)
    return GluingTriple(n, Mp, Matrix.from_columns(cols, F, cdim * n))


def cyclic_ideal_quotient(fp: FiberProduct, u: Element) -> ModuleRep:
    """``B / B u`` for ``u`` in I, as a left B-module."""
    return cyclic_quotient(fp.B, fp.from_ideal(u), LEFT)


# ---------------------------------------------------------------------------
# glued subcategory

def reduce_mod_ideal(A: Algebra, I, W: ModuleRep):
    """``W / I W`` as a module over ``C = A/I``."""
    from .modules import quotient_module
    I = [x.coords if isinstance(x, Element) else x for x in I]
    C, proj = quotient(A, I)
    IW = submodule(W, [c for x in I for c in W.act(Element._raw(A, x)).columns()])
    Wb, _ = quotient_module(W, IW)
    action = []
    for t in range(C.dim):
        e = [C.field.one if k == t else C.field.zero for k in range(C.dim)]
        lift = solve(proj.matrix, e)
        action.append(Wb.act(Element._raw(A, lift)))
    return ModuleRep(C, LEFT, Wb.dim, action, {"name": "W / IW"}), C


def in_glued_subcategory(A: Algebra, I, W: ModuleRep) -> bool:
    """Whether ``A/I (x)_A W`` is a free ``A/I``-module."""
    from .structure import primitive_idempotents_commutative
    _require_commutative(A)
    I = [x.coords if isinstance(x, Element) else x for x in I]
    if subspace(A, I).rank == A.dim:
        return True
    Wb, C = reduce_mod_ideal(A, I, W)
    if Wb.dim == 0:
        return True
    if not is_projective(Wb):
        return False
    ranks = set()
    for e in primitive_idempotents_commutative(C):
        dim_eW = rank(Wb.act(e))
        dim_eC = rank(mult_operator(C, e, LEFT))
        if dim_eW % dim_eC:
            return False
        ranks.add(dim_eW // dim_eC)
    return len(ranks) == 1


def annihilator_formula(fp: FiberProduct, u: Element) -> tuple[int, int]:
    """``(dim A u, dim B u)`` inside A for ``u`` in I.

    The kernel of the unit map on ``B / B u`` is ``A u / B u``.
    """
    A = fp.A
    _own(A, u)
    Au = span([(A.basis(i) * u).coords for i in range(A.dim)], A.dim, A.field)
    Bu = span([u.coords] + [A.product_coords(x, u.coords) for x in fp.ideal_basis], A.dim, A.field)
    return Au.rank, Bu.rank


def random_invertible_over(C: Algebra, n: int, rng) -> list[list[Element]]:
    """Random ``n x n`` matrix over C that is invertible over C (unit diagonal times unitriangular)."""
    from .algebra import random_element, random_unit
    rows = [[C.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        d = random_unit(C, rng)
        for j in range(n):
            if j == i:
                rows[i][j] = d
            elif j < i:
                rows[i][j] = d * random_element(C, rng, 1)
    return rows
