"""Finite-dimensional modules, Hom and tensor products, projectivity, Ext/Tor.

A :class:`ModuleRep` stores one action matrix per basis element of its
algebra. For right modules ``action[i]`` is the matrix of ``m -> m e_i``, so
``action(x y) = action(y) action(x)``.

Projectivity is decided by splitting a free cover ``B^k -> M``; no block or
radical data is consulted, which keeps this route independent of the
criterion ``A delta A = A``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import (LEFT, RIGHT, Algebra, AlgebraMorphism, Element, _own, augmented_homotope,
                      mult_operator, psi_morphisms, require_associative)
from .errors import AlgebraMismatch, MorphismError
from .linalg import Echelon, Matrix, kernel_basis, rank, solve


@dataclass(eq=False)
class ModuleRep:
    algebra: Algebra
    side: str
    dim: int
    action: list
    tags: dict = dc_field(default_factory=dict)
    check: bool = dc_field(default=True, repr=False)

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise ValueError("side must be 'left' or 'right'")
        if len(self.action) != self.algebra.dim:
            raise ValueError("need one action matrix per basis element")
        for M in self.action:
            if M.shape != (self.dim, self.dim):
                raise ValueError("action matrix of shape %s on a module of dim %d" % (M.shape, self.dim))
        if self.check:
            self.verify()

    @property
    def field(self):
        return self.algebra.field

    def act(self, b: Element) -> Matrix:
        _own(self.algebra, b)
        out = Matrix.zeros(self.dim, self.dim, self.field)
        for c, M in zip(b.coords, self.action):
            if c:
                out = out + M.scale(c)
        return out

    def apply(self, l: int, v) -> list:
        """Action of the basis element ``e_l`` on a vector."""
        return self.action[l].apply(v)

    def verify(self) -> None:
        A = self.algebra
        d = A.dim
        for i in range(d):
            for j in range(d):
                terms = A.table.get((i, j), {})
                lhs = Matrix.zeros(self.dim, self.dim, self.field)
                for l, c in terms.items():
                    lhs = lhs + self.action[l].scale(c)
                if self.side == LEFT:
                    rhs = self.action[i] @ self.action[j]
                else:
                    rhs = self.action[j] @ self.action[i]
                if lhs != rhs:
                    raise MorphismError("action does not respect e_%d e_%d" % (i, j))
        if A.unit is not None and self.act(A.unit) != Matrix.identity(self.dim, self.field):
            raise MorphismError("unit does not act as the identity")


@dataclass(eq=False)
class ModuleMorphism:
    source: ModuleRep
    target: ModuleRep
    matrix: Matrix
    check: bool = dc_field(default=True, repr=False)

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra or self.source.side != self.target.side:
            raise AlgebraMismatch("modules over different algebras or sides")
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise MorphismError("matrix shape %s does not match %d <- %d"
                                % (self.matrix.shape, self.target.dim, self.source.dim))
        if self.check and not self.intertwines():
            raise MorphismError("linear map does not commute with the action")

    def intertwines(self) -> bool:
        X = self.matrix
        return all(X @ P == Q @ X for P, Q in zip(self.source.action, self.target.action))

    @property
    def rank(self) -> int:
        return rank(self.matrix)

    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and self.rank == self.source.dim

    def kernel(self) -> list[list]:
        return kernel_basis(self.matrix)


# ---------------------------------------------------------------------------
# constructors

def regular_module(A: Algebra, side: str = LEFT) -> ModuleRep:
    require_associative(A)
    ops = A.left_ops() if side == LEFT else A.right_ops()
    return ModuleRep(A, side, A.dim, list(ops), {"name": "regular"}, check=False)


def zero_module(A: Algebra, side: str = LEFT) -> ModuleRep:
    return ModuleRep(A, side, 0, [Matrix.zeros(0, 0, A.field) for _ in range(A.dim)],
                     {"name": "zero"}, check=False)


def trivial_module(B: Algebra, side: str = LEFT) -> ModuleRep:
    """``k`` with B acting through the augmentation (coordinate 0)."""
    F = B.field
    action = [Matrix._raw([[F.one if i == 0 else F.zero]], F, 1) for i in range(B.dim)]
    return ModuleRep(B, side, 1, action, {"name": "trivial"}, check=False)


def restrict_along(f: AlgebraMorphism, M: ModuleRep) -> ModuleRep:
    """``f_*M``: the source algebra acts through f."""
    if M.algebra is not f.target:
        raise AlgebraMismatch("module is not over the target of the morphism")
    action = [M.act(f(f.source.basis(i))) for i in range(f.source.dim)]
    return ModuleRep(f.source, M.side, M.dim, action, {"name": "restricted", "from": M.tags.get("name")})


def direct_sum_modules(mods: list[ModuleRep]) -> ModuleRep:
    from .linalg import block_diag
    A, side = mods[0].algebra, mods[0].side
    action = [block_diag([M.action[i] for M in mods], A.field) for i in range(A.dim)]
    return ModuleRep(A, side, sum(M.dim for M in mods), action, {"name": "sum"}, check=False)


def free_module(B: Algebra, k: int, side: str = LEFT) -> ModuleRep:
    R = regular_module(B, side)
    if k == 0:
        return zero_module(B, side)
    return direct_sum_modules([R] * k)


@dataclass
class AugmentationModules:
    B: Algebra
    psi1: AlgebraMorphism
    psi2: AlgebraMorphism
    B_plus_left: ModuleRep
    B_plus_right: ModuleRep
    trivial: ModuleRep
    trivial_right: ModuleRep


def augmentation_modules(A: Algebra, delta: Element, B: Algebra | None = None) -> AugmentationModules:
    """``B^+`` as a left module through psi_1 and as a right module through psi_2."""
    if B is None:
        B = augmented_homotope(A, delta)
    psi1, psi2 = psi_morphisms(A, delta, B)
    left = restrict_along(psi1, regular_module(A, LEFT))
    right = restrict_along(psi2, regular_module(A, RIGHT))
    left.tags["name"] = "B-plus-left"
    right.tags["name"] = "B-plus-right"
    return AugmentationModules(B, psi1, psi2, left, right,
                               trivial_module(B, LEFT), trivial_module(B, RIGHT))


def submodule(M: ModuleRep, vectors) -> Echelon:
    """Span of the submodule generated by ``vectors``."""
    E = Echelon(M.dim, M.field)
    _close(E, vectors, lambda l, v: M.apply(l, v), M.algebra.dim)
    return E


def _close(E: Echelon, vectors, act, nops: int) -> None:
    queue = list(vectors)
    while queue:
        w = queue.pop()
        if E.add(w):
            for l in range(nops):
                queue.append(act(l, w))


def quotient_module(M: ModuleRep, sub: Echelon) -> tuple[ModuleRep, Matrix]:
    """``M / sub`` on the free columns of ``sub`` and the projection matrix."""
    F = M.field
    keep = sub.free_columns()
    q = len(keep)
    unit_vecs = [[F.one if k == c else F.zero for k in range(M.dim)] for c in keep]
    action = []
    for l in range(M.algebra.dim):
        cols = [sub.quotient_coords(M.apply(l, v)) for v in unit_vecs]
        action.append(Matrix.from_columns(cols, F, q))
    proj_cols = [sub.quotient_coords([F.one if k == c else F.zero for k in range(M.dim)])
                 for c in range(M.dim)]
    Q = ModuleRep(M.algebra, M.side, q, action, {"name": "quotient"}, check=False)
    return Q, Matrix.from_columns(proj_cols, F, q)


def submodule_rep(M: ModuleRep, sub: Echelon) -> tuple[ModuleRep, Matrix]:
    """The submodule as a module in the echelon basis, with its inclusion."""
    basis = sub.basis()
    F = M.field
    incl = Matrix.from_columns(basis, F, M.dim)
    action = []
    for l in range(M.algebra.dim):
        cols = [_coords_in(sub, basis, M.apply(l, v)) for v in basis]
        action.append(Matrix.from_columns(cols, F, len(basis)))
    return ModuleRep(M.algebra, M.side, len(basis), action, {"name": "submodule"}, check=False), incl


def _coords_in(sub: Echelon, basis, v) -> list:
    # the echelon basis is reduced, so coordinates are the pivot entries
    z = sub.field.zero
    if not sub.contains(v):
        raise MorphismError("vector outside the subspace")
    return [v[c] if v[c] else z for c in sub.pivots]


def cyclic_quotient(B: Algebra, u: Element, side: str = LEFT) -> ModuleRep:
    """``B / B u`` (left) or ``B / u B`` (right)."""
    R = regular_module(B, side)
    Q, _ = quotient_module(R, submodule(R, [u.coords]))
    Q.tags["name"] = "cyclic quotient"
    return Q


# ---------------------------------------------------------------------------
# Hom and tensor

def hom_space(M: ModuleRep, N: ModuleRep) -> list[ModuleMorphism]:
    """Basis of ``Hom(M, N)`` over the common algebra."""
    if M.algebra is not N.algebra or M.side != N.side:
        raise AlgebraMismatch("modules over different algebras or sides")
    m, n, F = M.dim, N.dim, M.field
    nv = m * n
    E = Echelon(nv, F)
    for P, Q in zip(M.action, N.action):
        Pr, Qr = P.rows, Q.rows
        # (X P - Q X)[r][c] = 0, X[r][t] has index r*m + t
        for r in range(n):
            for c in range(m):
                row = {}
                for t in range(m):
                    a = Pr[t][c]
                    if a:
                        row[r * m + t] = row.get(r * m + t, F.zero) + a
                for t in range(n):
                    a = Qr[r][t]
                    if a:
                        row[t * m + c] = row.get(t * m + c, F.zero) - a
                row = {k: v for k, v in row.items() if v}
                if row:
                    E.add(row)
    out = []
    for v in E.null_space():
        X = Matrix._raw([list(v[r * m:(r + 1) * m]) for r in range(n)], F, m)
        out.append(ModuleMorphism(M, N, X, check=False))
    return out


@dataclass(eq=False)
class TensorProduct:
    """``M (x)_B N`` as a quotient of ``M (x)_k N`` (index ``i * dim N + j``)."""

    M: ModuleRep
    N: ModuleRep
    relations: Echelon

    @property
    def dim(self) -> int:
        return self.M.dim * self.N.dim - self.relations.rank

    @property
    def representatives(self) -> list[tuple[int, int]]:
        n = self.N.dim
        return [divmod(f, n) for f in self.relations.free_columns()]

    def project(self, vec) -> list:
        return self.relations.quotient_coords(vec)

    def elementary(self, m, n) -> list:
        """Coordinates of ``m (x) n`` in the quotient."""
        z = self.M.field.zero
        v = {}
        nd = self.N.dim
        for i, a in enumerate(m):
            if a:
                for j, b in enumerate(n):
                    if b:
                        v[i * nd + j] = a * b
        return self.project(v) if v else [z] * self.dim

    def projection(self) -> Matrix:
        F = self.M.field
        size = self.M.dim * self.N.dim
        cols = [self.project({k: F.one}) for k in range(size)]
        return Matrix.from_columns(cols, F, self.dim)


def tensor_over_algebra(M: ModuleRep, N: ModuleRep) -> TensorProduct:
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules over different algebras")
    if M.side != RIGHT or N.side != LEFT:
        raise AlgebraMismatch("need a right module tensored with a left module")
    m, n, F = M.dim, N.dim, M.field
    E = Echelon(m * n, F)
    for P, Q in zip(M.action, N.action):
        for i in range(m):
            for j in range(n):
                row = {}
                # (m_i b) (x) n_j
                for k in range(m):
                    a = P.rows[k][i]
                    if a:
                        row[k * n + j] = row.get(k * n + j, F.zero) + a
                # - m_i (x) (b n_j)
                for l in range(n):
                    a = Q.rows[l][j]
                    if a:
                        row[i * n + l] = row.get(i * n + l, F.zero) - a
                row = {k: v for k, v in row.items() if v}
                if row:
                    E.add(row)
    return TensorProduct(M, N, E)


# ---------------------------------------------------------------------------
# free covers and projectivity

class _Free:
    """Coordinates on ``B^k`` (index ``c * dim B + l``) with the regular action."""

    def __init__(self, B: Algebra, k: int, side: str):
        self.B, self.k, self.side = B, k, side
        self.nb = B.dim
        self.ops = B.left_ops() if side == LEFT else B.right_ops()
        self.dim = k * B.dim

    def act(self, l: int, v) -> list:
        nb, op = self.nb, self.ops[l]
        out = []
        for c in range(self.k):
            out.extend(op.apply(v[c * nb:(c + 1) * nb]))
        return out


def generators(act, nops: int, dim: int, spanning, field) -> list[list]:
    """Greedy generating set: sweep ``spanning`` and keep vectors not yet generated."""
    E = Echelon(dim, field)
    gens = []
    for v in spanning:
        if not E.contains(v):
            gens.append(list(v))
            _close(E, [v], act, nops)
    return gens


def _std_basis(n: int, F) -> list[list]:
    return [[F.one if k == i else F.zero for k in range(n)] for i in range(n)]


def _cover_columns(act, nb: int, gens) -> list[list]:
    return [act(l, g) for g in gens for l in range(nb)]


def module_generators(M: ModuleRep) -> list[list]:
    return generators(M.apply, M.algebra.dim, M.dim, _std_basis(M.dim, M.field), M.field)


@dataclass
class CoverData:
    generators: list
    kernel: list
    kernel_generators: list


def free_cover(M: ModuleRep) -> CoverData:
    """Cover ``B^k -> M`` on a greedy generating set, its kernel and kernel generators."""
    B, F = M.algebra, M.field
    gens = module_generators(M)
    k = len(gens)
    cols = _cover_columns(M.apply, B.dim, gens)
    pi = Matrix.from_columns(cols, F, M.dim)
    K = kernel_basis(pi) if cols else []
    free = _Free(B, k, M.side)
    kgens = generators(free.act, B.dim, free.dim, K, F) if K else []
    return CoverData(gens, K, kgens)


def projective_section(M: ModuleRep):
    """Images ``n_j`` in ``B^k`` of the generators under a module section, or None.

    A section exists iff there are ``n_j`` with ``pi(n_j) = g_j`` that satisfy
    every relation ``sum_j kappa_j n_j = 0`` among the generators.
    """
    B, F = M.algebra, M.field
    if M.dim == 0:
        return []
    cov = free_cover(M)
    gens, k, nb = cov.generators, len(cov.generators), B.dim
    fd = k * nb
    nv = k * fd
    # variable (j, c, l): coefficient of e_l in component c of n_j
    E = Echelon(nv + 1, F)
    w = _cover_columns(M.apply, nb, gens)      # w[c*nb + l] = e_l . g_c
    for j in range(k):
        for t in range(M.dim):
            row = {}
            for cl in range(fd):
                a = w[cl][t]
                if a:
                    row[j * fd + cl] = a
            if gens[j][t]:
                row[nv] = gens[j][t]
            if row:
                E.add(row)
    for kappa in cov.kernel_generators:
        mats = []
        for j in range(k):
            kj = Element._raw(B, kappa[j * nb:(j + 1) * nb])
            mats.append(mult_operator(B, kj, M.side).rows if any(kj.coords) else None)
        for c in range(k):
            for m in range(nb):
                row = {}
                for j in range(k):
                    L = mats[j]
                    if L is None:
                        continue
                    for l in range(nb):
                        a = L[m][l]
                        if a:
                            row[j * fd + c * nb + l] = a
                if row:
                    E.add(row)
    if nv in E.rows:
        return None
    x = [F.zero] * nv
    for c, row in E.rows.items():
        x[c] = row.get(nv, F.zero)
    return [x[j * fd:(j + 1) * fd] for j in range(k)]


def is_projective(M: ModuleRep) -> bool:
    return projective_section(M) is not None


# ---------------------------------------------------------------------------
# Ext and Tor

def ext1_trivial(A: Algebra, delta: Element, mods: AugmentationModules | None = None) -> int:
    """``dim Ext^1_B(k, k) = dim Hom_B(B^+, k)``."""
    if mods is None:
        mods = augmentation_modules(A, delta)
    return len(hom_space(mods.B_plus_left, mods.trivial))


def _resolution(V: ModuleRep, length: int):
    """Differentials of a free resolution ``F_length -> ... -> F_0 -> V``.

    Entry i lists the images in ``F_{i-1}`` of the free generators of F_i
    (entry 0 lists generators of V).
    """
    B, F = V.algebra, V.field
    nb = B.dim
    gens = module_generators(V)
    out = [gens]
    act, dim = V.apply, V.dim
    for _ in range(length):
        k = len(gens)
        cols = _cover_columns(act, nb, gens)
        K = kernel_basis(Matrix.from_columns(cols, F, dim)) if cols else []
        free = _Free(B, k, V.side)
        gens = generators(free.act, nb, free.dim, K, F) if K else []
        out.append(gens)
        act, dim = free.act, free.dim
    return out


def _induced(M: ModuleRep, images, k_prev: int) -> Matrix:
    """``M (x) d``: ``M^k -> M^k_prev`` for a differential given by generator images."""
    B, F = M.algebra, M.field
    nb, m = B.dim, M.dim
    rows = [[F.zero] * (m * len(images)) for _ in range(m * k_prev)]
    for c, w in enumerate(images):
        for cp in range(k_prev):
            part = w[cp * nb:(cp + 1) * nb]
            if not any(part):
                continue
            R = M.act(Element._raw(B, part))
            for a in range(m):
                for b in range(m):
                    if R.rows[a][b]:
                        rows[cp * m + a][c * m + b] = R.rows[a][b]
    return Matrix._raw(rows, F, m * len(images))


def tor_low(M: ModuleRep, V: ModuleRep, i: int) -> int:
    """``dim Tor_i^B(M, V)`` for i in {0, 1, 2} from a free resolution of V."""
    if i not in (0, 1, 2):
        raise ValueError("degree must be 0, 1 or 2")
    if M.side != RIGHT or V.side != LEFT or M.algebra is not V.algebra:
        raise AlgebraMismatch("need a right and a left module over the same algebra")
    res = _resolution(V, i + 1)
    ks = [len(g) for g in res]
    m = M.dim

    def d(j):
        if ks[j] == 0 or ks[j - 1] == 0:
            return None
        return _induced(M, res[j], ks[j - 1])

    dim_i = m * ks[i]
    out = d(i) if i > 0 else None
    inc = d(i + 1)
    ker = dim_i - (rank(out) if out is not None else 0)
    img = rank(inc) if inc is not None else 0
    return ker - img


# ---------------------------------------------------------------------------
# mu and the recollement

def _shift(A: Algebra, a_coords) -> list:
    """Coordinates in B of the copy of ``a`` in ``B^+``."""
    return [A.field.zero] + list(a_coords)


def _hom_with_A_action(A: Algebra, mods: AugmentationModules, V: ModuleRep):
    """``Hom_B({}_psi1 A, V)`` as a left A-module: ``(a'' phi)(a') = phi(a' a'')``."""
    basis = hom_space(mods.B_plus_left, V)
    F = A.field
    flat = Matrix.from_columns([X.matrix.flatten() for X in basis], F, V.dim * A.dim)
    action = []
    for R in A.right_ops():
        cols = []
        for X in basis:
            Y = (X.matrix @ R).flatten()
            sol = solve(flat, Y)
            if sol is None:
                raise MorphismError("Hom space is not closed under the A-action")
            cols.append(sol)
        action.append(Matrix.from_columns(cols, F, len(basis)))
    H = ModuleRep(A, LEFT, len(basis), action, {"name": "psi1-shriek"})
    return H, basis, flat


def _tensor_with_A_action(A: Algebra, mods: AugmentationModules, V: ModuleRep):
    """``A_psi2 (x)_B V`` as a left A-module: ``a'' (a (x) v) = (a'' a) (x) v``."""
    T = tensor_over_algebra(mods.B_plus_right, V)
    F = A.field
    reps = T.representatives
    n = V.dim
    action = []
    for L in A.left_ops():
        cols = []
        for i, j in reps:
            col = L.column(i)
            cols.append(T.project({k * n + j: c for k, c in enumerate(col) if c}))
        action.append(Matrix.from_columns(cols, F, T.dim))
    return ModuleRep(A, LEFT, T.dim, action, {"name": "psi2-star"}), T


def mu_transform(A: Algebra, delta: Element, V: ModuleRep,
                 mods: AugmentationModules | None = None) -> ModuleMorphism:
    """``mu_V: A_psi2 (x)_B V -> Hom_B({}_psi1 A, V)``, ``a (x) v -> (a' -> rho(a' a) v)``.

    Raises MorphismError if the formula is not constant on tensor relations.
    """
    if mods is None:
        mods = augmentation_modules(A, delta, V.algebra if "augmented_from" in V.algebra.meta else None)
    if V.algebra is not mods.B or V.side != LEFT:
        raise AlgebraMismatch("V must be a left module over the augmented homotope")
    F, d, n = A.field, A.dim, V.dim
    H, hbasis, flat = _hom_with_A_action(A, mods, V)
    Trep, T = _tensor_with_A_action(A, mods, V)
    basis = [A.basis(t).coords for t in range(d)]
    B = mods.B
    # phi_{a_i (x) v_j} in Hom coordinates, for every elementary tensor
    full_cols = []
    cache = {}
    for i in range(d):
        for j in range(n):
            cols = []
            for t in range(d):
                key = (t, i)
                if key not in cache:
                    cache[key] = V.act(Element._raw(B, _shift(A, A.product_coords(basis[t], basis[i]))))
                cols.append(cache[key].column(j))
            Phi = Matrix.from_columns(cols, F, n)
            sol = solve(flat, Phi.flatten()) if hbasis else ([] if Phi.is_zero() else None)
            if sol is None:
                raise MorphismError("phi is not B-linear")
            full_cols.append(sol)
    full = Matrix.from_columns(full_cols, F, len(hbasis))
    for row in T.relations.rows.values():
        if any(full.apply(_dense(row, d * n, F))):
            raise MorphismError("mu is not well defined on the tensor product")
    cols = [full.column(i * n + j) for i, j in T.representatives]
    return ModuleMorphism(Trep, H, Matrix.from_columns(cols, F, H.dim))


def _dense(row: dict, n: int, F) -> list:
    v = [F.zero] * n
    for k, a in row.items():
        v[k] = a
    return v


@dataclass
class Check:
    name: str
    passed: bool
    data: dict = dc_field(default_factory=dict)


@dataclass
class RecollementReport:
    well_tempered: bool
    checks: list

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list:
        return [c for c in self.checks if not c.passed]


def _shriek_unit(A: Algebra, mods: AugmentationModules, M: ModuleRep):
    """``M -> psi1^! psi1_* M``, ``m -> (a' -> a' m)``."""
    N = restrict_along(mods.psi1, M)
    H, hbasis, flat = _hom_with_A_action(A, mods, N)
    F = A.field
    cols = []
    for j in range(M.dim):
        Phi = Matrix.from_columns([M.action[t].column(j) for t in range(A.dim)], F, M.dim)
        sol = solve(flat, Phi.flatten()) if hbasis else ([] if Phi.is_zero() else None)
        if sol is None:
            return None, H
        cols.append(sol)
    return ModuleMorphism(M, H, Matrix.from_columns(cols, F, H.dim)), H


def _star_counit(A: Algebra, mods: AugmentationModules, M: ModuleRep):
    """``psi2^* psi2_* M -> M``, ``a (x) m -> a m``."""
    N = restrict_along(mods.psi2, M)
    Trep, T = _tensor_with_A_action(A, mods, N)
    cols = [M.action[i].column(j) for i, j in T.representatives]
    return ModuleMorphism(Trep, M, Matrix.from_columns(cols, A.field, M.dim)), Trep, T


def recollement_report(A: Algebra, delta: Element, a_samples: list[ModuleRep],
                       b_samples: list[ModuleRep] | None = None,
                       mods: AugmentationModules | None = None) -> RecollementReport:
    """Check the recollement identities on sample modules; failures are recorded."""
    from .algebra import is_well_tempered_criterion
    if mods is None:
        mods = augmentation_modules(A, delta)
    B = mods.B
    if b_samples is None:
        b_samples = default_b_samples(A, mods)
    wt = is_well_tempered_criterion(A, delta)
    checks = [Check("well_tempered", True, {"value": wt})]
    for k, M in enumerate(a_samples):
        eta, H = _shriek_unit(A, mods, M)
        ok = eta is not None and eta.is_isomorphism()
        checks.append(Check("shriek_psi1_restrict_is_identity[%d]" % k, ok,
                            {"dim_M": M.dim, "dim_image": H.dim}))
        counit, Trep, _ = _star_counit(A, mods, M)
        checks.append(Check("star_psi2_restrict_is_identity[%d]" % k, counit.is_isomorphism(),
                            {"dim_M": M.dim, "dim_image": Trep.dim}))
        checks.append(Check("triangle_psi1[%d]" % k, _triangle_shriek(A, mods, M), {}))
        checks.append(Check("triangle_psi2[%d]" % k, _triangle_star(A, mods, M), {}))
    for k, V in enumerate(b_samples):
        Trep, _ = _tensor_with_A_action(A, mods, V)
        plus_zero = all(V.action[i].is_zero() for i in range(1, B.dim))
        checks.append(Check("image_eps_is_kernel_psi2[%d]" % k, (Trep.dim == 0) == plus_zero,
                            {"trivial_isotypic": plus_zero, "dim_psi2_star": Trep.dim}))
        try:
            mu = mu_transform(A, delta, V, mods)
            checks.append(Check("mu_iso[%d]" % k, mu.is_isomorphism(),
                                {"source": mu.source.dim, "target": mu.target.dim, "rank": mu.rank}))
        except MorphismError as e:
            checks.append(Check("mu_iso[%d]" % k, False, {"error": str(e)}))
    return RecollementReport(wt, checks)


def _triangle_shriek(A, mods, M) -> bool:
    """``psi1_* M -> psi1_* psi1^! psi1_* M -> psi1_* M`` is the identity (evaluate at 1)."""
    eta, H = _shriek_unit(A, mods, M)
    if eta is None:
        return False
    N = restrict_along(mods.psi1, M)
    hbasis = hom_space(mods.B_plus_left, N)
    one = A.unit.coords
    ev = Matrix.from_columns([X.matrix.apply(one) for X in hbasis], A.field, M.dim) \
        if hbasis else Matrix.zeros(M.dim, 0, A.field)
    return ev @ eta.matrix == Matrix.identity(M.dim, A.field)


def _triangle_star(A, mods, M) -> bool:
    """``psi2_* M -> psi2_* psi2^* psi2_* M -> psi2_* M`` is the identity."""
    counit, Trep, T = _star_counit(A, mods, M)
    unit_cols = [T.elementary(A.unit.coords, _std(M.dim, j, A.field)) for j in range(M.dim)]
    eta = Matrix.from_columns(unit_cols, A.field, T.dim)
    return counit.matrix @ eta == Matrix.identity(M.dim, A.field)


def _std(n, j, F):
    return [F.one if k == j else F.zero for k in range(n)]


def default_b_samples(A: Algebra, mods: AugmentationModules) -> list[ModuleRep]:
    B = mods.B
    out = [mods.trivial, regular_module(B, LEFT), restrict_along(mods.psi1, regular_module(A, LEFT)),
           restrict_along(mods.psi2, regular_module(A, LEFT))]
    return out


def default_a_samples(A: Algebra, rng=None) -> list[ModuleRep]:
    from .algebra import random_element
    out = [regular_module(A, LEFT)]
    if rng is not None:
        for _ in range(2):
            out.append(cyclic_quotient(A, random_element(A, rng, 1), LEFT))
    return out
