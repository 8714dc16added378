"""Radical, Wedderburn blocks and normal forms of elements up to units.

The radical uses Dickson's trace criterion, so it is exact over Q and over
F_p with p larger than the dimension. Block discovery splits the centre of
the semisimple quotient with minimal polynomials and rational roots; a
minimal polynomial without a full set of roots raises :class:`NotSplitError`.
Operations that need a Wedderburn-Malcev complement read it from the
``matrix_units`` of the algebra's :class:`BlockData`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .algebra import (LEFT, Algebra, BlockData, Element, _own, adjoin_unit, augmented_homotope,
                      embed_in_homotope, inverse, mult_operator, quotient, require_associative,
                      require_unital)
from .errors import AlgebraError, CharacteristicError, MissingSplittingError, NotSplitError
from .linalg import Echelon, Matrix, is_subspace, kernel_basis, rank, solve, span


# ---------------------------------------------------------------------------
# radical

def _check_characteristic(A: Algebra, dim: int) -> None:
    p = A.field.p
    if p is not None and p <= dim:
        raise CharacteristicError("trace criterion needs p > %d, got p = %d" % (dim, p))


def jacobson_radical(A: Algebra) -> list[Element]:
    """Basis of R(A) = {x : tr(L_{x y}) = 0 for all y}."""
    require_associative(A)
    if A.unit is None and A.dim > 0:
        U = adjoin_unit(A)
        U._assoc = True
        rad = jacobson_radical(U)
        # the radical of the unitalization lies in A (indices 1..d)
        return [Element._raw(A, x.coords[1:]) for x in rad]
    _check_characteristic(A, A.dim)
    cached = A.meta.get("_radical")
    if cached is not None:
        return cached
    d, F = A.dim, A.field
    traces = []
    for M in A.left_ops():
        t = F.zero
        for i in range(d):
            t = t + M.rows[i][i]
        traces.append(t)
    # gram[y][x] = tr(L_{e_x e_y})
    gram = Matrix.zeros(d, d, F)
    for (x, y), terms in A.table.items():
        acc = F.zero
        for l, c in terms.items():
            acc = acc + c * traces[l]
        gram.rows[y][x] = acc
    basis = [Element._raw(A, v) for v in kernel_basis(gram)]
    _check_nilpotent(A, basis)
    A.meta["_radical"] = basis
    return basis


def _check_nilpotent(A: Algebra, basis: list[Element]) -> None:
    if not basis:
        return
    rad = [x.coords for x in basis]
    power = rad
    for _ in range(A.dim + 1):
        E = Echelon(A.dim, A.field)
        for p in power:
            for r in rad:
                E.add(A.product_coords(p, r))
        power = E.basis()
        if not power:
            return
    raise AlgebraError("computed radical is not nilpotent")


def semisimple_quotient(A: Algebra):
    """``A / R(A)`` and the projection."""
    return quotient(A, jacobson_radical(A))


def center(A: Algebra) -> list[Element]:
    d = A.dim
    rows = []
    for L, R in zip(A.left_ops(), A.right_ops()):
        # z e_i - e_i z = (R_i - L_i) z
        rows.extend((R - L).rows)
    return [Element._raw(A, v) for v in kernel_basis(Matrix._raw(rows, A.field, d))]


# ---------------------------------------------------------------------------
# polynomials

def minimal_polynomial(A: Algebra, x: Element, unit: Element | None = None) -> list:
    """Monic minimal polynomial of ``x`` (coefficients low to high).

    ``unit`` lets the computation run inside a corner ``cAc`` with identity c.
    """
    _own(A, x)
    if unit is None:
        unit = require_unital(A)
    powers = [list(unit.coords)]
    while True:
        nxt = A.product_coords(powers[-1], x.coords)
        M = Matrix.from_columns(powers, A.field, A.dim)
        sol = solve(M, nxt)
        if sol is not None:
            return [-c for c in sol] + [A.field.one]
        powers.append(nxt)
        if len(powers) > A.dim + 1:
            raise AlgebraError("minimal polynomial degree exceeds dimension")


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    f = 1
    while f * f <= n:
        if n % f == 0:
            small.append(f)
            if f * f != n:
                large.append(n // f)
        f += 1
    return small + large[::-1]


def poly_eval(coeffs, x):
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


BRUTE_FORCE_LIMIT = 200_000


def field_roots(coeffs, field) -> list:
    """Distinct roots in the base field (rational root search or enumeration)."""
    coeffs = [field(c) for c in coeffs]
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    if field.p is not None:
        if field.p > BRUTE_FORCE_LIMIT:
            raise NotImplementedError("root search over F_p is brute force; p too large")
        return [x for x in field.elements() if not poly_eval(coeffs, x)]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    roots = []
    if ints[0] == 0:
        roots.append(Fraction(0))
        while ints and ints[0] == 0:
            ints.pop(0)
    if len(ints) <= 1:
        return roots
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and poly_eval(ints, cand) == 0:
                    roots.append(cand)
    return sorted(roots)


# ---------------------------------------------------------------------------
# blocks

def wedderburn_blocks(S: Algebra) -> BlockData:
    """Central primitive idempotents and block sizes of a split semisimple algebra."""
    require_associative(S)
    unit = require_unital(S)
    if S.dim == 0:
        return BlockData([], [])
    Z = center(S)
    idems = [unit]
    for z in Z:
        nxt = []
        for c in idems:
            y = z * c
            poly = minimal_polynomial(S, y, c)
            roots = field_roots(poly, S.field)
            if len(roots) != len(poly) - 1:
                raise NotSplitError("minimal polynomial %s of a central element does not split"
                                    % ([str(a) for a in poly],))
            if len(roots) == 1:
                nxt.append(c)
                continue
            for k, lam in enumerate(roots):
                e = c
                for l, mu in enumerate(roots):
                    if l != k:
                        e = e * (y - mu * c) * (1 / (lam - mu))
                nxt.append(e)
        idems = nxt
    if len(idems) != len(Z):
        raise NotSplitError("centre is not split over %s" % S.field)
    idems.sort(key=lambda c: (min(i for i, a in enumerate(c.coords) if a), c.coords.__repr__()))
    sizes = []
    for c in idems:
        dim_block = rank(mult_operator(S, c, LEFT))
        n = isqrt(dim_block)
        if n * n != dim_block:
            raise NotSplitError("block of dimension %d is not a full matrix algebra" % dim_block)
        sizes.append(n)
    return BlockData(idems, sizes)


def quotient_blocks(A: Algebra):
    """``(S, proj, BlockData(S))`` for ``S = A/R(A)``, cached on A.

    When A carries block metadata the blocks are listed in its order.
    """
    cached = A.meta.get("_quotient_blocks")
    if cached is not None:
        return cached
    S, proj = semisimple_quotient(A)
    bd = wedderburn_blocks(S)
    if A.blocks is not None and len(A.blocks.idempotents) == len(bd.idempotents):
        order = []
        for c in A.blocks.idempotents:
            img = proj(c)
            match = [k for k, e in enumerate(bd.idempotents) if e == img]
            if len(match) != 1:
                order = None
                break
            order.append(match[0])
        if order is not None:
            bd = BlockData([bd.idempotents[k] for k in order], [bd.block_sizes[k] for k in order])
    A.meta["_quotient_blocks"] = (S, proj, bd)
    return S, proj, bd


def _require_lift(A: Algebra):
    if A.blocks is None or A.blocks.matrix_units is None:
        raise MissingSplittingError("operation needs a Wedderburn-Malcev complement (matrix units); "
                                    "algebra files can supply one under 'matrix_units'")
    return A.blocks.matrix_units


def split_parts(A: Algebra, x: Element):
    """Write ``x = s + r`` with s in the lifted complement and r in R(A).

    Returns ``(s, r, coeffs)`` where ``coeffs[i]`` is the n_i x n_i matrix of s
    in block i.
    """
    _own(A, x)
    mu = _require_lift(A)
    cache = A.meta.get("_wm_inverse")
    if cache is None:
        cols = [E.coords for blk in mu for row in blk for E in row]
        rad = jacobson_radical(A)
        cols += [r.coords for r in rad]
        from .linalg import invert
        P = Matrix.from_columns(cols, A.field, A.dim)
        Pinv = invert(P) if P.ncols == A.dim else None
        if Pinv is None:
            raise AlgebraError("matrix units and radical do not form a basis")
        cache = (Pinv, rad)
        A.meta["_wm_inverse"] = cache
    Pinv, rad = cache
    c = Pinv.apply(x.coords)
    coeffs, t = [], 0
    s = A.zero()
    for blk in mu:
        n = len(blk)
        X = Matrix.zeros(n, n, A.field)
        for a in range(n):
            for b in range(n):
                X.rows[a][b] = c[t]
                if c[t]:
                    s = s + c[t] * blk[a][b]
                t += 1
        coeffs.append(X)
    return s, x - s, coeffs


def lift_block_matrices(A: Algebra, mats) -> Element:
    mu = _require_lift(A)
    x = A.zero()
    for blk, X in zip(mu, mats):
        for a, row in enumerate(X.rows):
            for b, c in enumerate(row):
                if c:
                    x = x + c * blk[a][b]
    return x


def block_ranks(A: Algebra, delta: Element, method: str = "auto") -> list[int]:
    """``rank_i(delta)``: rank of delta in the i-th irreducible representation.

    ``quotient``: rank of left multiplication by ``delta c_i`` on ``S = A/R``
    divided by n_i. ``lift``: matrix rank of the block coefficients of the
    complement part of delta. ``auto`` prefers the lift when present.
    """
    _own(A, delta)
    if method == "auto":
        method = "lift" if A.blocks is not None and A.blocks.matrix_units is not None else "quotient"
    if method == "lift":
        _, _, coeffs = split_parts(A, delta)
        return [rank(X) for X in coeffs]
    S, proj, bd = quotient_blocks(A)
    dbar = proj(delta)
    out = []
    for c, n in zip(bd.idempotents, bd.block_sizes):
        r = rank(mult_operator(S, dbar * c, LEFT))
        if r % n:
            raise AlgebraError("rank %d not divisible by block size %d" % (r, n))
        out.append(r // n)
    return out


def rank_normal_form(X: Matrix):
    """Invertible ``P, Q`` with ``P X Q = diag(1, ..., 1, 0, ..., 0)``.

    An idempotent X is left alone (``P = Q = I``).
    """
    n, F = X.nrows, X.field
    if X @ X == X:
        return Matrix.identity(n, F), Matrix.identity(n, F), rank(X)
    E = Echelon(2 * n, F)
    ident = Matrix.identity(n, F)
    for r, s in zip(X.rows, ident.rows):
        E.add(r + s)
    rows = E.basis()
    P = Matrix._raw([row[n:] for row in rows], F, n)
    R = [row[:n] for row in rows]
    piv = [c for c in E.pivots if c < n]
    r = len(piv)
    free = [c for c in range(n) if c not in piv]
    cols = []
    for c in piv:
        cols.append([F.one if k == c else F.zero for k in range(n)])
    for f in free:
        v = [F.one if k == f else F.zero for k in range(n)]
        for t, c in enumerate(piv):
            v[c] = v[c] - R[t][f]
        cols.append(v)
    Q = Matrix.from_columns(cols, F, n)
    return P, Q, r


@dataclass
class SuitableForm:
    s: Element
    r: Element
    u: Element
    v: Element
    I_sets: list
    ranks: list

    def check(self, delta: Element) -> bool:
        s, r = self.s, self.r
        A = s.algebra
        return (s * s == s and not (s * r) and not (r * s)
                and self.u * delta * self.v == s + r
                and inverse(A, self.u) is not None and inverse(A, self.v) is not None)


def suitable_form(A: Algebra, delta: Element) -> SuitableForm:
    """Double-coset representative ``u delta v = s + r`` with ``s^2 = s``, ``sr = rs = 0``.

    Three steps: blockwise rank normal form ``h1 s1 h2 = s``, then right
    translation by ``(1 + r2)^-1`` and left translation by ``(1 + r3)^-1``.
    """
    require_associative(A)
    one = require_unital(A)
    s1, r1, coeffs = split_parts(A, delta)
    Ps, Qs, Ds, ranks = [], [], [], []
    for X in coeffs:
        P, Q, rk = rank_normal_form(X)
        Ps.append(P)
        Qs.append(Q)
        Ds.append(P @ X @ Q)
        ranks.append(rk)
    h1, h2 = lift_block_matrices(A, Ps), lift_block_matrices(A, Qs)
    s = lift_block_matrices(A, Ds)
    x2 = h1 * delta * h2
    r2 = x2 - s
    inv2 = inverse(A, one + r2)
    r3 = (one - s) * r2 * inv2
    inv3 = inverse(A, one + r3)
    r = r3 * inv3 * (one - s)
    u = inv3 * h1
    v = h2 * inv2
    form = SuitableForm(s, r, u, v, [list(range(k)) for k in ranks], ranks)
    if not form.check(delta):
        raise AlgebraError("suitable form verification failed")
    return form


def is_invertible(A: Algebra, x: Element) -> bool:
    require_unital(A)
    return rank(mult_operator(A, x, LEFT)) == A.dim


# ---------------------------------------------------------------------------
# homotope corollaries

@dataclass
class RadicalComparison:
    contained: bool
    equal: bool
    dims: tuple[int, int]
    delta_invertible: bool

    @property
    def consistent(self) -> bool:
        """Containment always; equality exactly for invertible delta."""
        return self.contained and self.equal == self.delta_invertible


def radical_compare(A: Algebra, delta: Element, B: Algebra | None = None) -> RadicalComparison:
    if B is None:
        B = augmented_homotope(A, delta)
    RA = jacobson_radical(A)
    RB = jacobson_radical(B)
    EA = span([embed_in_homotope(B, x).coords for x in RA], B.dim, B.field)
    EB = span([x.coords for x in RB], B.dim, B.field)
    contained = is_subspace(EA, EB)
    return RadicalComparison(contained, contained and EA.rank == EB.rank,
                             (len(RA), len(RB)), is_invertible(A, delta))


def homotope_rep_dims(A: Algebra, delta: Element) -> list[int]:
    """Dimensions of the irreducible representations of the augmented homotope."""
    return sorted([r for r in block_ranks(A, delta) if r > 0] + [1])


@dataclass
class UnitFactorization:
    semisimple_part: Element
    unipotent_part: Element
    side: str = "right"

    def product(self) -> Element:
        if self.side == "right":
            return self.semisimple_part * self.unipotent_part
        return self.unipotent_part * self.semisimple_part


def unit_factor(A: Algebra, u: Element, side: str = "right") -> UnitFactorization:
    """``u = g (1 + n)`` (side ``right``) or ``u = (1 + n) g`` (side ``left``).

    g lies in the lifted semisimple complement and n in R(A).
    """
    one = require_unital(A)
    if inverse(A, u) is None:
        raise AlgebraError("element is not invertible")
    g, _, _ = split_parts(A, u)
    ginv = inverse(A, g)
    unip = ginv * u if side == "right" else u * ginv
    rad = span([x.coords for x in jacobson_radical(A)], A.dim, A.field)
    if not rad.contains((unip - one).coords):
        raise AlgebraError("unipotent part is not 1 + radical")
    out = UnitFactorization(g, unip, side)
    if out.product() != u:
        raise AlgebraError("factorization does not reproduce the unit")
    return out


def primitive_idempotents_commutative(C: Algebra) -> list[Element]:
    """Primitive idempotents of a split commutative algebra, lifted from ``C/R``."""
    S, proj, bd = quotient_blocks(C)
    out = []
    for cbar in bd.idempotents:
        x = Element._raw(C, solve(proj.matrix, cbar.coords))
        for _ in range(C.dim + 2):
            x2 = x * x
            if x2 == x:
                break
            x = 3 * x2 - 2 * x2 * x
        out.append(x)
    return out
