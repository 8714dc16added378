"""Finite-dimensional algebras given by structure constants.

An :class:`Algebra` stores ``c^l_{ij}`` sparsely as ``table[(i, j)] = {l: c}``
so that ``e_i e_j = sum_l c^l_{ij} e_l``. Associativity and units are never
assumed; operations that need them check and raise.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .errors import (AlgebraError, AlgebraMismatch, MorphismError, NotAnIdealError,
                     NotAssociativeError, NotUnitalError)
from .linalg import QQ, Echelon, FieldSpec, Matrix, invert, solve, span

LEFT, RIGHT = "left", "right"


@dataclass
class BlockData:
    """Wedderburn block data of the semisimple part.

    ``matrix_units[i][j][k]`` is the element ``E^i_{jk}`` of a
    Wedderburn-Malcev complement, when the algebra was built from one.
    """

    idempotents: list
    block_sizes: list[int]
    matrix_units: list | None = None

    @property
    def lift(self):
        return self.matrix_units

    @property
    def diag_idempotents(self):
        if self.matrix_units is None:
            return None
        return [[E[j][j] for j in range(len(E))] for E in self.matrix_units]

    def moved(self, f) -> "BlockData":
        """Transport along a map of elements ``f``."""
        mu = None
        if self.matrix_units is not None:
            mu = [[[f(x) for x in row] for row in E] for E in self.matrix_units]
        return BlockData([f(c) for c in self.idempotents], list(self.block_sizes), mu)


class Element:
    """Coordinate vector of an algebra element."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: "Algebra", coords: Sequence):
        F = algebra.field
        coords = tuple(F(c) for c in coords)
        if len(coords) != algebra.dim:
            raise ValueError("expected %d coordinates, got %d" % (algebra.dim, len(coords)))
        self.algebra = algebra
        self.coords = coords

    @classmethod
    def _raw(cls, algebra, coords):
        x = object.__new__(cls)
        x.algebra = algebra
        x.coords = tuple(coords)
        return x

    def _check(self, other):
        if not isinstance(other, Element) or other.algebra is not self.algebra:
            raise AlgebraMismatch("elements belong to different algebras")

    def __add__(self, other):
        if isinstance(other, (int,)) and other == 0:
            return self
        self._check(other)
        return Element._raw(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        self._check(other)
        return Element._raw(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return Element._raw(self.algebra, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self.algebra, self, other)
        c = self.algebra.field(other)
        return Element._raw(self.algebra, [c * a for a in self.coords])

    def __rmul__(self, other):
        c = self.algebra.field(other)
        return Element._raw(self.algebra, [c * a for a in self.coords])

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not any(self.coords)
        if not isinstance(other, Element):
            return NotImplemented
        return other.algebra is self.algebra and self.coords == other.coords

    __hash__ = None

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        out = ""
        rational = self.algebra.field.is_rational
        for lab, c in zip(self.algebra.labels, self.coords):
            if not c:
                continue
            sign = " + "
            if rational and c < 0:
                sign, c = " - ", -c
            term = lab if c == 1 else "%s*%s" % (c, lab)
            out += sign + term
        if not out:
            return "0"
        return out[3:] if out.startswith(" + ") else "-" + out[3:]


class Algebra:
    """Algebra on ``k^d`` with sparse structure constants.

    ``sc`` is an iterable of ``(i, j, l, c)`` or a mapping ``{(i, j): {l: c}}``.
    """

    def __init__(self, field: FieldSpec, dim: int, sc, labels: Sequence[str] | None = None,
                 unit: Sequence | None = None, blocks: BlockData | None = None,
                 name: str | None = None, check_unit: bool = True):
        if dim < 0:
            raise AlgebraError("dimension must be nonnegative")
        self.field = field
        self.dim = dim
        self.labels = list(labels) if labels is not None else ["e%d" % i for i in range(dim)]
        if len(self.labels) != dim:
            raise AlgebraError("expected %d labels" % dim)
        table: dict = {}
        items = sc.items() if isinstance(sc, dict) else None
        if items is not None:
            for (i, j), terms in items:
                for l, c in terms.items():
                    self._put(table, i, j, l, c)
        else:
            for i, j, l, c in sc:
                self._put(table, i, j, l, c)
        self.table = {k: v for k, v in table.items() if v}
        self.name = name
        self.meta: dict = {}
        self._assoc: bool | None = None
        self._left_ops = None
        self._right_ops = None
        self.unit = None
        if unit is not None:
            u = Element(self, unit)
            if check_unit and not _is_unit(self, u):
                raise NotUnitalError("declared unit does not act as identity")
            self.unit = u
        self.blocks = blocks

    def _put(self, table, i, j, l, c):
        d = self.dim
        for idx in (i, j, l):
            if not (isinstance(idx, int) and 0 <= idx < d):
                raise AlgebraError("structure constant index %r out of range [0, %d)" % (idx, d))
        c = self.field(c)
        if not c:
            return
        terms = table.setdefault((i, j), {})
        v = terms.get(l)
        v = c if v is None else v + c
        if v:
            terms[l] = v
        else:
            terms.pop(l, None)

    # -- elements -----------------------------------------------------------------

    def element(self, coords: Sequence) -> Element:
        return Element(self, coords)

    def zero(self) -> Element:
        return Element._raw(self, [self.field.zero] * self.dim)

    def basis(self, i: int | None = None):
        if i is None:
            return [self.basis(k) for k in range(self.dim)]
        z, one = self.field.zero, self.field.one
        return Element._raw(self, [one if k == i else z for k in range(self.dim)])

    def one(self) -> Element:
        if self.unit is None:
            raise NotUnitalError("algebra has no recorded unit")
        return self.unit

    def __getitem__(self, label: str) -> Element:
        return self.basis(self.labels.index(label))

    def structure_constants(self):
        for (i, j), terms in sorted(self.table.items()):
            for l, c in sorted(terms.items()):
                yield i, j, l, c

    def product_coords(self, x: Sequence, y: Sequence) -> list:
        z = self.field.zero
        out = [z] * self.dim
        for (i, j), terms in self.table.items():
            a = x[i]
            if a:
                b = y[j]
                if b:
                    ab = a * b
                    for l, c in terms.items():
                        out[l] = out[l] + ab * c
        return out

    def left_ops(self) -> list[Matrix]:
        """Matrices of ``x -> e_i x`` for every basis element."""
        if self._left_ops is None:
            self._left_ops = [mult_operator(self, self.basis(i), LEFT) for i in range(self.dim)]
        return self._left_ops

    def right_ops(self) -> list[Matrix]:
        if self._right_ops is None:
            self._right_ops = [mult_operator(self, self.basis(i), RIGHT) for i in range(self.dim)]
        return self._right_ops

    def is_commutative(self) -> bool:
        return all(self.table.get((i, j), {}) == self.table.get((j, i), {})
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def __repr__(self):
        name = self.name or "Algebra"
        return "<%s dim=%d over %s%s>" % (name, self.dim, self.field, "" if self.unit is None else ", unital")


def _is_unit(A: Algebra, u: Element) -> bool:
    for i in range(A.dim):
        e = A.basis(i).coords
        if A.product_coords(u.coords, e) != list(e) or A.product_coords(e, u.coords) != list(e):
            return False
    return True


def same_structure(A: Algebra, B: Algebra) -> bool:
    return A.field == B.field and A.dim == B.dim and A.table == B.table


def _own(A: Algebra, x: Element) -> Element:
    if not isinstance(x, Element) or x.algebra is not A:
        raise AlgebraMismatch("element does not belong to %r" % (A,))
    return x


# ---------------------------------------------------------------------------
# basic operations

def multiply(A: Algebra, x: Element, y: Element) -> Element:
    _own(A, x)
    _own(A, y)
    return Element._raw(A, A.product_coords(x.coords, y.coords))


def is_associative(A: Algebra) -> bool:
    if A._assoc is None:
        A._assoc = associator_failure(A) is None
    return A._assoc


def associator_failure(A: Algebra):
    """First basis triple ``(i, j, k)`` with ``(e_i e_j) e_k != e_i (e_j e_k)``."""
    d = A.dim
    basis = [A.basis(i).coords for i in range(d)]
    prods = {(i, j): A.product_coords(basis[i], basis[j]) for i in range(d) for j in range(d)}
    for i in range(d):
        for j in range(d):
            ij = prods[(i, j)]
            for k in range(d):
                if A.product_coords(ij, basis[k]) != A.product_coords(basis[i], prods[(j, k)]):
                    return (i, j, k)
    return None


def require_associative(A: Algebra) -> None:
    if not is_associative(A):
        raise NotAssociativeError("%r is not associative" % (A,))


def require_unital(A: Algebra) -> Element:
    if A.unit is None:
        u = find_unit(A)
        if u is None:
            raise NotUnitalError("%r has no unit" % (A,))
        A.unit = u
    return A.unit


def find_unit(A: Algebra) -> Element | None:
    """Solve ``u e_i = e_i u = e_i`` for all i."""
    d, F = A.dim, A.field
    if d == 0:
        return A.zero()
    rows, rhs = [], []
    R, L = A.right_ops(), A.left_ops()
    # u e_i = R_i u and e_i u = L_i u
    for i in range(d):
        e = A.basis(i).coords
        for M in (R[i], L[i]):
            rows.extend(M.rows)
            rhs.extend(e)
    sol = solve(Matrix._raw(rows, F, d), rhs)
    if sol is None:
        return None
    return Element._raw(A, sol)


def mult_operator(A: Algebra, a: Element, side: str = LEFT) -> Matrix:
    """Matrix of ``x -> a x`` (left) or ``x -> x a`` (right)."""
    _own(A, a)
    d, F = A.dim, A.field
    M = Matrix.zeros(d, d, F)
    rows = M.rows
    for (i, j), terms in A.table.items():
        if side == LEFT:
            c, col = a.coords[i], j
        else:
            c, col = a.coords[j], i
        if c:
            for l, s in terms.items():
                rows[l][col] = rows[l][col] + c * s
    return M


def homotope(A: Algebra, a: Element, side: str = LEFT) -> Algebra:
    """The a-homotope: ``x * y = x (a y)`` (left) or ``(x a) y`` (right)."""
    _own(A, a)
    d = A.dim
    basis = [A.basis(i).coords for i in range(d)]
    table = {}
    if side == LEFT:
        ay = [A.product_coords(a.coords, basis[j]) for j in range(d)]
        for i in range(d):
            for j in range(d):
                table[(i, j)] = _sparse(A.product_coords(basis[i], ay[j]))
    else:
        xa = [A.product_coords(basis[i], a.coords) for i in range(d)]
        for i in range(d):
            for j in range(d):
                table[(i, j)] = _sparse(A.product_coords(xa[i], basis[j]))
    H = Algebra(A.field, d, table, labels=A.labels, name="homotope")
    H.meta["homotope_of"] = (A, a, side)
    return H


def _sparse(v):
    return {l: c for l, c in enumerate(v) if c}


def augmented_homotope(A: Algebra, delta: Element) -> Algebra:
    """``B = k 1_B + A`` with ``(l + a)(m + b) = lm + lb + ma + a delta b``.

    Index 0 is the adjoined unit; indices ``1..d`` carry the augmentation
    ideal ``B^+``, a copy of A.
    """
    _own(A, delta)
    require_associative(A)
    require_unital(A)
    d, F = A.dim, A.field
    one = F.one
    table = {(0, 0): {0: one}}
    for i in range(d):
        table[(0, i + 1)] = {i + 1: one}
        table[(i + 1, 0)] = {i + 1: one}
    basis = [A.basis(i).coords for i in range(d)]
    dy = [A.product_coords(delta.coords, basis[j]) for j in range(d)]
    for i in range(d):
        for j in range(d):
            p = A.product_coords(basis[i], dy[j])
            table[(i + 1, j + 1)] = {l + 1: c for l, c in enumerate(p) if c}
    unit_label = "1" if "1" not in A.labels else "1_B"
    unit = [one] + [F.zero] * d
    B = Algebra(F, d + 1, table, labels=[unit_label] + A.labels, unit=unit,
                name="augmented homotope", check_unit=False)
    B.meta["augmented_from"] = (A, delta)
    B._assoc = True
    return B


def augmentation_ideal(B: Algebra) -> list[Element]:
    """Basis of ``B^+`` for an augmented homotope (the last d coordinates)."""
    if "augmented_from" not in B.meta:
        raise AlgebraError("not an augmented homotope")
    return [B.basis(i) for i in range(1, B.dim)]


def embed_in_homotope(B: Algebra, a: Element) -> Element:
    """The copy of ``a`` inside ``B^+``."""
    A = B.meta["augmented_from"][0]
    _own(A, a)
    return Element._raw(B, (B.field.zero,) + a.coords)


def counit(B: Algebra, b: Element):
    """Augmentation ``epsilon: B -> k``."""
    _own(B, b)
    return b.coords[0]


# ---------------------------------------------------------------------------
# subspaces, ideals and quotients

def subspace(A: Algebra, vectors: Iterable) -> Echelon:
    E = Echelon(A.dim, A.field)
    for v in vectors:
        E.add(v.coords if isinstance(v, Element) else v)
    return E


def as_elements(A: Algebra, E: Echelon) -> list[Element]:
    return [Element._raw(A, v) for v in E.basis()]


def principal_two_sided_ideal(A: Algebra, x: Element) -> list[Element]:
    """Basis of ``A x A`` spanned by the products ``e_i x e_j``."""
    _own(A, x)
    require_associative(A)
    require_unital(A)
    d = A.dim
    E = Echelon(d, A.field)
    basis = [A.basis(i).coords for i in range(d)]
    for i in range(d):
        ix = A.product_coords(basis[i], x.coords)
        if not any(ix):
            continue
        for j in range(d):
            E.add(A.product_coords(ix, basis[j]))
            if E.rank == d:
                return as_elements(A, E)
    return as_elements(A, E)


def is_well_tempered_criterion(A: Algebra, delta: Element) -> bool:
    """``A delta A = A`` (equivalent to well-temperedness for finite dimension)."""
    return len(principal_two_sided_ideal(A, delta)) == A.dim


def ideal_closure(A: Algebra, gens: Iterable, sides: str = "both") -> Echelon:
    """Smallest subspace containing ``gens`` and stable under basis multiplication.

    ``sides`` is ``"left"`` (stable under ``e_i *``), ``"right"`` or ``"both"``.
    The generators themselves are included, so for non-unital algebras this is
    the ideal generated, not ``A x A``.
    """
    E = Echelon(A.dim, A.field)
    todo = []
    for g in gens:
        v = g.coords if isinstance(g, Element) else list(g)
        if E.add(v):
            todo.append(v)
    basis = [A.basis(i).coords for i in range(A.dim)]
    while todo:
        v = todo.pop()
        for e in basis:
            cands = []
            if sides in ("left", "both"):
                cands.append(A.product_coords(e, v))
            if sides in ("right", "both"):
                cands.append(A.product_coords(v, e))
            for w in cands:
                if any(w) and E.add(w):
                    todo.append(w)
        if E.rank == A.dim:
            break
    return E


def is_two_sided_ideal(A: Algebra, I: Iterable) -> bool:
    E = subspace(A, I)
    basis = [A.basis(i).coords for i in range(A.dim)]
    for v in E.basis():
        for e in basis:
            if not E.contains(A.product_coords(e, v)) or not E.contains(A.product_coords(v, e)):
                return False
    return True


def quotient(A: Algebra, I: Iterable) -> tuple[Algebra, "AlgebraMorphism"]:
    """Quotient by a two-sided ideal on the complement basis of free columns."""
    I = list(I)
    if not is_two_sided_ideal(A, I):
        raise NotAnIdealError("subspace is not a two-sided ideal")
    E = subspace(A, I)
    keep = E.free_columns()
    q, F = len(keep), A.field
    basis = [A.basis(i).coords for i in range(A.dim)]
    table = {}
    for a, ca in enumerate(keep):
        for b, cb in enumerate(keep):
            table[(a, b)] = _sparse(E.quotient_coords(A.product_coords(basis[ca], basis[cb])))
    unit = E.quotient_coords(A.unit.coords) if A.unit is not None else None
    Q = Algebra(F, q, table, labels=[A.labels[c] for c in keep], unit=unit, name="quotient")
    Q.meta["quotient_of"] = (A, E)
    if A._assoc:
        Q._assoc = True
    cols = [E.quotient_coords(basis[k]) for k in range(A.dim)]
    proj = AlgebraMorphism(A, Q, Matrix.from_columns(cols, F, q), unital=A.unit is not None)
    return Q, proj


# ---------------------------------------------------------------------------
# constructors

def matrix_algebra(n: int, field: FieldSpec = QQ) -> Algebra:
    if n < 1:
        raise ValueError("n must be positive")
    one = field.one
    table = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                table[(i * n + j, j * n + k)] = {i * n + k: one}
    fmt = "e%d%d" if n < 10 else "e%d_%d"
    labels = [fmt % (i + 1, j + 1) for i in range(n) for j in range(n)]
    unit = [one if (k // n == k % n) else field.zero for k in range(n * n)]
    A = Algebra(field, n * n, table, labels=labels, unit=unit, name="M_%d" % n, check_unit=False)
    A._assoc = True
    units = [[A.basis(i * n + j) for j in range(n)] for i in range(n)]
    A.blocks = BlockData([A.unit], [n], [units])
    A.meta["radical"] = []
    return A


def direct_sum(A1: Algebra, A2: Algebra) -> Algebra:
    if A1.field != A2.field:
        raise AlgebraMismatch("field mismatch")
    d1, d2 = A1.dim, A2.dim
    table = {}
    for (i, j), t in A1.table.items():
        table[(i, j)] = dict(t)
    for (i, j), t in A2.table.items():
        table[(i + d1, j + d1)] = {l + d1: c for l, c in t.items()}
    labels = list(A1.labels) + list(A2.labels)
    if len(set(labels)) < len(labels):
        labels = ["%s_1" % s for s in A1.labels] + ["%s_2" % s for s in A2.labels]
    unit = None
    if A1.unit is not None and A2.unit is not None:
        unit = A1.unit.coords + A2.unit.coords
    S = Algebra(A1.field, d1 + d2, table, labels=labels, unit=unit, name="direct sum", check_unit=False)
    if A1._assoc and A2._assoc:
        S._assoc = True
    z1, z2 = (A1.field.zero,) * d1, (A1.field.zero,) * d2
    inc1 = lambda x: Element._raw(S, x.coords + z2)
    inc2 = lambda x: Element._raw(S, z1 + x.coords)
    if A1.blocks is not None and A2.blocks is not None:
        b1, b2 = A1.blocks.moved(inc1), A2.blocks.moved(inc2)
        mu = None
        if b1.matrix_units is not None and b2.matrix_units is not None:
            mu = b1.matrix_units + b2.matrix_units
        S.blocks = BlockData(b1.idempotents + b2.idempotents, b1.block_sizes + b2.block_sizes, mu)
    if "radical" in A1.meta and "radical" in A2.meta:
        S.meta["radical"] = [inc1(x) for x in A1.meta["radical"]] + [inc2(x) for x in A2.meta["radical"]]
    return S


def field_algebra(field: FieldSpec = QQ) -> Algebra:
    return matrix_algebra(1, field)


def polynomial_algebra(coeffs: Sequence, field: FieldSpec = QQ) -> Algebra:
    """``k[x]/(f)`` for monic ``f`` given by coefficients low to high."""
    f = [field(c) for c in coeffs]
    n = len(f) - 1
    if n < 1 or f[-1] != 1:
        raise ValueError("need a monic polynomial of degree >= 1")
    z, one = field.zero, field.one
    powers = []
    for k in range(2 * n - 1):
        if k < n:
            v = [z] * n
            v[k] = one
        else:
            prev = powers[k - 1]
            v = [z] + prev[:-1]
            top = prev[-1]
            if top:
                v = [a - top * c for a, c in zip(v, f[:-1])]
        powers.append(v)
    table = {}
    for a in range(n):
        for b in range(n):
            table[(a, b)] = _sparse(powers[a + b])
    labels = ["1", "x"] + ["x^%d" % k for k in range(2, n)]
    A = Algebra(field, n, table, labels=labels[:n], unit=powers[0], name="k[x]/(f)", check_unit=False)
    A._assoc = True
    A.meta["modulus"] = f
    return A


def dual_numbers(field: FieldSpec = QQ) -> Algebra:
    return polynomial_algebra([0, 0, 1], field)


def upper_triangular(n: int, field: FieldSpec = QQ) -> Algebra:
    pos = [(i, j) for i in range(n) for j in range(i, n)]
    index = {p: k for k, p in enumerate(pos)}
    one = field.one
    table = {}
    for (i, j) in pos:
        for (j2, k) in pos:
            if j == j2:
                table[(index[(i, j)], index[(j, k)])] = {index[(i, k)]: one}
    labels = ["e%d%d" % (i + 1, j + 1) for i, j in pos]
    unit = [one if i == j else field.zero for i, j in pos]
    A = Algebra(field, len(pos), table, labels=labels, unit=unit, name="T_%d" % n, check_unit=False)
    A._assoc = True
    diag = [A.basis(index[(i, i)]) for i in range(n)]
    A.blocks = BlockData(diag, [1] * n, [[[e]] for e in diag])
    A.meta["radical"] = [A.basis(index[(i, j)]) for i, j in pos if i < j]
    return A


def zero_algebra(d: int, field: FieldSpec = QQ) -> Algebra:
    return Algebra(field, d, {}, name="zero multiplication")


def adjoin_unit(A: Algebra) -> Algebra:
    """Unitalization ``k 1 + A`` (index 0 is the new unit)."""
    d, F = A.dim, A.field
    one = F.one
    table = {(0, 0): {0: one}}
    for i in range(d):
        table[(0, i + 1)] = {i + 1: one}
        table[(i + 1, 0)] = {i + 1: one}
    for (i, j), t in A.table.items():
        table[(i + 1, j + 1)] = {l + 1: c for l, c in t.items()}
    label = "1" if "1" not in A.labels else "1_u"
    U = Algebra(F, d + 1, table, labels=[label] + A.labels, unit=[one] + [F.zero] * d,
                name="unitalization", check_unit=False)
    U.meta["unitalization_of"] = A
    return U


def _matrix_unit_algebra(field: FieldSpec, sizes: Sequence[int], arrows: Sequence[tuple[int, int]],
                         square_zero: bool, name: str) -> Algebra:
    """Algebra spanned by matrix units of semisimple blocks plus arrow pieces.

    Piece ``(i, j)`` is a copy of ``n_i x n_j`` matrices with block i acting on
    the left and block j on the right. With ``square_zero`` pieces multiply to
    zero (a square-zero extension); otherwise pieces compose like block
    matrices, which requires ``arrows`` to be transitively closed.
    """
    basis = []  # (piece, a, b); piece = ("S", i) or ("M", t)
    for i, n in enumerate(sizes):
        basis += [(("S", i), a, b) for a in range(n) for b in range(n)]
    for t, (i, j) in enumerate(arrows):
        basis += [(("M", t), a, b) for a in range(sizes[i]) for b in range(sizes[j])]
    index = {b: k for k, b in enumerate(basis)}

    def ends(piece):
        kind, t = piece
        return (t, t) if kind == "S" else arrows[t]

    lookup = {ends(("S", i)): ("S", i) for i in range(len(sizes))}
    if not square_zero:
        for t, e in enumerate(arrows):
            lookup[e] = ("M", t)
    one = field.one
    table = {}
    for x, (p, a, b) in enumerate(basis):
        i, j = ends(p)
        for y, (q, c, e) in enumerate(basis):
            j2, k = ends(q)
            if j != j2 or b != c:
                continue
            if p[0] == "M" and q[0] == "M":
                if square_zero:
                    continue
                target = lookup.get((i, k))
            elif p[0] == "S":
                target = q
            else:
                target = p
            if target is None:
                raise AlgebraError("arrow set is not transitively closed")
            table[(x, y)] = {index[(target, a, e)]: one}
    labels = []
    for (p, a, b) in basis:
        if p[0] == "S":
            labels.append("s%d_%d%d" % (p[1] + 1, a + 1, b + 1))
        else:
            labels.append("m%d_%d%d" % (p[1] + 1, a + 1, b + 1))
    unit = [field.zero] * len(basis)
    for i, n in enumerate(sizes):
        for a in range(n):
            unit[index[(("S", i), a, a)]] = one
    A = Algebra(field, len(basis), table, labels=labels, unit=unit, name=name, check_unit=False)
    A._assoc = True
    units = [[[A.basis(index[(("S", i), a, b)]) for b in range(n)] for a in range(n)]
             for i, n in enumerate(sizes)]
    idem = [sum(E[a][a] for a in range(len(E))) for E in units]
    A.blocks = BlockData(idem, list(sizes), units)
    A.meta["radical"] = [A.basis(k) for k, (p, _, _) in enumerate(basis) if p[0] == "M"]
    return A


def square_zero_extension(sizes: Sequence[int], pieces: Sequence[tuple[int, int]],
                          field: FieldSpec = QQ) -> Algebra:
    return _matrix_unit_algebra(field, sizes, pieces, True, "square-zero extension")


def incidence_algebra(sizes: Sequence[int], relation: Iterable[tuple[int, int]],
                      field: FieldSpec = QQ) -> Algebra:
    """Block upper triangular matrices with block (i, j) allowed when ``i < j`` in ``relation``."""
    rel = set(relation)
    changed = True
    while changed:
        changed = False
        for (i, j) in list(rel):
            for (j2, k) in list(rel):
                if j == j2 and (i, k) not in rel:
                    rel.add((i, k))
                    changed = True
    if any(i == j for i, j in rel) or any((j, i) in rel for i, j in rel):
        raise AlgebraError("relation must be a strict partial order")
    return _matrix_unit_algebra(field, sizes, sorted(rel), False, "incidence algebra")


def change_basis(A: Algebra, P: Matrix) -> tuple[Algebra, "AlgebraMorphism"]:
    """Same algebra written in the basis given by the columns of ``P``.

    Returns the new algebra ``A'`` and the isomorphism ``A -> A'``.
    """
    Pinv = invert(P)
    if Pinv is None:
        raise ValueError("change of basis must be invertible")
    d, F = A.dim, A.field
    cols = P.columns()
    table = {}
    for i in range(d):
        for j in range(d):
            table[(i, j)] = _sparse(Pinv.apply(A.product_coords(cols[i], cols[j])))
    unit = Pinv.apply(A.unit.coords) if A.unit is not None else None
    B = Algebra(F, d, table, labels=["f%d" % i for i in range(d)], unit=unit,
                name=A.name, check_unit=False)
    B._assoc = A._assoc
    to_new = lambda x: Element._raw(B, Pinv.apply(x.coords))
    if A.blocks is not None:
        B.blocks = A.blocks.moved(to_new)
    if "radical" in A.meta:
        B.meta["radical"] = [to_new(x) for x in A.meta["radical"]]
    iso = AlgebraMorphism(A, B, Pinv, unital=A.unit is not None)
    return B, iso


def random_unimodular(d: int, rng: random.Random, field: FieldSpec, steps: int = 6) -> Matrix:
    """Product of a few elementary matrices with entries in {-1, 1}."""
    P = Matrix.identity(d, field)
    if d < 2:
        return P
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        c = field(rng.choice((-1, 1)))
        P.rows[i] = [a + c * b for a, b in zip(P.rows[i], P.rows[j])]
    return P


PROFILES = ("SplitSemisimple", "SemisimplePlusNilpotent", "TriangularLike")


def _random_sizes(rng: random.Random, budget: int, max_blocks: int) -> list[int]:
    sizes = []
    while len(sizes) < max_blocks:
        options = [n for n in (1, 2) if n * n <= budget]
        if not options:
            break
        n = rng.choice(options)
        sizes.append(n)
        budget -= n * n
        if sizes and rng.random() < 0.35:
            break
    return sizes


def random_test_algebra(seed, profile: str = "SplitSemisimple", field: FieldSpec = QQ,
                        max_dim: int = 8, scramble: bool = False) -> Algebra:
    """Deterministic associative unital algebra with known block metadata.

    ``SplitSemisimple``: a direct sum of matrix algebras.
    ``SemisimplePlusNilpotent``: a square-zero extension by bimodule pieces.
    ``TriangularLike``: block upper triangular (incidence) algebra, whose
    radical need not square to zero.
    With ``scramble`` the structure constants are rewritten in a random
    unimodular basis.
    """
    rng = random.Random("%s/%s" % (profile, seed))
    if profile == "SplitSemisimple":
        sizes = _random_sizes(rng, max_dim, 4)
        A = square_zero_extension(sizes, [], field)
        A.name = "semisimple"
    elif profile == "SemisimplePlusNilpotent":
        while True:
            sizes = _random_sizes(rng, max(1, max_dim - 1), 3)
            used = sum(n * n for n in sizes)
            pieces = []
            for _ in range(rng.randint(1, 3)):
                i, j = rng.randrange(len(sizes)), rng.randrange(len(sizes))
                if used + sizes[i] * sizes[j] <= max_dim:
                    pieces.append((i, j))
                    used += sizes[i] * sizes[j]
            if pieces:
                break
        A = square_zero_extension(sizes, pieces, field)
    elif profile == "TriangularLike":
        while True:
            t = rng.randint(2, 4)
            sizes = [rng.choice((1, 1, 1, 2)) for _ in range(t)]
            rel = {(i, j) for i in range(t) for j in range(i + 1, t) if rng.random() < 0.5}
            if not rel:
                continue
            try:
                A = incidence_algebra(sizes, rel, field)
            except AlgebraError:
                continue
            if A.dim <= max_dim:
                break
    else:
        raise ValueError("unknown profile %r" % (profile,))
    if scramble:
        A, _ = change_basis(A, random_unimodular(A.dim, rng, field))
    A.meta["profile"] = profile
    A.meta["seed"] = seed
    return A


def random_element(A: Algebra, rng: random.Random, bound: int = 2) -> Element:
    return Element._raw(A, [A.field.random(rng, bound) for _ in range(A.dim)])


def inverse(A: Algebra, x: Element) -> Element | None:
    """Two-sided inverse in a unital associative algebra, or None."""
    _own(A, x)
    u = require_unital(A)
    y = solve(mult_operator(A, x, LEFT), u.coords)
    if y is None:
        return None
    return Element._raw(A, y)


def random_unit(A: Algebra, rng: random.Random, bound: int = 1) -> Element:
    """Random invertible element (rejection sampling around the unit)."""
    u = require_unital(A)
    for _ in range(200):
        x = u + random_element(A, rng, bound)
        if inverse(A, x) is not None:
            return x
    return u


def random_delta(A: Algebra, rng: random.Random, mode: str | None = None) -> Element:
    """Random element biased to cover well-tempered and degenerate cases.

    Modes: ``generic``, ``zero``, ``radical``, ``partial`` (random block
    components, some blocks possibly zero, translated by random units).
    """
    modes = ["generic", "partial", "partial", "radical", "zero"]
    if mode is None:
        mode = rng.choice(modes)
    if mode == "generic":
        return random_element(A, rng)
    if mode == "zero":
        return A.zero()
    rad = A.meta.get("radical", [])
    r = A.zero()
    for x in rad:
        r = r + A.field(rng.randint(-1, 1)) * x
    if mode == "radical":
        return r
    if A.blocks is None or A.blocks.matrix_units is None:
        return random_element(A, rng)
    s = A.zero()
    mu = A.blocks.matrix_units
    alive = [rng.random() < 0.6 for _ in mu]
    if all(alive) and len(mu) > 0 and rng.random() < 0.5:
        alive[rng.randrange(len(mu))] = False
    for keep, E in zip(alive, mu):
        if not keep:
            continue
        n = len(E)
        for a in range(n):
            for b in range(n):
                c = rng.randint(-1, 1)
                if c:
                    s = s + A.field(c) * E[a][b]
    x = s + r
    return random_unit(A, rng) * x * random_unit(A, rng)


# ---------------------------------------------------------------------------
# morphisms

@dataclass(eq=False)
class AlgebraMorphism:
    """Linear map ``source -> target`` verified to be multiplicative."""

    source: Algebra
    target: Algebra
    matrix: Matrix
    unital: bool = False
    check: bool = dc_field(default=True, repr=False)

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise MorphismError("matrix shape %s does not match %d <- %d"
                                % (self.matrix.shape, self.target.dim, self.source.dim))
        if self.check:
            self.verify()

    def images(self) -> list[list]:
        return self.matrix.columns()

    def verify(self) -> None:
        S, T = self.source, self.target
        imgs = self.images()
        basis = [S.basis(i).coords for i in range(S.dim)]
        for i in range(S.dim):
            for j in range(S.dim):
                lhs = self.matrix.apply(S.product_coords(basis[i], basis[j]))
                rhs = T.product_coords(imgs[i], imgs[j])
                if lhs != rhs:
                    raise MorphismError("not multiplicative on (%s, %s)" % (S.labels[i], S.labels[j]))
        if self.unital:
            if S.unit is None or T.unit is None:
                raise MorphismError("unital morphism between non-unital algebras")
            if tuple(self.matrix.apply(S.unit.coords)) != T.unit.coords:
                raise MorphismError("unit is not preserved")

    def __call__(self, x: Element) -> Element:
        _own(self.source, x)
        return Element._raw(self.target, self.matrix.apply(x.coords))

    def image(self) -> Echelon:
        return span(self.images(), self.target.dim, self.target.field)

    def kernel(self) -> list[Element]:
        from .linalg import kernel_basis
        return [Element._raw(self.source, v) for v in kernel_basis(self.matrix)]

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and invert(self.matrix) is not None


def identity_morphism(A: Algebra) -> AlgebraMorphism:
    return AlgebraMorphism(A, A, Matrix.identity(A.dim, A.field), unital=A.unit is not None, check=False)


def psi_morphisms(A: Algebra, delta: Element, B: Algebra | None = None):
    """The unital morphisms ``psi_1: a -> a delta`` and ``psi_2: a -> delta a``.

    Both go from ``B = augmented_homotope(A, delta)`` to A.
    """
    _own(A, delta)
    if B is None:
        B = augmented_homotope(A, delta)
    u = require_unital(A)
    d = A.dim
    basis = [A.basis(i).coords for i in range(d)]
    c1 = [list(u.coords)] + [A.product_coords(basis[i], delta.coords) for i in range(d)]
    c2 = [list(u.coords)] + [A.product_coords(delta.coords, basis[i]) for i in range(d)]
    psi1 = AlgebraMorphism(B, A, Matrix.from_columns(c1, A.field, d), unital=True)
    psi2 = AlgebraMorphism(B, A, Matrix.from_columns(c2, A.field, d), unital=True)
    return psi1, psi2


def epsilon_morphism(B: Algebra) -> AlgebraMorphism:
    """The augmentation as a morphism to the one-dimensional algebra k."""
    k = field_algebra(B.field)
    row = [B.field.one] + [B.field.zero] * (B.dim - 1)
    return AlgebraMorphism(B, k, Matrix._raw([row], B.field, B.dim), unital=True)


# ---------------------------------------------------------------------------
# element literals

def parse_element(A: Algebra, text: str) -> Element:
    """Parse ``"0,1,0,0"``, a basis label ``"e11"`` or a combination like ``"e11 - 1/2*e12"``."""
    text = text.strip()
    if text in A.labels:
        return A[text]
    if text == "0":
        return A.zero()
    if "," in text or re.fullmatch(r"[-0-9/ ]+", text):
        parts = [p for p in text.replace(" ", ",").split(",") if p]
        if len(parts) != A.dim:
            raise ValueError("expected %d coordinates, got %d" % (A.dim, len(parts)))
        return Element(A, [A.field.parse(p) for p in parts])
    x = A.zero()
    for tok in re.split(r"(?=[+-])", text.replace(" ", "")):
        if not tok:
            continue
        m = re.fullmatch(r"([+-]?)([0-9]+(?:/[0-9]+)?)?\*?(.+)?", tok)
        if not m or m.group(3) is None or m.group(3) not in A.labels:
            raise ValueError("cannot parse term %r of %r" % (tok, text))
        coef = A.field.parse(m.group(2) or "1")
        if m.group(1) == "-":
            coef = -coef
        x = x + coef * A[m.group(3)]
    return x
