"""Multiplication tensors without associativity: isotopy, unitalization, envelopes, genericity.

A tensor is an :class:`Algebra` whose associativity is never assumed.
``l_v = m(v, -)`` and ``r_v = m(-, v)`` are :func:`mult_operator` with sides
left and right.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from math import isqrt

from .algebra import LEFT, RIGHT, Algebra, Element, find_unit, homotope, mult_operator
from .errors import AlgebraError, GenericityError
from .linalg import QQ, Echelon, FieldSpec, Matrix, invert, kernel_basis, rank, solve, span
from .structure import field_roots

BOTH = "both"


def random_tensor(d: int, field: FieldSpec = QQ, seed=0, bound: int = 3) -> Algebra:
    """i.i.d. structure constants (uniform over F_p, integers in [-bound, bound] over Q)."""
    rng = random.Random("tensor/%s/%s/%s" % (d, field, seed))
    sc = [(i, j, l, field.random(rng, bound)) for i in range(d) for j in range(d) for l in range(d)]
    return Algebra(field, d, sc, name="random tensor")


def tensor_from_operators(field: FieldSpec, d: int, ops, side: str = LEFT) -> Algebra:
    """Tensor with ``m(e_i, -) = ops[i]`` (left) or ``m(-, e_i) = ops[i]`` (right)."""
    sc = []
    for i, M in enumerate(ops):
        for j in range(d):
            col = M.column(j)
            for l, c in enumerate(col):
                if c:
                    sc.append((i, j, l, c) if side == LEFT else (j, i, l, c))
    return Algebra(field, d, sc)


def bilinear(m: Algebra, x, y) -> list:
    return m.product_coords(x, y)


# ---------------------------------------------------------------------------
# isotopy

@dataclass
class IsotopyTriple:
    g1: Matrix
    g2: Matrix
    g3: Matrix

    def __post_init__(self):
        shapes = {g.shape for g in (self.g1, self.g2, self.g3)}
        if len(shapes) != 1 or self.g1.nrows != self.g1.ncols:
            raise ValueError("isotopy maps must be square of one size")
        for g in (self.g1, self.g2, self.g3):
            if rank(g) != g.nrows:
                raise ValueError("isotopy maps must be invertible")

    @classmethod
    def identity(cls, d: int, field: FieldSpec) -> "IsotopyTriple":
        I = Matrix.identity(d, field)
        return cls(I, I, I)

    def then(self, other: "IsotopyTriple") -> "IsotopyTriple":
        """Triple acting as ``self`` followed by ``other``."""
        return IsotopyTriple(other.g1 @ self.g1, other.g2 @ self.g2, other.g3 @ self.g3)

    @classmethod
    def random(cls, d: int, field: FieldSpec, rng: random.Random) -> "IsotopyTriple":
        return cls(*(random_invertible(d, field, rng) for _ in range(3)))


def random_invertible(d: int, field: FieldSpec, rng: random.Random, bound: int = 2) -> Matrix:
    while True:
        M = Matrix._raw([[field.random(rng, bound) for _ in range(d)] for _ in range(d)], field, d)
        if rank(M) == d:
            return M


def apply_isotopy(m: Algebra, t: IsotopyTriple) -> Algebra:
    """``m2(x, y) = g1 m(g2^-1 x, g3^-1 y)``."""
    d, F = m.dim, m.field
    if t.g1.shape != (d, d) or t.g1.field != F:
        raise AlgebraError("isotopy triple does not match the tensor")
    h2, h3 = invert(t.g2).columns(), invert(t.g3).columns()
    sc = []
    for i in range(d):
        for j in range(d):
            v = t.g1.apply(m.product_coords(h2[i], h3[j]))
            sc.extend((i, j, l, c) for l, c in enumerate(v) if c)
    return Algebra(F, d, sc, labels=m.labels, name="isotope")


def same_tensor(m1: Algebra, m2: Algebra) -> bool:
    return m1.dim == m2.dim and m1.table == m2.table


# ---------------------------------------------------------------------------
# invertibility classes

@dataclass
class InvertibilityReport:
    cls: int
    left_witness: Element | None
    right_witness: Element | None
    samples: int
    seed: object
    note: str = ""


def invertibility_class(m: Algebra, samples: int = 50, seed=0) -> InvertibilityReport:
    """Bruck class 1-4 from sampled elements.

    1: some l_v and some r_w invertible; 2: left only; 3: right only; 4: neither.
    Absence of an invertible operator means none was found among the
    unit (if any), the basis and ``samples`` random elements.
    """
    d = m.dim
    rng = random.Random("classify/%s" % (seed,))
    cands = []
    u = find_unit(m)
    if u is not None and d > 0:
        cands.append(u)
    cands.extend(m.basis(i) for i in range(d))
    for _ in range(samples):
        cands.append(Element._raw(m, [m.field.random(rng, 3) for _ in range(d)]))
    lw = rw = None
    for v in cands:
        if lw is None and rank(mult_operator(m, v, LEFT)) == d:
            lw = v
        if rw is None and rank(mult_operator(m, v, RIGHT)) == d:
            rw = v
        if lw is not None and rw is not None:
            break
    cls = {(True, True): 1, (True, False): 2, (False, True): 3, (False, False): 4}[(lw is not None, rw is not None)]
    note = "" if cls == 1 else "absence is sampled over %d candidates, not proved" % len(cands)
    return InvertibilityReport(cls, lw, rw, samples, seed, note)


# ---------------------------------------------------------------------------
# Kaplansky unitalization

def kaplansky_unitalize(m: Algebra, a: Element, b: Element) -> Algebra:
    """``m'(x, y) = m(r_b^-1 x, l_a^-1 y)``, unital with unit ``m(a, b)``."""
    d, F = m.dim, m.field
    rb_inv = invert(mult_operator(m, b, RIGHT))
    la_inv = invert(mult_operator(m, a, LEFT))
    if rb_inv is None or la_inv is None:
        raise AlgebraError("r_b and l_a must be invertible")
    X, Y = rb_inv.columns(), la_inv.columns()
    sc = []
    for i in range(d):
        for j in range(d):
            sc.extend((i, j, l, c) for l, c in enumerate(m.product_coords(X[i], Y[j])) if c)
    unit = m.product_coords(a.coords, b.coords)
    return Algebra(F, d, sc, labels=m.labels, unit=unit, name="unital isotope")


# ---------------------------------------------------------------------------
# envelopes and simplicity

def operator_family(m: Algebra, side: str) -> list[Matrix]:
    ops = []
    if side in (LEFT, BOTH):
        ops += [mult_operator(m, m.basis(i), LEFT) for i in range(m.dim)]
    if side in (RIGHT, BOTH):
        ops += [mult_operator(m, m.basis(i), RIGHT) for i in range(m.dim)]
    return ops


def _flat_to_matrix(v, d, F) -> Matrix:
    return Matrix._raw([list(v[r * d:(r + 1) * d]) for r in range(d)], F, d)


def operator_envelope(ops: list[Matrix], d: int, F: FieldSpec) -> Echelon:
    """Span of all nonempty products of ``ops`` (no identity adjoined)."""
    E = Echelon(d * d, F)
    queue = list(ops)
    while queue:
        X = queue.pop()
        if E.add(X.flatten()):
            for G in ops:
                queue.append(X @ G)
            if E.rank == d * d:
                break
    return E


def envelope(m: Algebra, side: str = LEFT) -> Echelon:
    return operator_envelope(operator_family(m, side), m.dim, m.field)


@dataclass
class SimplicityResult:
    status: str                     # "simple", "not_simple" or "inconclusive"
    witness: list | None = None
    envelope_dim: int = 0
    reason: str = ""

    @property
    def simple(self) -> bool:
        return self.status == "simple"


def spin(ops: list[Matrix], vectors, d: int, F: FieldSpec) -> Echelon:
    """Smallest subspace containing ``vectors`` and stable under ``ops``."""
    E = Echelon(d, F)
    queue = list(vectors)
    while queue:
        w = queue.pop()
        if E.add(w):
            queue.extend(X.apply(w) for X in ops)
    return E


def is_invariant(ops: list[Matrix], basis, d: int, F: FieldSpec) -> bool:
    E = span(basis, d, F)
    return all(E.contains(X.apply(v)) for X in ops for v in basis)


def operator_simplicity(ops: list[Matrix], d: int, F: FieldSpec, max_candidates: int = 64) -> SimplicityResult:
    """Irreducibility of ``k^d`` under ``ops``.

    ``simple`` when the envelope is all of ``M_d`` (Burnside); otherwise
    invariant subspaces are searched among spins of kernel vectors,
    eigenvectors and image vectors of envelope elements.
    """
    if d <= 1:
        return SimplicityResult("simple", None, len(operator_envelope(ops, d, F)) if d else 0,
                                "dimension at most one")
    env = operator_envelope(ops, d, F)
    if env.rank == d * d:
        return SimplicityResult("simple", None, env.rank, "envelope is the full matrix algebra")
    elems = [_flat_to_matrix(v, d, F) for v in env.basis()]
    candidates = []
    if not elems:
        candidates.append([F.one] + [F.zero] * (d - 1))
    # E V is always invariant
    image = Echelon(d, F)
    for X in elems:
        for c in X.columns():
            image.add(c)
    if 0 < image.rank < d:
        return _witness(ops, image.basis(), env.rank, d, F, "image of the envelope")
    probes = list(elems)
    rng = random.Random(0)
    for _ in range(4):
        if elems:
            Y = Matrix.zeros(d, d, F)
            for X in elems:
                Y = Y + X.scale(F.random(rng, 3))
            probes.append(Y)
    for X in probes:
        candidates.extend(kernel_basis(X))
        try:
            roots = field_roots(_char_poly_coeffs(X), F)
        except NotImplementedError:
            roots = []
        for lam in roots:
            candidates.extend(kernel_basis(X - Matrix.identity(d, F).scale(lam)))
        candidates.extend(X.columns())
    seen = 0
    for w in candidates:
        if not any(w):
            continue
        seen += 1
        if seen > max_candidates:
            break
        W = spin(ops, [w], d, F)
        if W.rank < d:
            return _witness(ops, W.basis(), env.rank, d, F, "spin of a candidate vector")
    return SimplicityResult("inconclusive", None, env.rank, "no invariant subspace found")


def _witness(ops, basis, env_dim, d, F, reason) -> SimplicityResult:
    if not is_invariant(ops, basis, d, F):
        raise AlgebraError("invariant subspace witness failed verification")
    return SimplicityResult("not_simple", basis, env_dim, reason)


def simplicity_check(m: Algebra, side: str = LEFT) -> SimplicityResult:
    """Simplicity of V under the left, right or two-sided multiplication envelope."""
    return operator_simplicity(operator_family(m, side), m.dim, m.field)


def _char_poly_coeffs(X: Matrix) -> list:
    """Minimal polynomial of a square matrix (low to high), via Krylov on flattened powers."""
    d, F = X.nrows, X.field
    powers = [Matrix.identity(d, F)]
    while True:
        nxt = powers[-1] @ X
        M = Matrix.from_columns([P.flatten() for P in powers], F, d * d)
        sol = solve(M, nxt.flatten())
        if sol is not None:
            return [-c for c in sol] + [F.one]
        powers.append(nxt)


minimal_polynomial_matrix = _char_poly_coeffs


# ---------------------------------------------------------------------------
# square roots and homotope preimages

def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a modulo an odd prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def field_sqrt(x, F: FieldSpec):
    """Square root in the base field or None."""
    if F.p is None:
        x = Fraction(x)
        if x < 0:
            return None
        n, dn = isqrt(x.numerator), isqrt(x.denominator)
        if n * n == x.numerator and dn * dn == x.denominator:
            return Fraction(n, dn)
        return None
    r = sqrt_mod(int(x), F.p)
    return None if r is None else F(r)


def eigen_decomposition(M: Matrix):
    """Distinct eigenvalues and an eigenbasis, or GenericityError."""
    d, F = M.nrows, M.field
    poly = _char_poly_coeffs(M)
    if len(poly) - 1 != d:
        raise GenericityError("minimal polynomial has degree %d < %d (repeated eigenvalue)" % (len(poly) - 1, d))
    roots = field_roots(poly, F)
    if len(roots) != d:
        raise GenericityError("eigenvalues are not distinct elements of %s" % F)
    vecs = []
    for lam in roots:
        ker = kernel_basis(M - Matrix.identity(d, F).scale(lam))
        vecs.append(ker[0])
    return roots, Matrix.from_columns(vecs, F, d)


def matrix_square_roots(M: Matrix) -> list[Matrix]:
    """All ``2^d`` square roots of M with distinct nonzero square eigenvalues."""
    d, F = M.nrows, M.field
    if F.p == 2:
        raise GenericityError("characteristic 2")
    roots, P = eigen_decomposition(M)
    sq = []
    for lam in roots:
        if not lam:
            raise GenericityError("zero eigenvalue")
        s = field_sqrt(lam, F)
        if s is None:
            raise GenericityError("eigenvalue %s is not a square in %s" % (lam, F))
        sq.append(s)
    Pinv = invert(P)
    out = []
    for signs in product((1, -1), repeat=d):
        D = Matrix.zeros(d, d, F)
        for i, (s, e) in enumerate(zip(sq, signs)):
            D.rows[i][i] = s if e == 1 else -s
        R = P @ D @ Pinv
        if R @ R != M:
            raise AlgebraError("square root verification failed")
        out.append(R)
    return out


def _complete_basis(v, d: int, F: FieldSpec) -> Matrix:
    """Invertible matrix whose first column is v, completed by standard vectors."""
    E = Echelon(d, F)
    E.add(v)
    cols = [list(v)]
    for i in range(d):
        e = [F.one if k == i else F.zero for k in range(d)]
        if E.add(e):
            cols.append(e)
    return Matrix.from_columns(cols, F, d)


def right_operators(m: Algebra, P: Matrix) -> list[Matrix]:
    """``R_i = m(-, p_i)`` for the columns p_i of P."""
    return [mult_operator(m, Element._raw(m, p), RIGHT) for p in P.columns()]


def homotope_preimages(mp: Algebra, v: Element) -> list[Algebra]:
    """All m with right v-homotope ``m(m(x, v), y)`` equal to ``mp``.

    In a basis with ``v_1 = v``: ``R'_1 = R_1^2`` and ``R'_i = R_i R_1``.
    """
    d, F = mp.dim, mp.field
    if not any(v.coords):
        raise GenericityError("v must be nonzero")
    P = _complete_basis(list(v.coords), d, F)
    Rp = right_operators(mp, P)
    roots = matrix_square_roots(Rp[0])
    Pinv = invert(P)
    out = []
    for R1 in roots:
        R1inv = invert(R1)
        Rs = [R1] + [Rp[i] @ R1inv for i in range(1, d)]
        # m(e_a, e_b) = sum_i Pinv[i][b] R_i e_a
        sc = []
        for a in range(d):
            cols = [R.column(a) for R in Rs]
            for b in range(d):
                acc = [F.zero] * d
                for i in range(d):
                    c = Pinv.rows[i][b]
                    if c:
                        acc = [x + c * y for x, y in zip(acc, cols[i])]
                sc.extend((a, b, l, c) for l, c in enumerate(acc) if c)
        m = Algebra(F, d, sc, labels=mp.labels, name="homotope preimage")
        if not same_tensor(homotope(m, Element._raw(m, v.coords), RIGHT), mp):
            raise AlgebraError("preimage does not map back")
        out.append(m)
    return out


@dataclass
class PreimageInstance:
    m: Algebra
    v: Element
    mp: Algebra


def generic_preimage_instance(d: int, field: FieldSpec, seed) -> PreimageInstance:
    """Tensor m and v with ``m(-, v)`` diagonalizable with eigenvalues ``mu_i``,
    ``mu_i`` nonzero and ``mu_i != +-mu_j``; returns m, v and ``mp = R(v) m``."""
    rng = random.Random("preimage/%s/%s/%s" % (d, field, seed))
    while True:
        v = [field.random(rng, 3) for _ in range(d)]
        if any(v):
            break
    P = _complete_basis(v, d, field)
    while True:
        mus = [field.random(rng, 9) for _ in range(d)]
        if all(mus) and all(mus[i] != mus[j] and mus[i] != -mus[j]
                            for i in range(d) for j in range(i + 1, d)):
            break
    Q = random_invertible(d, field, rng)
    D = Matrix.zeros(d, d, field)
    for i, mu in enumerate(mus):
        D.rows[i][i] = mu
    Rs = [Q @ D @ invert(Q)]
    Rs += [Matrix._raw([[field.random(rng, 3) for _ in range(d)] for _ in range(d)], field, d)
           for _ in range(d - 1)]
    Pinv = invert(P)
    sc = []
    for a in range(d):
        for b in range(d):
            acc = [field.zero] * d
            for i in range(d):
                c = Pinv.rows[i][b]
                if c:
                    acc = [x + c * y for x, y in zip(acc, Rs[i].column(a))]
            sc.extend((a, b, l, c) for l, c in enumerate(acc) if c)
    m = Algebra(field, d, sc, name="generic tensor")
    ve = Element._raw(m, v)
    mp = homotope(m, ve, RIGHT)
    return PreimageInstance(m, Element._raw(mp, v), mp)


# ---------------------------------------------------------------------------
# genericity sampling

@dataclass
class DensityReport:
    d: int
    field: str
    samples: int
    seed: object
    frac_l_invertible: float
    frac_r_invertible: float
    frac_simple_left: float
    frac_simple_right: float
    counts: dict = dc_field(default_factory=dict)


def genericity_density(d: int, field: FieldSpec, samples: int, seed) -> DensityReport:
    """Monte Carlo fractions of random tensors with invertible ``l_v``, ``r_v`` and
    left/right simplicity (Burnside level, inconclusive counts as not simple)."""
    counts = {"l_inv": 0, "r_inv": 0, "simple_left": 0, "simple_right": 0, "inconclusive": 0}
    for s in range(samples):
        m = random_tensor(d, field, "%s/%d" % (seed, s))
        rng = random.Random("density-v/%s/%d" % (seed, s))
        v = Element._raw(m, [field.random(rng, 3) for _ in range(d)])
        counts["l_inv"] += rank(mult_operator(m, v, LEFT)) == d
        counts["r_inv"] += rank(mult_operator(m, v, RIGHT)) == d
        for side, key in ((LEFT, "simple_left"), (RIGHT, "simple_right")):
            res = simplicity_check(m, side)
            counts[key] += res.simple
            counts["inconclusive"] += res.status == "inconclusive"
    n = max(samples, 1)
    return DensityReport(d, str(field), samples, seed, counts["l_inv"] / n, counts["r_inv"] / n,
                         counts["simple_left"] / n, counts["simple_right"] / n, counts)
