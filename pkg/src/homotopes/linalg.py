"""Exact linear algebra over Q and prime fields F_p.

Scalars are ``fractions.Fraction`` over Q and :class:`Mod` residues over F_p,
so every routine below is written once against the arithmetic operators.
Row reduction works on sparse ``{column: value}`` rows and always maintains
the *reduced* row echelon form, which is unique; pivots, kernel bases and
particular solutions are therefore deterministic.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Mod:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pow__(self, e: int):
        return Mod(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return "Mod(%d, %d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class FieldSpec:
    """Base field: ``p=None`` for the rationals, otherwise F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError("%r is not prime" % (self.p,))

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else Mod(0, self.p)

    @property
    def one(self):
        return Fraction(1) if self.p is None else Mod(1, self.p)

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, Mod):
                raise TypeError("cannot coerce a residue into Q")
            return Fraction(x)
        if isinstance(x, Mod):
            if x.p != self.p:
                raise TypeError("residue modulo %d is not in F_%d" % (x.p, self.p))
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("%s is undefined in F_%d" % (x, self.p))
            return Mod(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Mod(int(x), self.p)

    def parse(self, text: str):
        """Parse a scalar literal such as ``"3"``, ``"-7/2"``."""
        text = str(text).strip()
        try:
            return self(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError("malformed scalar %r: %s" % (text, exc)) from None

    def format(self, x) -> str:
        return str(self(x))

    def random(self, rng: random.Random, bound: int = 3):
        """Uniform residue over F_p; an integer in [-bound, bound] over Q."""
        if self.p is None:
            return Fraction(rng.randint(-bound, bound))
        return Mod(rng.randrange(self.p), self.p)

    def elements(self):
        """All elements of a prime field (used by brute-force root search)."""
        if self.p is None:
            raise ValueError("Q is infinite")
        return [Mod(i, self.p) for i in range(self.p)]

    def __str__(self):
        return "rationals" if self.p is None else "fp:%d" % self.p

    @classmethod
    def from_string(cls, text: str) -> "FieldSpec":
        text = text.strip().lower()
        if text in ("q", "rationals", "qq"):
            return cls()
        if text.startswith("fp:"):
            return cls(int(text[3:]))
        raise ValueError("unknown field %r (use 'rationals' or 'fp:<p>')" % text)


QQ = FieldSpec()


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


# ---------------------------------------------------------------------------
# sparse vectors and the incremental RREF

def sparse(vec: Sequence) -> dict:
    return {i: x for i, x in enumerate(vec) if x}


def dense(vec: dict, n: int, zero) -> list:
    out = [zero] * n
    for i, x in vec.items():
        out[i] = x
    return out


def axpy(y: dict, a, x: dict) -> None:
    """In place ``y += a*x`` on sparse vectors, dropping zeros."""
    for k, v in x.items():
        w = y.get(k)
        if w is None:
            y[k] = a * v
        else:
            w = w + a * v
            if w:
                y[k] = w
            else:
                del y[k]


class Echelon:
    """Span of vectors kept in reduced row echelon form.

    ``add`` returns whether the vector enlarged the span. Rows are stored
    sparsely with pivot entry 1 and zeros in every other pivot column.
    """

    def __init__(self, ncols: int, field: FieldSpec):
        self.ncols = ncols
        self.field = field
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduce(self, vec) -> dict:
        v = dict(vec) if isinstance(vec, dict) else sparse(vec)
        kind = Fraction if self.field.p is None else Mod
        for k, x in v.items():
            if type(x) is not kind:
                v[k] = self.field(x)
        rows = self.rows
        for c in [c for c in v if c in rows]:
            a = v.get(c)
            if a:
                axpy(v, -a, rows[c])
        return v

    def add(self, vec) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        c = min(v)
        inv = 1 / v[c]
        if inv != 1:
            v = {k: x * inv for k, x in v.items()}
        for row in self.rows.values():
            a = row.get(c)
            if a:
                axpy(row, -a, v)
        self.rows[c] = v
        return True

    def extend(self, vecs: Iterable) -> "Echelon":
        for v in vecs:
            self.add(v)
        return self

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list[list]:
        z = self.field.zero
        return [dense(self.rows[c], self.ncols, z) for c in self.pivots]

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.rows]

    def null_space(self) -> list[list]:
        """Kernel of the matrix whose rows span this echelon form."""
        z, one = self.field.zero, self.field.one
        out = []
        for f in self.free_columns():
            v = [z] * self.ncols
            v[f] = one
            for c, row in self.rows.items():
                a = row.get(f)
                if a:
                    v[c] = -a
            out.append(v)
        return out

    def quotient_coords(self, vec) -> list:
        """Coordinates of ``vec`` modulo the span, on the free columns."""
        v = self.reduce(vec)
        z = self.field.zero
        return [v.get(f, z) for f in self.free_columns()]


# ---------------------------------------------------------------------------
# dense matrices

class Matrix:
    """Dense matrix of exact scalars, stored row-major as lists."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows, field: FieldSpec, ncols: int | None = None):
        self.field = field
        self.rows = [[field(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")

    @classmethod
    def _raw(cls, rows, field, ncols):
        m = object.__new__(cls)
        m.rows, m.field, m.nrows, m.ncols = rows, field, len(rows), ncols
        return m

    @classmethod
    def zeros(cls, n: int, m: int, field: FieldSpec) -> "Matrix":
        z = field.zero
        return cls._raw([[z] * m for _ in range(n)], field, m)

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "Matrix":
        M = cls.zeros(n, n, field)
        for i in range(n):
            M.rows[i][i] = field.one
        return M

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], field: FieldSpec, nrows: int | None = None) -> "Matrix":
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls._raw([[c[i] for c in cols] for i in range(nrows)], field, len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    def copy(self) -> "Matrix":
        return Matrix._raw([list(r) for r in self.rows], self.field, self.ncols)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw([list(c) for c in zip(*self.rows)] if self.nrows else [[] for _ in range(self.ncols)],
                           self.field, self.nrows)

    def apply(self, vec: Sequence) -> list:
        z = self.field.zero
        out = []
        for r in self.rows:
            acc = z
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return self.apply(other)
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        z = self.field.zero
        m = other.ncols
        brows = other.rows
        out = []
        for r in self.rows:
            acc = [z] * m
            for t, a in enumerate(r):
                if a:
                    for j, b in enumerate(brows[t]):
                        if b:
                            acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix._raw(out, self.field, m)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.field, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.field, self.ncols)

    def __neg__(self):
        return Matrix._raw([[-a for a in r] for r in self.rows], self.field, self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw([[c * a for a in r] for r in self.rows], self.field, self.ncols)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def flatten(self) -> list:
        return [a for r in self.rows for a in r]

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return "Matrix[%dx%d](%s)" % (self.nrows, self.ncols, body)


def block_diag(blocks: Sequence[Matrix], field: FieldSpec) -> Matrix:
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    out = Matrix.zeros(n, m, field)
    i0 = j0 = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            out.rows[i0 + i][j0:j0 + b.ncols] = r
        i0 += b.nrows
        j0 += b.ncols
    return out


def echelon_of_rows(M: Matrix) -> Echelon:
    return Echelon(M.ncols, M.field).extend(M.rows)


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    E = echelon_of_rows(M)
    R = Matrix.zeros(M.nrows, M.ncols, M.field)
    for i, row in enumerate(E.basis()):
        R.rows[i] = row
    return R, E.pivots


def rank(M: Matrix) -> int:
    return echelon_of_rows(M).rank


def kernel_basis(M: Matrix) -> list[list]:
    """Basis of {x : Mx = 0}, one vector per free column in increasing order."""
    return echelon_of_rows(M).null_space()


def solve(A: Matrix, b: Sequence) -> list | None:
    """One solution of ``A x = b`` (free variables zero), or None."""
    if len(b) != A.nrows:
        raise ValueError("dimension mismatch: %d rows vs rhs of length %d" % (A.nrows, len(b)))
    n = A.ncols
    E = Echelon(n + 1, A.field)
    for r, bi in zip(A.rows, b):
        E.add(list(r) + [A.field(bi)])
    if n in E.rows:
        return None
    x = [A.field.zero] * n
    for c, row in E.rows.items():
        x[c] = row.get(n, A.field.zero)
    return x


def solve_many(A: Matrix, B: Matrix) -> Matrix | None:
    """Solve ``A X = B`` column by column; None if any column is inconsistent."""
    n, m = A.ncols, B.ncols
    E = Echelon(n + m, A.field)
    for r, s in zip(A.rows, B.rows):
        E.add(list(r) + list(s))
    if any(c >= n for c in E.rows):
        return None
    X = Matrix.zeros(n, m, A.field)
    for c, row in E.rows.items():
        for j in range(m):
            v = row.get(n + j)
            if v:
                X.rows[c][j] = v
    return X


def invert(A: Matrix) -> Matrix | None:
    if A.nrows != A.ncols:
        raise ValueError("cannot invert a %dx%d matrix" % A.shape)
    X = solve_many(A, Matrix.identity(A.nrows, A.field))
    if X is None:
        return None
    return X


def span(vectors: Iterable[Sequence], n: int, field: FieldSpec) -> Echelon:
    return Echelon(n, field).extend(vectors)


def is_subspace(inner: Echelon, outer: Echelon) -> bool:
    return all(outer.contains(r) for r in inner.rows.values())
