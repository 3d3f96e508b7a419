"""Exact dense linear algebra over Q and GF(p).

Matrices are immutable, dense, and row-major: rows index the target
space, columns the source space, so a matrix acts on column vectors from
the left.  Arithmetic is exact everywhere: Fraction entries over the
rationals, canonical residues in [0, p) over a prime field.  0-row and
0-column matrices are first-class and represent maps to or from the zero
space.

Storage is a numpy array: int64 for GF(p) with small p (residue
arithmetic stays well inside 64 bits), object dtype (Python ints or
Fractions) otherwise.  Row reduction pivots on the leftmost nonzero
column with rows scanned in order, so every output basis is reproducible
byte for byte.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    DependentColumns,
    FieldMismatch,
    NoSolution,
    NotInjective,
    ShapeMismatch,
)

Scalar = Union[int, Fraction]

# (p-1)^2 * 2^20 < 2^63 holds for p up to ~2.9e6, so int64 accumulation in
# products with inner dimension up to 2^20 can never overflow.
_INT64_SAFE_P = 2_900_000


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin; bases 2,3,5,7 decide every n < 3.2e9
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldSpec:
    """The rationals (``p is None``) or the prime field GF(p), p < 2^31."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if not isinstance(p, int) or not (2 <= p < 2**31):
                raise ValueError(f"field modulus out of range: {p!r}")
            if not _is_prime(p):
                raise ValueError(f"field modulus must be prime: {p}")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``QQ`` or ``GF(p)``."""
        t = text.strip()
        if t == "QQ":
            return cls(None)
        if t.startswith("GF(") and t.endswith(")"):
            body = t[3:-1].strip()
            if body.isdigit():
                return cls(int(body))
        raise ValueError(f"unrecognized field: {text!r}")

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    def zero(self) -> Scalar:
        return Fraction(0) if self.p is None else 0

    def one(self) -> Scalar:
        return Fraction(1) if self.p is None else 1

    def coerce(self, x) -> Scalar:
        """Canonicalize x: Fraction in lowest terms over Q, residue in [0,p) over GF(p)."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            return x if isinstance(x, Fraction) else Fraction(x)
        p = self.p
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ValueError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(den, -1, p) % p
        return int(x) % p

    def inv(self, x) -> Scalar:
        x = self.coerce(x)
        if self.p is None:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return Fraction(1) / x
        return pow(int(x), -1, self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and self.p == other.p

    def __hash__(self) -> int:
        return hash(("FieldSpec", self.p))

    def __repr__(self) -> str:
        return f"FieldSpec({self.p!r})"

    def __str__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = FieldSpec.rationals()


def _uses_int64(field: FieldSpec) -> bool:
    return field.p is not None and field.p <= _INT64_SAFE_P


def _empty(field: FieldSpec, nrows: int, ncols: int) -> np.ndarray:
    if _uses_int64(field):
        return np.zeros((nrows, ncols), dtype=np.int64)
    return np.zeros((nrows, ncols), dtype=object)


class Matrix:
    """Immutable exact matrix over a FieldSpec."""

    __slots__ = ("field", "_a")

    def __init__(self, field: FieldSpec, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        for r in rows:
            if len(r) != nc:
                raise ShapeMismatch("ragged rows in matrix data")
        a = _empty(field, nr, nc)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                a[i, j] = field.coerce(x)
        a.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_a", a)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _wrap(cls, field: FieldSpec, a: np.ndarray) -> "Matrix":
        # internal: a must already hold canonical scalars of the right dtype
        m = object.__new__(cls)
        a.setflags(write=False)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "_a", a)
        return m

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        return cls._wrap(field, _empty(field, nrows, ncols))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        a = _empty(field, n, n)
        for i in range(n):
            a[i, i] = 1
        return cls._wrap(field, a)

    @property
    def nrows(self) -> int:
        return self._a.shape[0]

    @property
    def ncols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    def entry(self, i: int, j: int) -> Scalar:
        return self.field.coerce(self._a[i, j])

    def to_rows(self) -> list[list[Scalar]]:
        co = self.field.coerce
        return [[co(x) for x in row] for row in self._a]

    def is_zero(self) -> bool:
        if self._a.dtype == np.int64:
            return not self._a.any()
        return all(x == 0 for x in self._a.flat)

    def _check_field(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        prod = np.dot(self._a, other._a)
        p = self.field.p
        if p is not None:
            prod = prod % p
        if prod.dtype != self._a.dtype:  # np.dot on empty object inputs yields float
            prod = prod.astype(self._a.dtype)
        return Matrix._wrap(self.field, prod)

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        s = self._a + other._a
        if self.field.p is not None:
            s = s % self.field.p
        return Matrix._wrap(self.field, s)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Matrix":
        n = -self._a
        if self.field.p is not None:
            n = n % self.field.p
        return Matrix._wrap(self.field, n)

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        s = self._a * c
        if self.field.p is not None:
            s = s % self.field.p
        return Matrix._wrap(self.field, s)

    def transpose(self) -> "Matrix":
        return Matrix._wrap(self.field, self._a.T.copy())

    def take_rows(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        return Matrix._wrap(self.field, self._a[idx, :].copy())

    def take_columns(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        return Matrix._wrap(self.field, self._a[:, idx].copy())

    def __pow__(self, n: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ShapeMismatch("matrix power needs a square matrix")
        if n < 0:
            raise ValueError("negative matrix power")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self._a, other._a))
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.to_rows()!r})"


def hstack(mats: Sequence[Matrix]) -> Matrix:
    if not mats:
        raise ValueError("hstack of no matrices")
    field = mats[0].field
    nr = mats[0].nrows
    for m in mats[1:]:
        if m.field != field:
            raise FieldMismatch("hstack over mixed fields")
        if m.nrows != nr:
            raise ShapeMismatch("hstack with differing row counts")
    return Matrix._wrap(field, np.hstack([m._a for m in mats]))


def vstack(mats: Sequence[Matrix]) -> Matrix:
    if not mats:
        raise ValueError("vstack of no matrices")
    field = mats[0].field
    nc = mats[0].ncols
    for m in mats[1:]:
        if m.field != field:
            raise FieldMismatch("vstack over mixed fields")
        if m.ncols != nc:
            raise ShapeMismatch("vstack with differing column counts")
    return Matrix._wrap(field, np.vstack([m._a for m in mats]))


def block_diag(field: FieldSpec, mats: Sequence[Matrix]) -> Matrix:
    """Block-diagonal assembly; the shape rule behind direct sums."""
    for m in mats:
        if m.field != field:
            raise FieldMismatch("block_diag over mixed fields")
    nr = sum(m.nrows for m in mats)
    nc = sum(m.ncols for m in mats)
    out = _empty(field, nr, nc)
    i = j = 0
    for m in mats:
        out[i : i + m.nrows, j : j + m.ncols] = m._a
        i += m.nrows
        j += m.ncols
    return Matrix._wrap(field, out)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row-echelon form and pivot columns.

    Deterministic: the pivot is the first nonzero entry of the leftmost
    unfinished column, rows scanned in order.  (RREF is unique anyway;
    this also fixes the row-operation sequence.)
    """
    field = m.field
    a = np.array(m._a, copy=True)
    nr, nc = a.shape
    p = field.p
    fast = a.dtype == np.int64
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        if fast:
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
        else:
            i = next((k for k in range(r, nr) if a[k, c] != 0), -1)
            if i < 0:
                continue
        if i != r:
            a[[r, i], :] = a[[i, r], :]
        piv = a[r, c]
        if p is not None:
            inv = pow(int(piv), -1, p)
        else:
            inv = Fraction(1) / piv
        # rows at or below r are zero left of c, so updates touch a[:, c:] only
        row = a[r, c:] * inv
        if p is not None:
            row = row % p
        a[r, c:] = row
        col = a[:, c].copy()
        col[r] = 0
        a[:, c:] = a[:, c:] - np.outer(col, row)
        if p is not None:
            a[:, c:] = a[:, c:] % p
        pivots.append(c)
        r += 1
    return Matrix._wrap(field, a), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace_basis(m: Matrix) -> Matrix:
    """Columns form a basis of {x : m.x = 0}; one column per free column of m.

    Deterministic: the free column f contributes the vector with 1 in
    slot f and minus the reduced column entries in the pivot slots.
    """
    R, pivots = rref(m)
    nc = m.ncols
    pivset = set(pivots)
    free = [c for c in range(nc) if c not in pivset]
    out = _empty(m.field, nc, len(free))
    ra = R._a
    p = m.field.p
    for k, fc in enumerate(free):
        out[fc, k] = 1
        for prow, pcol in enumerate(pivots):
            v = ra[prow, fc]
            out[pcol, k] = (p - int(v)) % p if p is not None else -v
    return Matrix._wrap(m.field, out)


def colspace_basis(m: Matrix) -> Matrix:
    """The pivot columns of m, a deterministic basis of the column space."""
    _, pivots = rref(m)
    return m.take_columns(pivots)


def solve_through(c: Matrix, d: Matrix) -> Matrix:
    """The unique X with c.X = d, for c with independent columns.

    Raises NotInjective if c's columns are dependent (checked first),
    NoSolution if some column of d is outside the column space of c.
    """
    if c.field != d.field:
        raise FieldMismatch(f"{c.field} vs {d.field}")
    if c.nrows != d.nrows:
        raise ShapeMismatch(f"c has {c.nrows} rows but d has {d.nrows}")
    k = c.ncols
    R, pivots = rref(hstack([c, d]) if k or d.ncols else c)
    in_c = [pc for pc in pivots if pc < k]
    if len(in_c) < k:
        raise NotInjective("columns of c are dependent")
    if any(pc >= k for pc in pivots):
        raise NoSolution("d is not in the column space of c")
    return Matrix._wrap(c.field, R._a[:k, k:].copy())


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise ShapeMismatch("inverse of a non-square matrix")
    return solve_through(m, Matrix.identity(m.field, m.nrows))


def quotient_projection(sub: Matrix, ambient_dim: int) -> tuple[Matrix, Matrix]:
    """Projection and section for F^ambient / span(sub).

    sub must be a basis (independent columns, ambient_dim rows).  Returns
    (proj, section) with proj.sub = 0, proj.section = identity, and
    nullspace(proj) = span(sub).  Deterministic: sub's basis is completed
    with standard basis vectors in index order.
    """
    n = ambient_dim
    if sub.nrows != n:
        raise ShapeMismatch(f"sub has {sub.nrows} rows, ambient dim is {n}")
    r = sub.ncols
    if rank(sub) < r:
        raise DependentColumns("sub is not a basis")
    ident = Matrix.identity(sub.field, n)
    M = hstack([sub, ident]) if r else ident
    _, pivots = rref(M)
    std = [pc - r for pc in pivots if pc >= r]
    section = ident.take_columns(std)
    T = hstack([sub, section]) if r else section
    Tinv = inverse(T)
    proj = Tinv.take_rows(range(r, n))
    return proj, section
