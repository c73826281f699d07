"""Exact Gaussian-rational scalars, dense matrices over them, and a float shadow.

Every symbolic object in the package carries coefficients in Q(i).  The float
shadow (``to_float``) is only consumed by :mod:`qsymmod.numeric`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

Number = Union[int, Fraction, "Scalar"]

# Centralized float tolerances (absolute).  Overridable through ``set_tolerance``.
TOLERANCES = {
    "default": 1e-9,
    "relation": 1e-9,
    "factorization": 1e-8,
    "quadrature": 1e-10,
}


def set_tolerance(name: str, value: float) -> None:
    if name not in TOLERANCES:
        raise KeyError(f"unknown tolerance {name!r}")
    TOLERANCES[name] = float(value)


class Scalar:
    """Exact complex rational ``re + i*im``."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, x: Number) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values cannot be coerced exactly")
        return cls(x)

    @classmethod
    def parse(cls, re: str, im: str = "0") -> "Scalar":
        return cls(Fraction(re), Fraction(im))

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other: Number) -> "Scalar":
        o = other if type(other) is Scalar else Scalar.coerce(other)
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "Scalar":
        o = other if type(other) is Scalar else Scalar.coerce(other)
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Number) -> "Scalar":
        return Scalar.coerce(other) - self

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other: Number) -> "Scalar":
        o = other if type(other) is Scalar else Scalar.coerce(other)
        if not self.im and not o.im:
            return Scalar(self.re * o.re)
        return Scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        n = self.norm2()
        if not n:
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other: Number) -> "Scalar":
        return self * Scalar.coerce(other).inverse()

    def __rtruediv__(self, other: Number) -> "Scalar":
        return Scalar.coerce(other) * self.inverse()

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im) if self.im else self

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = Scalar(0)
ONE = Scalar(1)
I_UNIT = Scalar(0, 1)


class MatrixShapeError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix of :class:`Scalar`."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise MatrixShapeError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]]) -> "Matrix":
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        if any(len(r) != nc for r in rows):
            raise MatrixShapeError("ragged rows")
        return cls(nr, nc, tuple(Scalar.coerce(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def diag(cls, values: Iterable[Number]) -> "Matrix":
        vals = [Scalar.coerce(v) for v in values]
        n = len(vals)
        return cls(n, n, tuple(vals[i] if i == j else ZERO for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple) -> Scalar:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def tolist(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def conj(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(x.conj() for x in self.entries))

    def dagger(self) -> "Matrix":
        return self.transpose().conj()

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise MatrixShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise MatrixShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c: Number) -> "Matrix":
        c = Scalar.coerce(c)
        return Matrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def to_float(self) -> np.ndarray:
        return np.array([complex(x) for x in self.entries], dtype=complex).reshape(self.rows, self.cols)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.tolist()) + "]"


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise MatrixShapeError(f"cannot multiply {a.shape} by {b.shape}")
    out = []
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            acc = ZERO
            for k in range(a.cols):
                x = arow[k]
                if x:
                    y = b[k, j]
                    if y:
                        acc = acc + x * y
            out.append(acc)
    return Matrix(a.rows, b.cols, tuple(out))


def mat_inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse over Q(i)."""
    if not a.is_square():
        raise MatrixShapeError("inverse of non-square matrix")
    n = a.rows
    aug = [a.row(i) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return Matrix(n, n, tuple(x for r in aug for x in r[n:]))


def determinant(a: Matrix) -> Scalar:
    if not a.is_square():
        raise MatrixShapeError("determinant of non-square matrix")
    n = a.rows
    m = [a.row(i) for i in range(n)]
    det = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col].inverse()
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def leading_minors(a: Matrix) -> list:
    return [determinant(Matrix.from_rows([a.row(i)[:k] for i in range(k)])) for k in range(1, a.rows + 1)]


def is_hermitian(a: Matrix) -> bool:
    return a.is_square() and a == a.dagger()


def is_hermitian_positive(a: Matrix) -> bool:
    """Sylvester's criterion with exact leading minors (no square roots)."""
    if not is_hermitian(a):
        return False
    # minors of a Hermitian matrix are real
    return all(m.re > 0 for m in leading_minors(a))


def first_nonpositive_minor(a: Matrix):
    """Return ``(k, minor)`` for the first leading minor that is not > 0, else None."""
    for k, m in enumerate(leading_minors(a), start=1):
        if not (m.is_real() and m.re > 0):
            return k, m
    return None


def row_echelon(rows: Sequence[Sequence[Scalar]]) -> tuple:
    """Reduced row echelon form; returns (rref rows, pivot columns)."""
    m = [[Scalar.coerce(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return len(row_echelon(rows)[1])


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> list:
    """Basis of {x : rows . x = 0} as a list of coordinate lists."""
    rref, pivots = row_echelon(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for r, pc in zip(rref, pivots):
            x[pc] = -r[f]
        basis.append(x)
    return basis


def solve(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]):
    """One exact solution of ``rows . x = rhs`` or None when inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [Scalar.coerce(b)] for r, b in zip(rows, rhs)]
    rref, pivots = row_echelon(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for r, pc in zip(rref, pivots):
        x[pc] = r[ncols]
    return x


def float_matrix(a: Matrix) -> np.ndarray:
    """Float shadow of an exact matrix."""
    return a.to_float()
