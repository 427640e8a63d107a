"""Dense exact linear algebra over Q(zeta_k).

Gauss-Jordan elimination with first-nonzero pivoting (arithmetic is exact, so
no stability heuristics are needed). Zero multipliers and zero pivot-row
entries are skipped, which keeps the diagonal and very sparse matrices that
show up in derivation work cheap.

For large square systems :func:`is_injective` first tries a modular
certificate: the field Q(zeta_k) maps onto F_p for a prime p = 1 mod k, and a
matrix whose image has full column rank over F_p has full column rank over
Q(zeta_k) too. Only when that test is inconclusive does exact elimination run.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .field import CycloNum, FieldSpec, Scalar


class ShapeError(ValueError):
    """Matrix dimensions are incompatible with the operation."""


class Matrix:
    """Immutable dense matrix of :class:`CycloNum` entries, row-major."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, data: Sequence[Sequence[Scalar]]):
        rows = [tuple(field(x) for x in row) for row in data]
        if not rows or not rows[0]:
            raise ShapeError("matrix must have at least one row and one column")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ShapeError("ragged rows")
        self.field = field
        self.rows = len(rows)
        self.cols = cols
        self.data = tuple(rows)

    @classmethod
    def _raw(cls, field: FieldSpec, data: tuple[tuple[CycloNum, ...], ...]) -> Matrix:
        m = object.__new__(cls)
        m.field, m.data = field, data
        m.rows, m.cols = len(data), len(data[0])
        return m

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int | None = None) -> Matrix:
        cols = rows if cols is None else cols
        z = field.zero
        return cls._raw(field, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        return cls.scalar(field, n, field.one)

    @classmethod
    def scalar(cls, field: FieldSpec, n: int, c: Scalar) -> Matrix:
        c, z = field(c), field.zero
        return cls._raw(field, tuple(tuple(c if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, field: FieldSpec, diag: Sequence[Scalar]) -> Matrix:
        n, z = len(diag), field.zero
        return cls._raw(
            field, tuple(tuple(field(diag[i]) if i == j else z for j in range(n)) for i in range(n))
        )

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence[CycloNum]]) -> Matrix:
        return cls._raw(field, tuple(zip(*columns)))

    # -- access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: tuple[int, int]) -> CycloNum:
        i, j = idx
        return self.data[i][j]

    def row(self, i: int) -> tuple[CycloNum, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[CycloNum, ...]:
        return tuple(r[j] for r in self.data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    def transpose(self) -> Matrix:
        return Matrix._raw(self.field, tuple(zip(*self.data)))

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def is_skew_symmetric(self) -> bool:
        return self.is_square() and self == -self.transpose()

    def trace(self) -> CycloNum:
        if not self.is_square():
            raise ShapeError("trace of non-square matrix")
        return sum((self.data[i][i] for i in range(self.rows)), self.field.zero)

    # -- arithmetic -------------------------------------------------------
    def _check_same(self, other: Matrix):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix._raw(
            self.field, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data))
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix._raw(
            self.field, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data))
        )

    def __neg__(self) -> Matrix:
        return Matrix._raw(self.field, tuple(tuple(-a for a in r) for r in self.data))

    def scale(self, c: Scalar) -> Matrix:
        c = self.field(c)
        return Matrix._raw(self.field, tuple(tuple(a * c for a in r) for r in self.data))

    def __rmul__(self, c) -> Matrix:
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.field.zero
        cols = other.transpose().data
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(sum((a * col[k] for k, a in nz if col[k]), z) for col in cols))
        return Matrix._raw(self.field, tuple(out))

    def apply(self, vec: Sequence[CycloNum]) -> list[CycloNum]:
        if len(vec) != self.cols:
            raise ShapeError("vector length mismatch")
        z = self.field.zero
        return [sum((a * v for a, v in zip(r, vec) if a and v), z) for r in self.data]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def tolist(self) -> list[list[CycloNum]]:
        return [list(r) for r in self.data]

    def __str__(self):
        cells = [[str(x) for x in r] for r in self.data]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, k={self.field.conductor})"


# ---------------------------------------------------------------------------
# elimination


def rref(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    a = [list(r) for r in M.data]
    pivots = _gauss_jordan(a, M.cols)
    return Matrix._raw(M.field, tuple(tuple(r) for r in a)), len(pivots), pivots


def _gauss_jordan(a: list[list[CycloNum]], ncols: int) -> list[int]:
    nrows = len(a)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = a[r][c].inverse()
        prow = [x * inv if x else x for x in a[r]]
        a[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    row = a[i]
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rank(M: Matrix) -> int:
    return rref(M)[1]


def nullspace(M: Matrix) -> list[list[CycloNum]]:
    """Basis of {v : Mv = 0}, one vector per free column."""
    R, _, pivots = rref(M)
    field, n = M.field, M.cols
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for row_idx, pc in enumerate(pivots):
            v[pc] = -R[row_idx, f]
        basis.append(v)
    return basis


def det(M: Matrix) -> CycloNum:
    """Determinant by Gaussian elimination with exact division."""
    if not M.is_square():
        raise ShapeError("determinant of non-square matrix")
    a = [list(r) for r in M.data]
    n = M.rows
    result = M.field.one
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return M.field.zero
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        piv = a[c][c]
        result = result * piv
        inv = piv.inverse()
        nz = [j for j in range(c + 1, n) if a[c][j]]
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f = f * inv
                row = a[i]
                for j in nz:
                    row[j] = row[j] - f * a[c][j]
    return result


def matrix_power(M: Matrix, s: int) -> Matrix:
    if not M.is_square():
        raise ShapeError("power of non-square matrix")
    if s < 0:
        raise ValueError("exponent must be nonnegative")
    result, base = Matrix.identity(M.field, M.rows), M
    while s:
        if s & 1:
            result = result @ base
        s >>= 1
        if s:
            base = base @ base
    return result


def is_nilpotent(M: Matrix) -> tuple[bool, int | None]:
    """(True, least s with M^s = 0) if M is nilpotent, else (False, None).

    By Cayley-Hamilton a nilpotent n x n matrix satisfies M^n = 0, so only
    powers up to n are inspected.
    """
    if not M.is_square():
        raise ShapeError("nilpotency of non-square matrix")
    P = M
    for s in range(1, M.rows + 1):
        if P.is_zero():
            return True, s
        P = P @ M
    return False, None


# ---------------------------------------------------------------------------
# modular certificate


@lru_cache(maxsize=None)
def _modular_setup(conductor: int, start: int = 1 << 30) -> tuple[int, int]:
    """Prime p = 1 mod k (p > start) and an element of exact order k in F_p."""
    k = conductor
    p = start + (1 - start) % k
    if p <= start:
        p += k
    while True:
        if _is_prime(p):
            break
        p += k
    qs = _prime_factors(k)
    for g in range(2, p):
        z = pow(g, (p - 1) // k, p)
        if all(pow(z, k // q, p) != 1 for q in qs):
            return p, z
    raise ArithmeticError("no root of unity found")  # unreachable for prime p


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    # deterministic Miller-Rabin for n < 3.3e24
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(k: int) -> list[int]:
    out, q = [], 2
    while q * q <= k:
        if k % q == 0:
            out.append(q)
            while k % q == 0:
                k //= q
        q += 1
    if k > 1:
        out.append(k)
    return out


def _to_modp(x: CycloNum, p: int, zpows: list[int]) -> int:
    acc = 0
    for c, zp in zip(x.coords, zpows):
        if c:
            den = c.denominator % p
            if den == 0:
                raise ZeroDivisionError("denominator vanishes mod p")
            acc += c.numerator * zp * pow(den, -1, p)
    return acc % p


def rank_mod_p(M: Matrix) -> int:
    """Rank of the image of M in F_p (p = 1 mod conductor, p > 2^30).

    This is a lower bound for the rank over Q(zeta_k). Raises
    ZeroDivisionError if some coordinate denominator is divisible by p.
    """
    p, z = _modular_setup(M.field.conductor)
    zpows = [pow(z, j, p) for j in range(M.field.degree)]
    A = np.zeros((M.rows, M.cols), dtype=np.int64)
    for i, r in enumerate(M.data):
        for j, x in enumerate(r):
            if x:
                A[i, j] = _to_modp(x, p, zpows)
    return _rank_mod_p_array(A, p)


def _rank_mod_p_array(A: np.ndarray, p: int) -> int:
    A = A.copy()
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        below = r + 1 + np.nonzero(A[r + 1:, c])[0]
        if below.size:
            f = A[below, c][:, None]
            # products stay below 2^62 since entries are < p < 2^31
            A[np.ix_(below, np.arange(c, ncols))] = (A[below, c:] - (f * A[r, c:]) % p) % p
        r += 1
    return r


def is_injective(M: Matrix, *, modular: bool = True) -> bool:
    """True iff Mv = 0 has only the trivial solution.

    With ``modular`` set, a full-rank image mod p settles the question without
    exact elimination; otherwise (or if inconclusive) exact rank is used.
    """
    if modular and M.rows >= M.cols:
        try:
            if rank_mod_p(M) == M.cols:
                return True
        except ZeroDivisionError:
            pass
    return rank(M) == M.cols
