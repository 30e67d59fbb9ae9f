"""Exact dense matrix algebra over a Euclidean base domain.

Everything here works on plain nested lists internally and returns
immutable :class:`Matrix` values.  Pivoting is deterministic: the nonzero
entry of smallest Euclidean norm wins, ties broken by lowest (row, col).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .errors import DimensionMismatch
from .ring import BaseRing


@dataclass(frozen=True)
class Matrix:
    ring: BaseRing
    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, ring: BaseRing, rows: Sequence[Sequence], ncols: Optional[int] = None) -> "Matrix":
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("column count of an empty matrix must be given")
            ncols = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DimensionMismatch(f"row {i} has {len(r)} entries, expected {ncols}")
        return cls(ring, rows, ncols)

    @classmethod
    def zeros(cls, ring: BaseRing, nrows: int, ncols: int) -> "Matrix":
        return cls(ring, tuple((ring.zero,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, ring: BaseRing, n: int) -> "Matrix":
        return cls(ring, _identity(ring, n), n)

    @classmethod
    def from_columns(cls, ring: BaseRing, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls.from_rows(ring, [tuple(c[i] for c in cols) for i in range(nrows)], len(cols))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, tuple(self.columns()), self.nrows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        R = self.ring
        cols = other.columns()
        out = []
        for r in self.rows:
            out.append(tuple(_dot(R, r, c) for c in cols))
        return Matrix(R, tuple(out), other.ncols)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} against {self.ncols} columns")
        return tuple(_dot(self.ring, r, v) for r in self.rows)

    def stack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise DimensionMismatch("stacked matrices need equal column counts")
        return Matrix(self.ring, self.rows + other.rows, self.ncols)

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(x) for r in self.rows for x in r)

    def is_diagonal(self) -> bool:
        return all(
            self.ring.is_zero(x) for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j
        )

    def diagonal(self) -> list:
        return [self.rows[i][i] for i in range(min(self.shape))]

    def det(self):
        """Bareiss fraction-free determinant."""
        n = self.nrows
        if n != self.ncols:
            raise DimensionMismatch("determinant of a non-square matrix")
        R = self.ring
        if n == 0:
            return R.one
        a = [list(r) for r in self.rows]
        sign = R.one
        prev = R.one
        for k in range(n - 1):
            if R.is_zero(a[k][k]):
                swap = next((i for i in range(k + 1, n) if not R.is_zero(a[i][k])), None)
                if swap is None:
                    return R.zero
                a[k], a[swap] = a[swap], a[k]
                sign = R.neg(sign)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = R.sub(R.mul(a[i][j], a[k][k]), R.mul(a[i][k], a[k][j]))
                    a[i][j] = R.exact_div(num, prev)
            prev = a[k][k]
        return R.mul(sign, a[n - 1][n - 1])

    def fmt(self) -> str:
        return "[" + ", ".join(
            "[" + ", ".join(self.ring.fmt(x) for x in r) + "]" for r in self.rows
        ) + "]"


@dataclass(frozen=True)
class SmithDecomposition:
    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list:
        return self.D.diagonal()


def _dot(R: BaseRing, u, v):
    acc = R.zero
    for a, b in zip(u, v):
        if not R.is_zero(a) and not R.is_zero(b):
            acc = R.add(acc, R.mul(a, b))
    return acc


def _identity(R: BaseRing, n: int) -> tuple:
    return tuple(tuple(R.one if i == j else R.zero for j in range(n)) for i in range(n))


def _row_axpy(R, rows, dst, src, q):
    """rows[dst] -= q * rows[src]"""
    s = rows[src]
    rows[dst] = [R.sub(x, R.mul(q, y)) if not R.is_zero(y) else x for x, y in zip(rows[dst], s)]


def _col_axpy(R, rows, dst, src, q):
    """column dst -= q * column src"""
    for r in rows:
        if not R.is_zero(r[src]):
            r[dst] = R.sub(r[dst], R.mul(q, r[src]))


def _swap_cols(rows, a, b):
    for r in rows:
        r[a], r[b] = r[b], r[a]


def smith_normal_form(A: Matrix) -> SmithDecomposition:
    """Return ``U, D, V`` with ``U @ A @ V == D`` in canonical Smith form."""
    R = A.ring
    m, n = A.shape
    a = [list(r) for r in A.rows]
    U = [list(r) for r in _identity(R, m)]
    V = [list(r) for r in _identity(R, n)]

    def smallest(cells):
        best = None
        for i, j in cells:
            x = a[i][j]
            if not R.is_zero(x) and (best is None or R.norm(x) < R.norm(a[best[0]][best[1]])):
                best = (i, j)
        return best

    for t in range(min(m, n)):
        piv = smallest((i, j) for i in range(t, m) for j in range(t, n))
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        U[t], U[i] = U[i], U[t]
        _swap_cols(a, t, j)
        _swap_cols(V, t, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                if not R.is_zero(a[i][t]):
                    q = R.divmod(a[i][t], p)[0]
                    _row_axpy(R, a, i, t, q)
                    _row_axpy(R, U, i, t, q)
            piv = smallest((i, t) for i in range(t + 1, m))
            if piv is not None:
                i = piv[0]
                a[t], a[i] = a[i], a[t]
                U[t], U[i] = U[i], U[t]
                continue
            for j in range(t + 1, n):
                if not R.is_zero(a[t][j]):
                    q = R.divmod(a[t][j], p)[0]
                    _col_axpy(R, a, j, t, q)
                    _col_axpy(R, V, j, t, q)
            piv = smallest((t, j) for j in range(t + 1, n))
            if piv is not None:
                j = piv[1]
                _swap_cols(a, t, j)
                _swap_cols(V, t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if not R.divides(p, a[i][j])),
                None,
            )
            if bad is None:
                break
            a[t] = [R.add(x, y) for x, y in zip(a[t], a[bad])]
            U[t] = [R.add(x, y) for x, y in zip(U[t], U[bad])]
        c, u = R.normalize(a[t][t])
        if u != R.one:
            a[t] = [R.mul(u, x) for x in a[t]]
            U[t] = [R.mul(u, x) for x in U[t]]
    return SmithDecomposition(
        Matrix.from_rows(R, U, m), Matrix.from_rows(R, a, n), Matrix.from_rows(R, V, n)
    )


def _hermite_rows(R: BaseRing, rows: tuple, ncols: int):
    """Row Hermite form: returns (H, T, rank, pivot_columns) as nested lists."""
    m = len(rows)
    h = [list(r) for r in rows]
    T = [list(r) for r in _identity(R, m)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            best = None
            for i in range(r, m):
                x = h[i][c]
                if not R.is_zero(x) and (best is None or R.norm(x) < R.norm(h[best][c])):
                    best = i
            if best is None:
                break
            h[r], h[best] = h[best], h[r]
            T[r], T[best] = T[best], T[r]
            done = True
            for i in range(r + 1, m):
                if not R.is_zero(h[i][c]):
                    q = R.divmod(h[i][c], h[r][c])[0]
                    _row_axpy(R, h, i, r, q)
                    _row_axpy(R, T, i, r, q)
                    if not R.is_zero(h[i][c]):
                        done = False
            if done:
                break
        if R.is_zero(h[r][c]):
            continue
        _, u = R.normalize(h[r][c])
        if u != R.one:
            h[r] = [R.mul(u, x) for x in h[r]]
            T[r] = [R.mul(u, x) for x in T[r]]
        for i in range(r):
            if not R.is_zero(h[i][c]):
                q = R.divmod(h[i][c], h[r][c])[0]
                _row_axpy(R, h, i, r, q)
                _row_axpy(R, T, i, r, q)
        pivots.append(c)
        r += 1
    return h, T, r, pivots


@lru_cache(maxsize=4096)
def _hermite_cached(R: BaseRing, rows: tuple, ncols: int):
    h, T, rank, pivots = _hermite_rows(R, rows, ncols)
    return tuple(map(tuple, h)), tuple(map(tuple, T)), rank, tuple(pivots)


def hermite_form(A: Matrix) -> tuple[Matrix, Matrix, tuple]:
    """Row Hermite form ``H = T @ A``; also returns the pivot columns."""
    h, T, rank, pivots = _hermite_cached(A.ring, A.rows, A.ncols)
    return Matrix(A.ring, h, A.ncols), Matrix(A.ring, T, A.nrows), pivots


def right_kernel(A: Matrix) -> Matrix:
    """Columns generate ``{x : A x = 0}``."""
    R = A.ring
    At = A.transpose()
    _, T, rank, _ = _hermite_cached(R, At.rows, At.ncols)
    gens = T[rank:]
    return Matrix.from_columns(R, gens, A.ncols) if gens else Matrix(R, tuple(() for _ in range(A.ncols)), 0)


def hermite_form_and_kernel(A: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    H, T, _ = hermite_form(A)
    return H, T, right_kernel(A)


def solve_membership(A: Matrix, b: Sequence) -> Optional[tuple]:
    """Some ``x`` with ``A x = b``, or ``None`` when ``b`` is outside the column span."""
    if len(b) != A.nrows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {A.nrows} rows")
    R = A.ring
    At = A.transpose()
    h, T, rank, pivots = _hermite_cached(R, At.rows, At.ncols)
    residual = list(b)
    z = []
    for k in range(rank):
        c = pivots[k]
        p = h[k][c]
        q, rem = R.divmod(residual[c], p)
        if not R.is_zero(rem):
            return None
        z.append(q)
        if not R.is_zero(q):
            residual = [R.sub(x, R.mul(q, y)) for x, y in zip(residual, h[k])]
    if any(not R.is_zero(x) for x in residual):
        return None
    x = [R.zero] * A.ncols
    for k, zk in enumerate(z):
        if not R.is_zero(zk):
            x = [R.add(xi, R.mul(zk, t)) for xi, t in zip(x, T[k])]
    return tuple(x)
