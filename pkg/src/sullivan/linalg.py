"""
Exact linear algebra over Q.

Matrices are numpy object arrays of ``Fraction`` so that empty shapes such as
(0, 3) survive.  Elimination works on plain lists and always pivots on the
first nonzero column, taking the lowest-index row with a nonzero entry there;
solutions set free variables to zero.  Both rules keep every chosen
preimage reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy

F0 = Fraction(0)
F1 = Fraction(1)


def matrix(rows: Sequence[Sequence], ncols: int | None = None) -> numpy.ndarray:
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    A = numpy.empty((len(rows), ncols), dtype=object)
    for i, r in enumerate(rows):
        if len(r) != ncols:
            raise ValueError("ragged matrix")
        for j, x in enumerate(r):
            A[i, j] = Fraction(x)
    return A


def zeros(m: int, n: int) -> numpy.ndarray:
    A = numpy.empty((m, n), dtype=object)
    A.fill(F0)
    return A


def identity(n: int) -> numpy.ndarray:
    A = zeros(n, n)
    for i in range(n):
        A[i, i] = F1
    return A


def vector(xs: Sequence) -> numpy.ndarray:
    v = numpy.empty(len(xs), dtype=object)
    for i, x in enumerate(xs):
        v[i] = Fraction(x)
    return v


def from_columns(cols: Sequence[Sequence], nrows: int) -> numpy.ndarray:
    A = zeros(nrows, len(cols))
    for j, c in enumerate(cols):
        for i in range(nrows):
            A[i, j] = Fraction(c[i])
    return A


def matmul(A: numpy.ndarray, B: numpy.ndarray) -> numpy.ndarray:
    m, k = A.shape
    k2, n = B.shape
    if k != k2:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    C = zeros(m, n)
    for i in range(m):
        for j in range(n):
            s = F0
            for t in range(k):
                a = A[i, t]
                if a:
                    s += a * B[t, j]
            C[i, j] = s
    return C


def matvec(A: numpy.ndarray, x: Sequence) -> numpy.ndarray:
    m, k = A.shape
    out = numpy.empty(m, dtype=object)
    for i in range(m):
        s = F0
        for t in range(k):
            if A[i, t]:
                s += A[i, t] * x[t]
        out[i] = s
    return out


def equal(A: numpy.ndarray, B: numpy.ndarray) -> bool:
    return A.shape == B.shape and all(a == b for a, b in zip(A.flat, B.flat))


def is_zero(A: numpy.ndarray) -> bool:
    return all(a == 0 for a in A.flat)


def hstack(*blocks: numpy.ndarray) -> numpy.ndarray:
    m = blocks[0].shape[0]
    n = sum(b.shape[1] for b in blocks)
    out = zeros(m, n)
    j = 0
    for b in blocks:
        if b.shape[0] != m:
            raise ValueError("row count mismatch")
        out[:, j:j + b.shape[1]] = b
        j += b.shape[1]
    return out


def _rows(A: numpy.ndarray) -> list[list[Fraction]]:
    return [[Fraction(x) for x in A[i]] for i in range(A.shape[0])]


def _eliminate(rows: list[list[Fraction]], ncols: int, stop: int | None = None):
    """In-place reduction to reduced row echelon form; returns pivot columns."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    stop = ncols if stop is None else stop
    for c in range(stop):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def rref(A: numpy.ndarray) -> tuple[numpy.ndarray, list[int]]:
    rows = _rows(A)
    pivots = _eliminate(rows, A.shape[1])
    return matrix(rows, A.shape[1]), pivots


def rank(A: numpy.ndarray) -> int:
    if A.size == 0:
        return 0
    return len(rref(A)[1])


def kernel(A: numpy.ndarray) -> list[numpy.ndarray]:
    """Basis of the null space, one vector per free column (free entry = 1)."""
    m, n = A.shape
    R, pivots = rref(A)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = numpy.array([F0] * n, dtype=object)
        v[f] = F1
        for r, p in enumerate(pivots):
            v[p] = -R[r, f]
        basis.append(v)
    return basis


def image_basis(A: numpy.ndarray) -> list[numpy.ndarray]:
    """The pivot columns of A, a basis of its column space."""
    _, pivots = rref(A)
    return [A[:, j].copy() for j in pivots]


class Solver:
    """
    Factor A once, then solve A x = b for many right-hand sides.

    Keeps the transform T with T A = R (R in reduced echelon form).
    """

    def __init__(self, A: numpy.ndarray):
        self.A = A
        m, n = A.shape
        self.shape = (m, n)
        rows = [[Fraction(x) for x in A[i]] + [F1 if k == i else F0 for k in range(m)] for i in range(m)]
        self.pivots = _eliminate(rows, n + m, stop=n)
        self.R = [row[:n] for row in rows]
        self.T = [row[n:] for row in rows]
        self.rank = len(self.pivots)

    def solve(self, b: Sequence) -> numpy.ndarray | None:
        m, n = self.shape
        if len(b) != m:
            raise ValueError("right-hand side has the wrong length")
        tb = [sum((t * x for t, x in zip(trow, b) if t), F0) for trow in self.T]
        if any(tb[i] != 0 for i in range(self.rank, m)):
            return None
        x = numpy.array([F0] * n, dtype=object)
        for r, p in enumerate(self.pivots):
            x[p] = tb[r]
        return x

    def kernel(self) -> list[numpy.ndarray]:
        n = self.shape[1]
        pivset = set(self.pivots)
        basis = []
        for f in range(n):
            if f in pivset:
                continue
            v = numpy.array([F0] * n, dtype=object)
            v[f] = F1
            for r, p in enumerate(self.pivots):
                v[p] = -self.R[r][f]
            basis.append(v)
        return basis


@dataclass
class LinearSolution:
    solution: numpy.ndarray | None
    kernel: list[numpy.ndarray]
    rank: int
    image: list[numpy.ndarray]

    @property
    def consistent(self) -> bool:
        return self.solution is not None


def solve_linear(A: numpy.ndarray, b: Sequence) -> LinearSolution:
    s = Solver(A)
    ker = s.kernel()
    # rank-nullity is cheap here; keep it on
    assert s.rank + len(ker) == A.shape[1]
    image = [A[:, j].copy() for j in s.pivots]
    return LinearSolution(s.solve(b), ker, s.rank, image)


def inverse(A: numpy.ndarray) -> numpy.ndarray:
    n, n2 = A.shape
    if n != n2:
        raise ValueError("not square")
    s = Solver(A)
    if s.rank != n:
        raise ValueError("matrix is singular")
    return matrix(s.T, n)


def is_invertible(A: numpy.ndarray) -> bool:
    return A.shape[0] == A.shape[1] and rank(A) == A.shape[0]


def to_str_rows(A: numpy.ndarray) -> list[list[str]]:
    return [[str(x) for x in A[i]] for i in range(A.shape[0])]
