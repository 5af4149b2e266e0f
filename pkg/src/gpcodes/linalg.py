"""Dense matrices and Gaussian elimination over GF(2^w).

Everything here works at desk scale (hundreds of rows) with exact field
arithmetic; rows are plain lists of ints.  The elimination style
matters to callers: :func:`row_reduce` only ever adds multiples of
earlier pivot rows to later rows (plus the occasional swap), so on a
matrix whose leading minors are nonsingular it produces exactly the
unit upper triangular form the array decoders reason about, together
with the transform that produced it.
"""

from __future__ import annotations

from typing import Sequence

from .fields import GF


class LinearSolveError(ValueError):
    """Base class for solve failures."""


class NoSolutionError(LinearSolveError):
    """The system is inconsistent."""


class UnderdeterminedError(LinearSolveError):
    """The system has more than one solution."""


class Matrix:
    """A rows x cols matrix over a GF(2^w) instance."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: GF, data: Sequence[Sequence[int]]):
        self.field = field
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(row) != self.cols for row in self.data):
            raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> "Matrix":
        return cls(field, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: GF, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.data)

    def __getitem__(self, rc: tuple[int, int]) -> int:
        return self.data[rc[0]][rc[1]]

    def __setitem__(self, rc: tuple[int, int], value: int) -> None:
        self.data[rc[0]][rc[1]] = value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.data == other.data

    def __repr__(self) -> str:
        body = "\n".join(" ".join(f"{v:>3x}" for v in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})\n{body}"

    def row(self, r: int) -> list[int]:
        return self.data[r]

    def column(self, c: int) -> list[int]:
        return [row[c] for row in self.data]

    def submatrix(self, rows: Sequence[int] | None = None,
                  cols: Sequence[int] | None = None) -> "Matrix":
        rr = range(self.rows) if rows is None else rows
        cc = range(self.cols) if cols is None else cols
        return Matrix(self.field, [[self.data[r][c] for c in cc] for r in rr])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [list(col) for col in zip(*self.data)])

    def mul_vec(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.cols:
            raise ValueError("vector length mismatch")
        f = self.field
        out = []
        for row in self.data:
            acc = 0
            for a, b in zip(row, x):
                if a and b:
                    acc ^= f.mul(a, b)
            out.append(acc)
        return out

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        f = self.field
        ot = list(zip(*other.data))
        out = []
        for row in self.data:
            out_row = []
            for col in ot:
                acc = 0
                for a, b in zip(row, col):
                    if a and b:
                        acc ^= f.mul(a, b)
                out_row.append(acc)
            out.append(out_row)
        return Matrix(f, out)


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    field = blocks[0].field
    cols = blocks[0].cols
    if any(b.cols != cols or b.field != field for b in blocks):
        raise ValueError("blocks must share field and width")
    data: list[list[int]] = []
    for b in blocks:
        data.extend(b.data)
    return Matrix(field, data)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; row-major flattening on both axes."""
    if a.field != b.field:
        raise ValueError("fields differ")
    f = a.field
    data = []
    for ar in a.data:
        for br in b.data:
            data.append([f.mul(x, y) if x and y else 0 for x in ar for y in br])
    return Matrix(f, data)


def vandermonde(field: GF, nodes: Sequence[int], num_rows: int) -> Matrix:
    """Matrix with entry (r, j) = nodes[j]^r.

    The nodes must be distinct and nonzero so that every square
    submatrix taken from consecutive powers is invertible.
    """
    if len(set(nodes)) != len(nodes):
        raise ValueError("nodes must be distinct")
    if any(n == 0 for n in nodes):
        raise ValueError("nodes must be nonzero")
    data = [[1] * len(nodes)]
    for _ in range(1, num_rows):
        prev = data[-1]
        data.append([field.mul(p, n) for p, n in zip(prev, nodes)])
    return Matrix(field, data[:num_rows])


def row_reduce(m: Matrix) -> tuple[Matrix, Matrix]:
    """Forward elimination to row echelon form with unit pivots.

    Returns ``(r, t)`` with ``t.matmul(m) == r``.  Pivots are chosen as
    the first row (top to bottom) with a nonzero entry in the current
    column; each pivot row is scaled to make the pivot 1 and then
    cleared *below* only, so rows keep their triangular structure.
    """
    f = m.field
    r = m.copy()
    t = Matrix.identity(f, m.rows)
    pivot_row = 0
    for col in range(m.cols):
        if pivot_row == m.rows:
            break
        sel = next((i for i in range(pivot_row, m.rows) if r.data[i][col]), None)
        if sel is None:
            continue
        if sel != pivot_row:
            r.data[sel], r.data[pivot_row] = r.data[pivot_row], r.data[sel]
            t.data[sel], t.data[pivot_row] = t.data[pivot_row], t.data[sel]
        inv = f.inv(r.data[pivot_row][col])
        if inv != 1:
            r.data[pivot_row] = [f.mul(inv, v) for v in r.data[pivot_row]]
            t.data[pivot_row] = [f.mul(inv, v) for v in t.data[pivot_row]]
        prow = r.data[pivot_row]
        trow = t.data[pivot_row]
        for i in range(pivot_row + 1, m.rows):
            factor = r.data[i][col]
            if factor:
                r.data[i] = [v ^ f.mul(factor, p) for v, p in zip(r.data[i], prow)]
                t.data[i] = [v ^ f.mul(factor, p) for v, p in zip(t.data[i], trow)]
        pivot_row += 1
    return r, t


def rank(m: Matrix) -> int:
    f = m.field
    work = [row[:] for row in m.data]
    nrows = len(work)
    pivot_row = 0
    for col in range(m.cols):
        if pivot_row == nrows:
            break
        sel = next((i for i in range(pivot_row, nrows) if work[i][col]), None)
        if sel is None:
            continue
        work[sel], work[pivot_row] = work[pivot_row], work[sel]
        prow = work[pivot_row]
        pinv = f.inv(prow[col])
        for i in range(pivot_row + 1, nrows):
            factor = work[i][col]
            if factor:
                factor = f.mul(factor, pinv)
                row_i = work[i]
                work[i] = [v ^ f.mul(factor, p) for v, p in zip(row_i, prow)]
        pivot_row += 1
    return pivot_row


def _rref(m: Matrix) -> tuple[list[list[int]], list[int]]:
    # Reduced row echelon form; returns (rows, pivot column list).
    f = m.field
    work = [row[:] for row in m.data]
    nrows = len(work)
    pivots: list[int] = []
    pivot_row = 0
    for col in range(m.cols):
        if pivot_row == nrows:
            break
        sel = next((i for i in range(pivot_row, nrows) if work[i][col]), None)
        if sel is None:
            continue
        work[sel], work[pivot_row] = work[pivot_row], work[sel]
        inv = f.inv(work[pivot_row][col])
        if inv != 1:
            work[pivot_row] = [f.mul(inv, v) for v in work[pivot_row]]
        prow = work[pivot_row]
        for i in range(nrows):
            if i != pivot_row and work[i][col]:
                factor = work[i][col]
                work[i] = [v ^ f.mul(factor, p) for v, p in zip(work[i], prow)]
        pivots.append(col)
        pivot_row += 1
    return work, pivots


def solve(m: Matrix, rhs: Sequence[int]) -> list[int]:
    """Unique solution of m @ x = rhs.

    Raises :class:`NoSolutionError` if the system is inconsistent and
    :class:`UnderdeterminedError` if the solution is not unique.
    """
    if len(rhs) != m.rows:
        raise ValueError("rhs length mismatch")
    aug = Matrix(m.field, [row + [b] for row, b in zip(m.data, rhs)])
    work, pivots = _rref(aug)
    if m.cols in pivots:
        raise NoSolutionError("inconsistent system")
    if len(pivots) < m.cols:
        raise UnderdeterminedError(
            f"rank {len(pivots)} < {m.cols} unknowns")
    x = [0] * m.cols
    for i, col in enumerate(pivots):
        x[col] = work[i][m.cols]
    return x


def null_space(m: Matrix) -> list[list[int]]:
    """Basis of the right null space, one vector per free column."""
    work, pivots = _rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * m.cols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = work[i][fc]
        basis.append(vec)
    return basis
