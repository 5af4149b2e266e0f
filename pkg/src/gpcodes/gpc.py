"""Generalized product codes on m x n symbol arrays.

A code here is determined by a strictly increasing ladder of row-code
strengths ``u_0 < u_1 < ... < u_(t-1)``, multiplicities ``s_i`` summing
to the number of rows, and a fully-correctable row count ``m - k``.
Every array row belongs to the weakest row code; selected combinations
of rows (weighted by powers of alpha) fall into progressively stronger
row codes, and the last ``m - k`` such combinations vanish outright.
That nesting is what the erasure decoder exploits: it triangulates the
power-weight matrix of the erased rows and peels them off from the most
constrained combination to the least.

Arrays carry an explicit erasure mask; an erased cell always stores the
value 0 and the mask is authoritative.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .fields import GF
from .linalg import (Matrix, NoSolutionError, UnderdeterminedError, kron,
                     null_space, row_reduce, solve, vandermonde, vstack)


class UncorrectableError(ValueError):
    """The erasure pattern exceeds what the requested decoder can fix.

    ``remaining`` holds the positions still unresolved: (row, col) pairs
    for array codes, flat indices for linear codes.
    """

    def __init__(self, message: str, remaining: frozenset = frozenset()):
        super().__init__(message)
        self.remaining = remaining


@dataclass(frozen=True)
class GpcParams:
    """Parameter set (m, n, k, s-vector, u-vector, field) for one code.

    ``s`` and ``u`` are the level vectors: level i contributes ``s[i]``
    rows whose combinations land in the row code that corrects ``u[i]``
    erasures.  Sentinels used throughout: s_hat(0) = m, s_hat(t) = m - k
    and u_at(t) = n.
    """

    m: int
    n: int
    k: int
    s: tuple[int, ...]
    u: tuple[int, ...]
    field: GF

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))
        object.__setattr__(self, "u", tuple(self.u))

    @property
    def t(self) -> int:
        return len(self.s)

    def s_hat(self, i: int) -> int:
        """Rows governed by level i or deeper; s_hat(t) = m - k."""
        if i == self.t:
            return self.m - self.k
        return sum(self.s[i:])

    def u_at(self, i: int) -> int:
        """Level strengths with the sentinel u_t = n."""
        return self.n if i == self.t else self.u[i]

    def violations(self) -> list[str]:
        """All constraint violations, empty when the parameters are valid."""
        out = []
        if self.m < 1 or self.n < 1:
            out.append(f"array shape {self.m}x{self.n} must be positive")
        if self.t == 0 or len(self.u) != self.t:
            out.append(f"level vectors disagree: {len(self.s)} vs {len(self.u)}")
            return out
        if sum(self.s) != self.m:
            out.append(f"sum(s)={sum(self.s)} != m={self.m}")
        if any(x < 1 for x in self.s):
            out.append("every s_i must be >= 1")
        if not all(1 <= a < b for a, b in zip(self.u, self.u[1:])) or \
                not 1 <= self.u[0] or self.u[-1] > self.n - 1:
            out.append(f"need 1 <= u_0 < ... < u_(t-1) <= n-1, got {self.u}")
        if not 0 <= self.m - self.k < self.s[-1]:
            out.append(f"need 0 <= m-k < s_(t-1), got m-k={self.m - self.k}")
        big = max(self.m, self.n)
        if (1 << self.field.w) <= big:
            out.append(f"field size 2^{self.field.w} must exceed {big}")
        elif self.field.alpha_order < big:
            out.append(
                f"order(alpha)={self.field.alpha_order} must be >= {big}")
        return out

    def check(self) -> "GpcParams":
        problems = self.violations()
        if problems:
            raise ValueError("; ".join(problems))
        return self

    def expanded_u(self) -> tuple[int, ...]:
        """Per-row strengths (u_0 repeated s_0 times, and so on)."""
        out: list[int] = []
        for mult, val in zip(self.s, self.u):
            out.extend([val] * mult)
        return tuple(out)

    def notation(self) -> str:
        body = ",".join(str(v) for v in self.expanded_u())
        return f"C({self.n};{self.k},({body}))"

    def dimension(self) -> int:
        """Number of free symbols per array."""
        t = self.t
        total = self.k * self.n
        for i in range(t - 1):
            total -= self.s[i] * self.u[i]
        total -= (self.s[-1] - (self.m - self.k)) * self.u[-1]
        return total

    def min_distance(self) -> int:
        return min((self.s_hat(i + 1) + 1) * (self.u[i] + 1)
                   for i in range(self.t))

    def erasure_budgets(self) -> tuple[int, ...]:
        """Largest tolerable per-row erasure counts, sorted non-increasing.

        A sorted profile is decodable by the row decoder exactly when it
        is dominated entrywise by this vector.
        """
        out = []
        for p in range(self.m):
            if p < self.m - self.k:
                out.append(self.n)
                continue
            level = 0
            for s in range(1, self.t):
                if self.s_hat(s) >= p + 1:
                    level = s
            out.append(self.u[level])
        return tuple(out)

    def parity_positions(self) -> frozenset[tuple[int, int]]:
        """Systematic layout: cells solved by the encoder.

        Level i claims the last u_i columns of its row band; the bottom
        m - k rows are parity in full.
        """
        pos = set()
        for i in range(self.t):
            for r in range(self.m - self.s_hat(i), self.m - self.s_hat(i + 1)):
                for c in range(self.n - self.u[i], self.n):
                    pos.add((r, c))
        for r in range(self.k, self.m):
            for c in range(self.n):
                pos.add((r, c))
        return frozenset(pos)

    def transposed(self) -> "GpcParams":
        """Parameters of the same code viewed column-wise.

        The n x m view is again a code of this family; strengths and
        multiplicities swap roles through the partial sums.  Codes with
        k = m have no vanishing row combinations, so their column view
        falls outside the family and raises ValueError.
        """
        if self.m == self.k:
            raise ValueError(
                "column view undefined for k = m (no full-strength parities)")
        t = self.t
        u_new = tuple(self.s_hat(t - i) for i in range(t))
        s_new = tuple(self.u_at(t - i) - self.u_at(t - i - 1) for i in range(t - 1))
        s_new += (self.u_at(1),)
        return GpcParams(m=self.n, n=self.m, k=self.n - self.u[0],
                         s=s_new, u=u_new, field=self.field)


class SymbolArray:
    """An m x n array of field symbols with an erasure mask."""

    __slots__ = ("m", "n", "values", "erased")

    def __init__(self, values: Sequence[Sequence[int]],
                 erased: Sequence[Sequence[bool]] | None = None):
        self.values = [list(row) for row in values]
        self.m = len(self.values)
        self.n = len(self.values[0]) if self.values else 0
        if any(len(row) != self.n for row in self.values):
            raise ValueError("ragged rows")
        if erased is None:
            self.erased = [[False] * self.n for _ in range(self.m)]
        else:
            self.erased = [list(map(bool, row)) for row in erased]
            if len(self.erased) != self.m or \
                    any(len(row) != self.n for row in self.erased):
                raise ValueError("mask shape mismatch")
        for r in range(self.m):
            for c in range(self.n):
                if self.erased[r][c]:
                    self.values[r][c] = 0

    @classmethod
    def zeros(cls, m: int, n: int) -> "SymbolArray":
        return cls([[0] * n for _ in range(m)])

    def copy(self) -> "SymbolArray":
        return SymbolArray(self.values, self.erased)

    def erase(self, r: int, c: int) -> None:
        self.values[r][c] = 0
        self.erased[r][c] = True

    def fill(self, r: int, c: int, value: int) -> None:
        self.values[r][c] = value
        self.erased[r][c] = False

    def is_erased(self, r: int, c: int) -> bool:
        return self.erased[r][c]

    @property
    def erasure_count(self) -> int:
        return sum(flag for row in self.erased for flag in row)

    def erased_positions(self) -> list[tuple[int, int]]:
        return [(r, c) for r in range(self.m) for c in range(self.n)
                if self.erased[r][c]]

    def row_erasures(self, r: int) -> list[int]:
        return [c for c in range(self.n) if self.erased[r][c]]

    def transposed(self) -> "SymbolArray":
        return SymbolArray(list(zip(*self.values)), list(zip(*self.erased)))

    def flatten(self) -> list[int]:
        return [v for row in self.values for v in row]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolArray):
            return NotImplemented
        return self.values == other.values and self.erased == other.erased

    def __repr__(self) -> str:
        body = "\n".join(
            " ".join("?" if e else f"{v:x}" for v, e in zip(vr, er))
            for vr, er in zip(self.values, self.erased))
        return f"SymbolArray({self.m}x{self.n})\n{body}"


def erase_positions(arr: SymbolArray,
                    positions: Iterable[tuple[int, int]]) -> SymbolArray:
    out = arr.copy()
    for r, c in positions:
        out.erase(r, c)
    return out


@dataclass(frozen=True)
class ErasureProfile:
    """Per-row erasure counts, sorted non-increasing.

    Ties break toward the smaller original row index so the decoder's
    row ordering is reproducible.
    """

    entries: tuple[tuple[int, int], ...]  # (count, original row index)

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> "ErasureProfile":
        order = sorted(range(len(counts)), key=lambda r: (-counts[r], r))
        return cls(tuple((counts[r], r) for r in order))

    @classmethod
    def from_array(cls, arr: SymbolArray) -> "ErasureProfile":
        return cls.from_counts([sum(row) for row in arr.erased])

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.entries)

    @property
    def row_order(self) -> tuple[int, ...]:
        return tuple(r for _, r in self.entries)


def decodable_profile(profile: ErasureProfile, params: GpcParams) -> bool:
    """Whether the single-pass row decoder is guaranteed to succeed."""
    budgets = params.erasure_budgets()
    counts = profile.counts
    if len(counts) != params.m:
        raise ValueError("profile length does not match row count")
    return all(c <= b for c, b in zip(counts, budgets))


def component_parity_check(params: GpcParams, i: int) -> Matrix:
    """Parity-check matrix of the level-i row code: entry (r, j) = alpha^(r*j)."""
    f = params.field
    nodes = [f.alpha_pow(j) for j in range(params.n)]
    return vandermonde(f, nodes, params.u[i])


def full_parity_matrix(params: GpcParams) -> Matrix:
    """All defining constraints, stacked over flattened (row-major) arrays.

    Contains one block per array row for the weakest row code, one
    Kronecker block per deeper level, and the vanishing-combination
    block.  Rows may be redundant; the rank always equals m*n minus the
    dimension.
    """
    f = params.field
    m, n = params.m, params.n
    row_nodes = [f.alpha_pow(j) for j in range(m)]
    blocks = [kron(Matrix.identity(f, m), component_parity_check(params, 0))]
    for i in range(1, params.t):
        weights = vandermonde(f, row_nodes, params.s_hat(i))
        blocks.append(kron(weights, component_parity_check(params, i)))
    if params.m - params.k:
        weights = vandermonde(f, row_nodes, params.m - params.k)
        blocks.append(kron(weights, Matrix.identity(f, n)))
    return vstack(blocks)


def _check_shape(arr: SymbolArray, params: GpcParams) -> None:
    if (arr.m, arr.n) != (params.m, params.n):
        raise ValueError(
            f"array is {arr.m}x{arr.n}, parameters expect {params.m}x{params.n}")


def is_member(arr: SymbolArray, params: GpcParams) -> bool:
    """Exact membership test by direct syndrome evaluation."""
    params.check()
    _check_shape(arr, params)
    if arr.erasure_count:
        raise ValueError("membership is undefined for arrays with erasures")
    f = params.field
    m, n, t = params.m, params.n, params.t
    h = [component_parity_check(params, i) for i in range(t)]
    for row in arr.values:
        if any(h[0].mul_vec(row)):
            return False
    depth = max(params.s_hat(1) if t > 1 else 0, m - params.k)
    combo = [0] * n
    weights = [1] * m
    for r in range(depth):
        if r == 0:
            combo = [0] * n
            for row in arr.values:
                combo = [a ^ b for a, b in zip(combo, row)]
        else:
            weights = [f.mul(w, f.alpha_pow(j)) for j, w in enumerate(weights)]
            combo = [0] * n
            for w, row in zip(weights, arr.values):
                if w:
                    combo = [a ^ f.mul(w, v) if v else a
                             for a, v in zip(combo, row)]
        if r < m - params.k:
            if any(combo):
                return False
            continue
        for i in range(1, t):
            if r < params.s_hat(i) and any(h[i].mul_vec(combo)):
                return False
    return True


def _correct_in_level(params: GpcParams, values: Sequence[int],
                      erased_cols: Sequence[int], level: int) -> list[int]:
    # Fill erased positions of a row-code member; unique because the
    # erased-column submatrix of the check is Vandermonde-invertible.
    f = params.field
    u = params.u[level]
    if len(erased_cols) > u:
        raise UncorrectableError(
            f"{len(erased_cols)} erasures exceed level-{level} strength {u}")
    cols = list(erased_cols)
    rhs = []
    for r in range(u):
        acc = 0
        for c, v in enumerate(values):
            if v and c not in erased_cols:
                acc ^= f.mul(f.alpha_pow(r * c), v)
        rhs.append(acc)
    sub = Matrix(f, [[f.alpha_pow(r * c) for c in cols] for r in range(u)])
    try:
        missing = solve(sub, rhs)
    except (NoSolutionError, UnderdeterminedError) as exc:  # pragma: no cover
        raise UncorrectableError(f"row solve failed: {exc}") from exc
    out = list(values)
    for c, v in zip(cols, missing):
        out[c] = v
    return out


def _local_row_pass(work: SymbolArray, params: GpcParams) -> None:
    # Fix every row that the weakest row code can already handle.
    u0 = params.u[0]
    for r in range(work.m):
        cols = work.row_erasures(r)
        if 0 < len(cols) <= u0:
            fixed = _correct_in_level(params, work.values[r], cols, 0)
            for c in cols:
                work.fill(r, c, fixed[c])


@dataclass
class DecodeTrace:
    """Optional record of the row decoder's internal steps."""

    row_order: tuple[int, ...] = ()
    counts: tuple[int, ...] = ()
    system: Matrix | None = None
    transform: Matrix | None = None
    steps: list[tuple[int, int, int | None]] = dc_field(default_factory=list)
    # steps: (profile position, row index, level used; None = vanishing combo)


_TRIANGULATION_CACHE: dict[tuple, tuple[Matrix, Matrix]] = {}


def _triangulated_system(params: GpcParams, order: tuple[int, ...],
                         nsys: int) -> tuple[Matrix, Matrix]:
    key = (params, order, nsys)
    hit = _TRIANGULATION_CACHE.get(key)
    if hit is not None:
        return hit
    f = params.field
    vm = Matrix(f, [[f.alpha_pow(r * j) for j in order] for r in range(nsys)])
    reduced, transform = row_reduce(vm)
    _TRIANGULATION_CACHE[key] = (reduced, transform)
    return reduced, transform


def decode_rows(arr: SymbolArray, params: GpcParams,
                trace: DecodeTrace | None = None) -> SymbolArray:
    """Single-pass erasure decoder working row by row.

    First settles every row within reach of the weakest row code, then
    orders the remaining rows by erasure count, triangulates their
    power-weight matrix, and peels rows from strongest combination to
    weakest: each triangulated row states that the current array row
    plus a known combination of later rows lies in some row code (or
    vanishes), which pins its erased symbols.

    Raises :class:`UncorrectableError` when the sorted profile exceeds
    the guaranteed budgets.
    """
    params.check()
    _check_shape(arr, params)
    f = params.field
    m, k, t = params.m, params.k, params.t
    work = arr.copy()
    _local_row_pass(work, params)
    if not work.erasure_count:
        return work
    profile = ErasureProfile.from_array(work)
    if not decodable_profile(profile, params):
        bad = [(c, r) for c, r in profile.entries if c]
        raise UncorrectableError(
            f"erasure profile {bad} exceeds the decodable budgets "
            f"{params.erasure_budgets()}",
            remaining=frozenset(work.erased_positions()))
    order = profile.row_order
    counts = profile.counts
    ell = sum(1 for p in range(m - k, m) if counts[p] > 0)
    nsys = (m - k) + ell
    reduced, transform = _triangulated_system(params, order, nsys)
    if trace is not None:
        trace.row_order = order
        trace.counts = counts
        trace.system = reduced
        trace.transform = transform
    for p in range(nsys - 1, -1, -1):
        row_idx = order[p]
        cols = work.row_erasures(row_idx)
        if p < m - k and not cols:
            continue
        gamma = reduced.data[p]
        known = [0] * params.n
        for j in range(p + 1, m):
            g = gamma[j]
            if g:
                src = work.values[order[j]]
                known = [a ^ f.mul(g, v) if v else a
                         for a, v in zip(known, src)]
        if p < m - k:
            # The combination vanishes, so the row equals the known part.
            for c in cols:
                work.fill(row_idx, c, known[c])
            if trace is not None:
                trace.steps.append((p, row_idx, None))
            continue
        level = next(s for s in range(1, t)
                     if params.u[s] >= counts[p] and params.s_hat(s) >= p + 1)
        combo = [a ^ b for a, b in zip(work.values[row_idx], known)]
        fixed = _correct_in_level(params, combo, cols, level)
        for c in cols:
            work.fill(row_idx, c, fixed[c] ^ known[c])
        if trace is not None:
            trace.steps.append((p, row_idx, level))
    return work


def decode_iterative(arr: SymbolArray, params: GpcParams) -> SymbolArray:
    """Alternating row/column decoder.

    Runs the row decoder on the array and on its transpose (under the
    column-view parameters), interleaved with the cheap local passes,
    until everything is recovered or a full alternation makes no
    progress.  On a stall the partial array is returned with its
    remaining erasures still masked.
    """
    params.check()
    _check_shape(arr, params)
    try:
        col_params = params.transposed()
    except ValueError:
        col_params = None
    work = arr.copy()
    while work.erasure_count:
        before = work.erasure_count
        try:
            return decode_rows(work, params)
        except UncorrectableError:
            pass
        _local_row_pass(work, params)
        if col_params is not None and work.erasure_count:
            flipped = work.transposed()
            try:
                return decode_rows(flipped, col_params).transposed()
            except UncorrectableError:
                pass
            _local_row_pass(flipped, col_params)
            work = flipped.transposed()
        if work.erasure_count >= before:
            break
    return work


def encode(data: Sequence[int], params: GpcParams) -> SymbolArray:
    """Systematic encoder.

    Data symbols fill the non-parity cells in row-major order; the
    parity cells are treated as erasures and recovered by the row
    decoder (the parity pattern always sits inside the budgets, and its
    triangulation is cached across calls).
    """
    params.check()
    dim = params.dimension()
    if len(data) != dim:
        raise ValueError(f"expected {dim} data symbols, got {len(data)}")
    limit = 1 << params.field.w
    if any(not 0 <= v < limit for v in data):
        raise ValueError("data symbol out of field range")
    parity = params.parity_positions()
    arr = SymbolArray.zeros(params.m, params.n)
    it = iter(data)
    for r in range(params.m):
        for c in range(params.n):
            if (r, c) in parity:
                arr.erase(r, c)
            else:
                arr.fill(r, c, next(it))
    return decode_rows(arr, params)


def min_weight_codeword(params: GpcParams, level: int,
                        rows: Sequence[int], cols: Sequence[int]) -> SymbolArray:
    """A codeword supported exactly on rows x cols.

    ``cols`` must contain u_level + 1 column indices and ``rows``
    exactly s_hat(level+1) + 1 row indices; the construction places one
    minimum-weight row-code word, scaled per row by a vanishing-weight
    vector, and witnesses the distance formula when the level attains
    the minimum.
    """
    params.check()
    f = params.field
    rows = sorted(rows)
    cols = sorted(cols)
    if not 0 <= level < params.t:
        raise ValueError(f"level {level} out of range")
    if len(cols) != params.u[level] + 1:
        raise ValueError(f"need {params.u[level] + 1} columns, got {len(cols)}")
    if len(rows) != params.s_hat(level + 1) + 1:
        raise ValueError(
            f"need {params.s_hat(level + 1) + 1} rows, got {len(rows)}")
    if cols[0] < 0 or cols[-1] >= params.n or len(set(cols)) != len(cols):
        raise ValueError("columns out of range or repeated")
    if rows[0] < 0 or rows[-1] >= params.m or len(set(rows)) != len(rows):
        raise ValueError("rows out of range or repeated")
    h = component_parity_check(params, level)
    w_basis = _null_vector(h.submatrix(cols=cols))
    row_nodes = [f.alpha_pow(r) for r in rows]
    depth = len(rows) - 1
    if depth:
        v_basis = _null_vector(vandermonde(f, row_nodes, depth))
    else:
        v_basis = [1]
    arr = SymbolArray.zeros(params.m, params.n)
    for vr, r in zip(v_basis, rows):
        for wc, c in zip(w_basis, cols):
            arr.fill(r, c, f.mul(vr, wc))
    return arr


def _null_vector(mat: Matrix) -> list[int]:
    basis = null_space(mat)
    if len(basis) != 1:
        raise ValueError(f"expected a one-dimensional null space, got {len(basis)}")
    return basis[0]
