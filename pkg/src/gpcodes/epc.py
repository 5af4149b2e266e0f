"""Product codes extended by global parities.

An extended product code EP(m, v; n, h; g) protects an m x n array with
h horizontal parities per row, v vertical parities per column and g
extra global parities.  :func:`distance_bound` gives the sharp upper
bound on its minimum distance as a minimum over critical-rectangle
shapes.  Three concrete constructions are provided:

* :func:`build_optimal_g1` realizes the g = 1 bound inside the
  generalized-product family (a two-level ladder),
* :func:`build_h2` adds two global parities built on powers of alpha,
  reaching distance 8 for v = h = 1,
* :func:`build_h3` adds a third power row, reaching distance 9 whenever
  the field satisfies a quadruple non-vanishing condition
  (:func:`check_condition_35`); the all-ones-modulus fields obtained
  via :meth:`gpcodes.fields.GF.from_prime` satisfy it by construction.

The latter two are plain linear codes on flattened arrays, handled by a
small parity-check-matrix container with generic erasure decoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

from .fields import GF, field_with_order
from .gpc import GpcParams, UncorrectableError
from .linalg import (Matrix, NoSolutionError, UnderdeterminedError, rank,
                     solve)


@dataclass(frozen=True)
class EpcShape:
    """The five defining counts of an extended product code."""

    m: int
    v: int
    n: int
    h: int
    g: int

    def violations(self) -> list[str]:
        out = []
        if not 1 <= self.v < self.m:
            out.append(f"need 1 <= v < m, got v={self.v}, m={self.m}")
        if not 1 <= self.h < self.n:
            out.append(f"need 1 <= h < n, got h={self.h}, n={self.n}")
        if self.g < 0:
            out.append(f"need g >= 0, got {self.g}")
        return out

    def check(self) -> "EpcShape":
        problems = self.violations()
        if problems:
            raise ValueError("; ".join(problems))
        return self

    def __str__(self) -> str:
        return f"EP({self.m},{self.v};{self.n},{self.h};{self.g})"


def distance_bound(shape: EpcShape) -> tuple[int, dict[int, int]]:
    """Sharp distance upper bound and its per-rectangle table.

    For each admissible count ``a`` of extra columns the table holds the
    weight of an uncorrectable erasure pattern built from a
    ``(v+b) x (h+a)`` rectangle (plus a partial row when the global
    parities do not divide evenly); the bound is the table minimum.
    """
    shape.check()
    lo = ceil((shape.g + 1) / (shape.m - shape.v))
    hi = min(shape.g + 1, shape.n - shape.h)
    if lo > hi:
        raise ValueError(f"degenerate shape {shape}: no admissible rectangle")
    table: dict[int, int] = {}
    for a in range(lo, hi + 1):
        b, r = divmod(shape.g + 1, a)
        val = (shape.v + b) * (shape.h + a)
        if r:
            val += shape.h + r
        table[a] = val
    return min(table.values()), table


def build_optimal_g1(m: int, v: int, n: int, h: int,
                     field: GF | None = None) -> GpcParams:
    """EP(m, v; n, h; 1) meeting the distance bound.

    Implemented as a two-level ladder: all rows correct h erasures, the
    combinations of the last v+1 sorted rows correct h+1, and v row
    combinations vanish.  Requires m >= v + 2 and h <= n - 2 so the
    ladder is well formed.
    """
    EpcShape(m, v, n, h, 1).check()
    if m < v + 2:
        raise ValueError(f"need m >= v + 2, got m={m}, v={v}")
    if h > n - 2:
        raise ValueError(f"need h <= n - 2, got h={h}, n={n}")
    if field is None:
        field = field_with_order(max(m, n))
    return GpcParams(m=m, n=n, k=m - v, s=(m - v - 1, v + 1),
                     u=(h, h + 1), field=field).check()


@dataclass
class LinearCode:
    """A linear code given by its parity-check matrix over GF(2^w)."""

    field: GF
    length: int
    check_matrix: Matrix

    def __post_init__(self):
        if self.check_matrix.cols != self.length:
            raise ValueError("check matrix width does not match length")
        self._rank: int | None = None
        self._parity_positions: tuple[int, ...] | None = None

    @property
    def redundancy(self) -> int:
        if self._rank is None:
            self._rank = rank(self.check_matrix)
        return self._rank

    @property
    def dimension(self) -> int:
        return self.length - self.redundancy

    def parity_positions(self) -> tuple[int, ...]:
        """Greedy systematic choice: the last positions, scanned right to
        left, whose check columns stay linearly independent."""
        if self._parity_positions is not None:
            return self._parity_positions
        f = self.field
        chosen: list[int] = []
        pivots: dict[int, list[int]] = {}
        for j in range(self.length - 1, -1, -1):
            if len(chosen) == self.redundancy:
                break
            vec = self.check_matrix.column(j)
            while True:
                lead = next((i for i, x in enumerate(vec) if x), None)
                if lead is None:
                    break
                hit = pivots.get(lead)
                if hit is None:
                    inv = f.inv(vec[lead])
                    pivots[lead] = [f.mul(inv, x) for x in vec]
                    chosen.append(j)
                    break
                factor = vec[lead]
                vec = [x ^ f.mul(factor, y) for x, y in zip(vec, hit)]
        self._parity_positions = tuple(sorted(chosen))
        return self._parity_positions

    def data_positions(self) -> tuple[int, ...]:
        parity = set(self.parity_positions())
        return tuple(j for j in range(self.length) if j not in parity)


def _power_row(field: GF, length: int, step: int) -> list[int]:
    return [field.alpha_pow(step * j) for j in range(length)]


def build_h2(m: int, n: int, field: GF | None = None) -> LinearCode:
    """EP(m, 1; n, 1; 2) on flattened m x n arrays.

    Check rows: one sum per array row, one sum per array column, then
    the alpha-power row and its inverse-power twin.  Needs
    order(alpha) >= m*n.
    """
    if m < 2 or n < 2:
        raise ValueError("need m, n >= 2")
    if field is None:
        field = field_with_order(m * n)
    if field.alpha_order < m * n:
        raise ValueError(
            f"order(alpha)={field.alpha_order} < m*n={m * n}")
    length = m * n
    rows = []
    for i in range(m):
        row = [0] * length
        for j in range(n):
            row[i * n + j] = 1
        rows.append(row)
    for j in range(n):
        row = [0] * length
        for i in range(m):
            row[i * n + j] = 1
        rows.append(row)
    rows.append(_power_row(field, length, 1))
    rows.append(_power_row(field, length, -1))
    return LinearCode(field, length, Matrix(field, rows))


def build_h3(m: int, n: int, field: GF | None = None) -> LinearCode:
    """EP(m, 1; n, 1; 3): the two-global construction plus a squared-power row."""
    base = build_h2(m, n, field)
    rows = base.check_matrix.data + [_power_row(base.field, m * n, 2)]
    return LinearCode(base.field, m * n, Matrix(base.field, rows))


def check_condition_35(m: int, n: int, field: GF) -> tuple[int, int, int, int] | None:
    """Quadruple test deciding whether the three-global code reaches distance 9.

    Returns None when, for all 1 <= i1 <= m-1, 1 <= |i2| <= m-1,
    1 <= j1 <= n-1, 1 <= |j2| <= n-1,

        1 + alpha^(-j1) + alpha^(-i2*n + j2) + alpha^(-(i2 - i1)*n + j2) != 0,

    otherwise the first violating (i1, i2, j1, j2) in loop order.
    """
    f = field
    signed_i = list(range(1, m)) + list(range(-1, -m, -1))
    signed_j = list(range(1, n)) + list(range(-1, -n, -1))
    for i1 in range(1, m):
        for i2 in signed_i:
            for j1 in range(1, n):
                for j2 in signed_j:
                    acc = 1 ^ f.alpha_pow(-j1)
                    acc ^= f.alpha_pow(-i2 * n + j2)
                    acc ^= f.alpha_pow(-(i2 - i1) * n + j2)
                    if acc == 0:
                        return (i1, i2, j1, j2)
    return None


def lc_erasure_decode(values: list[int], erased: set[int] | frozenset[int],
                      code: LinearCode) -> list[int]:
    """Generic erasure decoding by solving the syndrome system.

    Needs the erased check-matrix columns to be independent; otherwise
    the pattern is uncorrectable and :class:`UncorrectableError` is
    raised.
    """
    if len(values) != code.length:
        raise ValueError("word length mismatch")
    f = code.field
    cols = sorted(erased)
    if not cols:
        return list(values)
    h = code.check_matrix
    rhs = []
    for row in h.data:
        acc = 0
        for j, x in enumerate(row):
            if x and j not in erased and values[j]:
                acc ^= f.mul(x, values[j])
        rhs.append(acc)
    sub = h.submatrix(cols=cols)
    try:
        missing = solve(sub, rhs)
    except UnderdeterminedError as exc:
        raise UncorrectableError(
            f"{len(cols)} erased positions span a dependent column set",
            remaining=frozenset(cols)) from exc
    except NoSolutionError as exc:
        raise UncorrectableError(
            "known symbols are inconsistent with the code") from exc
    out = list(values)
    for c, v in zip(cols, missing):
        out[c] = v
    return out


def lc_encode(data: list[int], code: LinearCode) -> list[int]:
    """Systematic encoding: data fills the non-parity positions in order."""
    if len(data) != code.dimension:
        raise ValueError(f"expected {code.dimension} symbols, got {len(data)}")
    word = [0] * code.length
    for pos, sym in zip(code.data_positions(), data):
        word[pos] = sym
    return lc_erasure_decode(word, set(code.parity_positions()), code)


def lc_is_member(word: list[int], code: LinearCode) -> bool:
    return not any(code.check_matrix.mul_vec(word))
