"""Independent ground truth for codes given by a parity-check matrix.

Correctability of an erasure pattern and exact minimum distance are
both column-rank statements about the check matrix, so everything here
works directly on matrices and never consults the structured decoders.
The distance search enumerates column subsets in colexicographic order
by increasing size, maintaining an incremental GF(2) elimination state:
a GF(2^w) column is expanded into its w binary multiples, each packed
into one int, which makes dependence checks a handful of XORs.  The
first dependent subset found is therefore a witness of exactly minimum
size (and the colex-least such witness, so results are reproducible).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Iterable

from .linalg import Matrix, rank, row_reduce, solve
from . import gpc as _gpc

DEFAULT_BUDGET = 10_000_000


class SearchBudgetError(RuntimeError):
    """The requested exhaustive search exceeds the subset budget."""


class DistanceCapError(RuntimeError):
    """No dependent column set exists within the requested size cap."""


def correctable(positions: Iterable[int], check_matrix: Matrix) -> bool:
    """Whether an erasure pattern is recoverable under the given checks.

    True exactly when the selected columns are linearly independent.
    """
    cols = sorted(set(positions))
    if not cols:
        return True
    if cols[0] < 0 or cols[-1] >= check_matrix.cols:
        raise ValueError("position out of range")
    return rank(check_matrix.submatrix(cols=cols)) == len(cols)


@dataclass(frozen=True)
class DistanceReport:
    distance: int
    witness: tuple[int, ...]
    subsets_examined: int


def _row_basis(m: Matrix) -> list[list[int]]:
    reduced, _ = row_reduce(m)
    return [row for row in reduced.data if any(row)]


def search_cost(n: int, cap: int) -> int:
    """Total column subsets of size <= cap out of n."""
    return sum(comb(n, c) for c in range(1, min(cap, n) + 1))


def brute_min_distance(check_matrix: Matrix, cap: int,
                       budget: int = DEFAULT_BUDGET) -> DistanceReport:
    """Exact minimum distance by exhaustive dependent-column search.

    Scans subset sizes 1, 2, ... up to ``cap``; the returned witness is
    a dependent column set of minimum size, i.e. the support of a
    minimum-weight codeword.  Raises :class:`SearchBudgetError` before
    doing any work if the total number of subsets within the cap
    exceeds ``budget``, and :class:`DistanceCapError` if every subset
    within the cap is independent.
    """
    n = check_matrix.cols
    if cap < 1:
        raise ValueError("cap must be >= 1")
    cost = search_cost(n, cap)
    if cost > budget:
        raise SearchBudgetError(
            f"{cost} subsets of size <= {min(cap, n)} out of {n} exceed "
            f"the budget of {budget}; lower the cap or raise the budget")
    f = check_matrix.field
    w = f.w
    basis = _row_basis(check_matrix)
    nrows = len(basis)
    if nrows == 0:
        if n == 0:
            raise DistanceCapError("empty matrix has no columns")
        return DistanceReport(1, (0,), 1)
    scalars = [1]
    for _ in range(w - 1):
        scalars.append(f.mul(scalars[-1], 2))
    colbits: list[list[int]] = []
    for j in range(n):
        per_scalar = []
        for s in scalars:
            bits = 0
            for r in range(nrows):
                v = basis[r][j]
                if v:
                    bits |= f.mul(v, s) << (r * w)
            per_scalar.append(bits)
        colbits.append(per_scalar)

    pivots = [0] * (nrows * w + w)
    chosen: list[int] = []
    examined = 0

    def insert(j: int) -> list[int] | None:
        # Returns pivot bit positions added, or None if column j is
        # dependent on the chosen set.
        added: list[int] = []
        for vb in colbits[j]:
            v = vb
            while v:
                b = v.bit_length() - 1
                p = pivots[b]
                if p:
                    v ^= p
                else:
                    pivots[b] = v
                    added.append(b)
                    break
            else:
                # The first vanishing expansion certifies dependence of
                # the field column; no partial pivots can exist yet when
                # that happens, but clean up defensively.
                for b in added:
                    pivots[b] = 0
                return None
        return added

    def scan(need: int, hi: int) -> tuple[int, ...] | None:
        nonlocal examined
        for j in range(need - 1, hi + 1):
            added = insert(j)
            if added is None:
                examined += 1
                if need == 1:
                    return tuple(sorted(chosen + [j]))
                # A dependent strict prefix would contradict the
                # completed smaller-size passes.
                raise AssertionError("dependent prefix below current size")
            if need == 1:
                examined += 1
            else:
                chosen.append(j)
                found = scan(need - 1, j - 1)
                chosen.pop()
                if found is not None:
                    return found
            for b in added:
                pivots[b] = 0
        return None

    for size in range(1, min(cap, n) + 1):
        witness = scan(size, n - 1)
        if witness is not None:
            return DistanceReport(size, witness, examined)
    raise DistanceCapError(
        f"no dependent set of size <= {min(cap, n)} "
        f"({examined} subsets examined)")


def random_decodable_pattern(params: "_gpc.GpcParams",
                             rng: random.Random) -> set[tuple[int, int]]:
    """A random erasure pattern inside the row decoder's guarantees.

    Draws a per-row budget from the sorted budget vector (assigned to
    rows by a random permutation) and a random erasure count within it,
    so every guaranteed-decodable pattern has positive probability.
    """
    budgets = params.erasure_budgets()
    rows = list(range(params.m))
    rng.shuffle(rows)
    pattern: set[tuple[int, int]] = set()
    for budget, row in zip(budgets, rows):
        count = rng.randint(0, budget)
        for c in rng.sample(range(params.n), count):
            pattern.add((row, c))
    return pattern


def _random_pattern(m: int, n: int, max_weight: int,
                    rng: random.Random) -> set[tuple[int, int]]:
    weight = rng.randint(0, max_weight)
    cells = rng.sample([(r, c) for r in range(m) for c in range(n)], weight)
    return set(cells)


@dataclass
class EquivalenceReport:
    trials: int
    seed: int
    correctable_count: int = 0
    profile_accepted_count: int = 0
    mismatches: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def decoder_oracle_equivalence(params: "_gpc.GpcParams", trials: int,
                               seed: int,
                               max_weight: int | None = None) -> EquivalenceReport:
    """Randomized agreement check between decoders and the rank oracle.

    Each trial draws a random codeword and an erasure pattern
    (alternating between uniform patterns up to ``max_weight`` and
    patterns sampled inside the decodable budgets) and cross-checks:
    correctable patterns must be recovered exactly by the generic
    solver; profile-accepted patterns must also be recovered by the
    structured decoders; and whatever the iterative decoder fills in
    must match the codeword even when it stalls.
    """
    params.check()
    rng = random.Random(seed)
    report = EquivalenceReport(trials=trials, seed=seed)
    h = _gpc.full_parity_matrix(params)
    f = params.field
    m, n = params.m, params.n
    dim = params.dimension()
    if max_weight is None:
        max_weight = min(params.min_distance(), m * n)

    def flat(pattern):
        return [r * n + c for r, c in pattern]

    for trial in range(trials):
        data = [rng.randrange(1 << f.w) for _ in range(dim)]
        codeword = _gpc.encode(data, params)
        if trial % 2 == 0:
            pattern = _random_pattern(m, n, max_weight, rng)
        else:
            pattern = random_decodable_pattern(params, rng)
        erased = _gpc.erase_positions(codeword, pattern)
        tag = f"trial {trial} (seed {seed}, pattern {sorted(pattern)})"

        ok = correctable(flat(pattern), h)
        if ok:
            report.correctable_count += 1
            solved = _oracle_solve(erased, pattern, h, params)
            if solved != codeword.values:
                report.mismatches.append(f"{tag}: generic solve mismatch")

        profile = _gpc.ErasureProfile.from_array(erased)
        accepted = _gpc.decodable_profile(profile, params)
        if accepted:
            report.profile_accepted_count += 1
            if not ok:
                report.mismatches.append(
                    f"{tag}: profile accepted but oracle says uncorrectable")
            try:
                decoded = _gpc.decode_rows(erased, params)
            except _gpc.UncorrectableError:
                report.mismatches.append(f"{tag}: row decoder refused")
            else:
                if decoded != codeword:
                    report.mismatches.append(f"{tag}: row decoder mismatch")

        result = _gpc.decode_iterative(erased, params)
        for r in range(m):
            for c in range(n):
                if not result.erased[r][c] and \
                        result.values[r][c] != codeword.values[r][c]:
                    report.mismatches.append(
                        f"{tag}: iterative decoder wrote a wrong symbol")
                    break
        if not result.erasure_count and not ok:
            report.mismatches.append(
                f"{tag}: iterative decoder 'succeeded' on an ambiguous pattern")
    return report


def _oracle_solve(erased: "_gpc.SymbolArray", pattern: set[tuple[int, int]],
                  h: Matrix, params: "_gpc.GpcParams") -> list[list[int]]:
    n = params.n
    word = erased.flatten()
    cols = sorted(r * n + c for r, c in pattern)
    if not cols:
        return [row[:] for row in erased.values]
    f = params.field
    rhs = []
    erased_set = set(cols)
    for row in h.data:
        acc = 0
        for j, x in enumerate(row):
            if x and j not in erased_set and word[j]:
                acc ^= f.mul(x, word[j])
        rhs.append(acc)
    missing = solve(h.submatrix(cols=cols), rhs)
    for j, v in zip(cols, missing):
        word[j] = v
    return [word[i * n:(i + 1) * n] for i in range(params.m)]
