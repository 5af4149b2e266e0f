"""Tests for the rank oracle, distance search and equivalence harness."""

import random
from itertools import combinations

import pytest

from gpcodes.epc import build_h2
from gpcodes.fields import default_field
from gpcodes.gpc import ErasureProfile, GpcParams, decodable_profile, \
    full_parity_matrix
from gpcodes.linalg import Matrix, null_space
from gpcodes.oracle import (DistanceCapError, SearchBudgetError,
                            brute_min_distance, correctable,
                            decoder_oracle_equivalence,
                            random_decodable_pattern, search_cost)

F8 = default_field(3)
F16 = default_field(4)

FLAGSHIP = GpcParams(m=6, n=7, k=4, s=(2, 1, 3), u=(1, 3, 4), field=F8)
PLUS_ONE = GpcParams(m=4, n=5, k=3, s=(2, 2), u=(1, 2), field=F8)


def test_correctable_basics():
    h = Matrix(F16, [[1, 0, 2], [0, 1, 3]])
    assert correctable([], h)
    assert correctable([0], h)
    assert correctable([0, 1], h)
    assert not correctable([0, 1, 2], h)   # 3 columns, rank 2
    assert correctable([2, 2], h)          # duplicates collapse
    with pytest.raises(ValueError):
        correctable([3], h)
    with pytest.raises(ValueError):
        correctable([-1], h)


def test_correctable_matches_decoding_limit():
    # for the two-global code: every 7-subset works, some 8-subsets don't
    code = build_h2(3, 3)
    h = code.check_matrix
    assert all(correctable(c, h) for c in combinations(range(9), 7))
    assert not correctable(range(8), h)


def test_search_cost():
    assert search_cost(9, 2) == 9 + 36
    assert search_cost(9, 9) == 2 ** 9 - 1      # every nonempty subset
    assert search_cost(9, 12) == search_cost(9, 9)
    assert search_cost(24, 23) > 10_000_000     # why the guard sums sizes


def test_brute_min_distance_vs_nullspace_enumeration():
    """Independent check: enumerate the whole codeword space of a small
    code and take the true minimum weight."""
    code = build_h2(3, 3)
    h = code.check_matrix
    basis = null_space(h)
    assert len(basis) == 2
    f = code.field
    best = None
    for a in range(16):
        for b in range(16):
            if a == 0 and b == 0:
                continue
            word = [f.mul(a, x) ^ f.mul(b, y) for x, y in zip(*basis)]
            weight = sum(1 for v in word if v)
            best = weight if best is None else min(best, weight)
    assert best == 8
    report = brute_min_distance(h, cap=8)
    assert report.distance == 8
    assert report.subsets_examined > 0
    # the witness is a dependent column set of exactly minimum size
    assert len(report.witness) == 8
    assert not correctable(report.witness, h)
    assert all(correctable(c, h)
               for c in combinations(report.witness, 7))


def test_brute_min_distance_on_gpc():
    h = full_parity_matrix(PLUS_ONE)
    report = brute_min_distance(h, cap=6)
    assert report.distance == 6 == PLUS_ONE.min_distance()
    assert not correctable(report.witness, h)


def test_brute_min_distance_witness_is_colex_least():
    # two parity symbols, second one involving only the first 3 positions
    h = Matrix(F8, [[1, 1, 1, 0, 0], [0, 1, 1, 1, 1]])
    report = brute_min_distance(h, cap=5)
    # minimum distance 2: columns {1, 2} are the earliest dependent pair
    assert report.distance == 2
    assert report.witness == (1, 2)


def test_brute_min_distance_cap_and_budget():
    h = full_parity_matrix(PLUS_ONE)
    with pytest.raises(DistanceCapError):
        brute_min_distance(h, cap=5)
    with pytest.raises(SearchBudgetError):
        brute_min_distance(h, cap=6, budget=100)
    with pytest.raises(ValueError):
        brute_min_distance(h, cap=0)
    # identity check matrix: the code is {0}, nothing dependent ever
    with pytest.raises(DistanceCapError):
        brute_min_distance(Matrix.identity(F8, 4), cap=4)
    # all-zero checks: every single column is already dependent
    report = brute_min_distance(Matrix.zeros(F8, 2, 5), cap=3)
    assert report.distance == 1 and report.witness == (0,)


def test_random_decodable_pattern_is_decodable():
    rng = random.Random(83)
    for p in (FLAGSHIP, PLUS_ONE):
        for _ in range(200):
            pattern = random_decodable_pattern(p, rng)
            counts = [0] * p.m
            for r, _ in pattern:
                counts[r] += 1
            assert decodable_profile(ErasureProfile.from_counts(counts), p)


def test_equivalence_flagship():
    report = decoder_oracle_equivalence(FLAGSHIP, trials=40, seed=2024)
    assert report.ok, report.mismatches[:3]
    assert report.trials == 40
    assert 0 < report.profile_accepted_count <= report.correctable_count


def test_equivalence_with_heavy_patterns():
    """Widening the pattern weight past the distance exercises the
    uncorrectable branches as well."""
    report = decoder_oracle_equivalence(PLUS_ONE, trials=80, seed=7,
                                        max_weight=PLUS_ONE.min_distance() + 5)
    assert report.ok, report.mismatches[:3]
    # with weight up to 11 on a distance-6 code, some patterns must fail
    assert report.correctable_count < report.trials


def test_equivalence_on_single_level_code():
    p = GpcParams(m=4, n=5, k=3, s=(4,), u=(2,), field=F8)
    report = decoder_oracle_equivalence(p, trials=40, seed=99,
                                        max_weight=9)
    assert report.ok, report.mismatches[:3]
