"""Tests for GF(2^w) arithmetic, modulus handling and prime search."""

import random

import pytest

from gpcodes.fields import (DEFAULT_MODULI, GF, PrimeSearchError,
                            default_field, field_with_order,
                            find_construction_prime, is_irreducible,
                            is_two_primitive, mp_polynomial, poly_degree)


def test_default_moduli_are_irreducible_of_right_degree():
    for w, mod in DEFAULT_MODULI.items():
        assert poly_degree(mod) == w
        assert is_irreducible(mod)


def test_gf8_known_table():
    # x^3 + x + 1 with alpha = x: successive powers 1,2,4,3,6,7,5.
    f = GF(3)
    powers = [f.alpha_pow(i) for i in range(7)]
    assert powers == [1, 2, 4, 3, 6, 7, 5]
    assert f.alpha_pow(7) == 1
    assert f.mul(5, 7) == 6          # alpha^6 * alpha^5 = alpha^11 = alpha^4
    assert f.mul(3, 3) == 5          # alpha^3 squared
    assert f.add(6, 7) == 1
    assert f.inv(2) == 5
    assert f.div(1, 3) == 6


@pytest.mark.parametrize("w", [2, 3, 4, 5, 6, 7, 8])
def test_inverses_exhaustive_small_widths(w):
    f = default_field(w)
    for a in range(1, 1 << w):
        inv = f.inv(a)
        assert f.mul(a, inv) == 1
        assert f.div(a, a) == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


@pytest.mark.parametrize("w", [4, 8, 13, 20, 45])
def test_field_axioms_random(w):
    """Associativity / commutativity / distributivity on random samples.

    Widths above 16 exercise the tableless multiply path.
    """
    mod = DEFAULT_MODULI.get(w)
    if mod is None:
        # no table entry: take the first odd irreducible of degree w
        mod = next(cand for cand in range((1 << w) + 3, (1 << (w + 1)), 2)
                   if is_irreducible(cand))
    f = GF(w, mod)
    rng = random.Random(w * 1000 + 7)
    top = 1 << w
    for _ in range(200):
        a, b, c = rng.randrange(top), rng.randrange(top), rng.randrange(top)
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.mul(a, 1) == a
        assert f.add(a, a) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1


def test_pow_negative_and_zero():
    f = default_field(5)
    a = 19
    assert f.pow(a, 0) == 1
    assert f.pow(0, 0) == 1
    assert f.pow(0, 5) == 0
    assert f.pow(a, -1) == f.inv(a)
    assert f.mul(f.pow(a, 7), f.pow(a, -7)) == 1
    # exponents reduce mod the group order
    assert f.pow(a, 31) == 1
    assert f.pow(a, 33) == f.mul(a, a)
    with pytest.raises(ZeroDivisionError):
        f.pow(0, -2)


def test_element_order_exhaustive_gf16():
    f = default_field(4)
    for a in range(1, 16):
        d = f.element_order(a)
        assert 15 % d == 0
        assert f.pow(a, d) == 1
        for q in (3, 5):
            if d % q == 0:
                assert f.pow(a, d // q) != 1
    assert f.alpha_order == 15


def test_alpha_validation():
    with pytest.raises(ValueError):
        GF(4, alpha=0)
    with pytest.raises(ValueError):
        GF(4, alpha=1)
    with pytest.raises(ValueError):
        GF(4, alpha=16)
    # width 1 leaves no admissible alpha at all
    with pytest.raises(ValueError):
        GF(1)


def test_modulus_validation():
    # 0b11111 is the all-ones degree-4 polynomial, irreducible since 2 is
    # primitive mod 5 -- it must be accepted even though x is not primitive.
    f = GF(4, modulus=0b11111)
    assert f.alpha_order == 5
    with pytest.raises(ValueError):
        GF(4, modulus=0b10101)       # (x^2+x+1)^2
    with pytest.raises(ValueError):
        GF(4, modulus=0b1011)        # degree 3 != 4
    with pytest.raises(ValueError):
        GF(17)                       # no default modulus for width 17


def test_two_primitive_known_values():
    yes = [3, 5, 11, 13, 19, 29, 37, 53, 59, 61]
    no = [7, 17, 23, 31, 41, 43, 47]
    for p in yes:
        assert is_two_primitive(p), p
    for p in no:
        assert not is_two_primitive(p), p
    with pytest.raises(ValueError):
        is_two_primitive(2)
    with pytest.raises(ValueError):
        is_two_primitive(15)


def test_all_ones_modulus_irreducible_iff_two_primitive():
    for p in [3, 5, 7, 11, 13, 17, 19, 23, 29]:
        assert is_irreducible(mp_polynomial(p)) == is_two_primitive(p)


def test_find_construction_prime_anchors():
    assert find_construction_prime(2) == 3
    assert find_construction_prime(9) == 11
    assert find_construction_prime(12) == 13
    # 2 has order 3 mod 7, so 7 is skipped
    assert find_construction_prime(5) == 11
    with pytest.raises(PrimeSearchError):
        find_construction_prime(61)   # next candidates 67, ... exceed cap 64


def test_from_prime_field_properties():
    f = GF.from_prime(11)
    assert f.w == 10
    assert f.modulus == (1 << 11) - 1
    assert f.alpha == 2
    assert f.alpha_order == 11
    assert f.pow(2, 11) == 1
    assert f.pow(2, 10) != 1
    g = GF.from_prime(13)
    assert g.w == 12 and g.alpha_order == 13
    with pytest.raises(ValueError):
        GF.from_prime(7)


def test_mp_polynomial_values():
    assert mp_polynomial(3) == 0b111
    assert mp_polynomial(5) == 0b11111
    with pytest.raises(ValueError):
        mp_polynomial(1)


def test_field_with_order():
    assert field_with_order(7).w == 3
    assert field_with_order(8).w == 4
    assert field_with_order(15).w == 4
    assert field_with_order(16).w == 5
    assert field_with_order(1 << 15).w == 16
    with pytest.raises(ValueError):
        field_with_order(1 << 17)


def test_default_field_is_shared():
    assert default_field(8) is default_field(8)
    assert default_field(8) == GF(8)
    assert hash(GF(8)) == hash(default_field(8))
    assert GF(8) != GF(8, alpha=3)
