"""Arithmetic in GF(2^w) with a selectable modulus polynomial.

Field elements are plain ints in ``[0, 2^w)``: bit ``i`` holds the
coefficient of ``x^i``, so an element is simultaneously a bit vector and
a GF(2) polynomial of degree below ``w``.  Modulus polynomials use the
same packing with one extra bit for the leading term (degree exactly
``w``).  Addition is XOR; multiplication reduces modulo the field
polynomial.

Every field carries a distinguished element ``alpha`` used as the
evaluation point generator for code constructions.  ``alpha`` defaults
to ``x`` (the int 2), which is a primitive element for every entry of
the built-in modulus table.  The all-ones moduli ``M_p(x) = 1 + x + ...
+ x^(p-1)`` give fields where ``x`` has small multiplicative order ``p``
even though the field itself is large; those are exposed through
:func:`mp_polynomial` and :meth:`GF.from_prime`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from sympy import factorint, isprime, nextprime

# One primitive polynomial per width.  Bit i = coefficient of x^i, so
# e.g. 0b1011 is x^3 + x + 1.  x (= the int 2) is primitive modulo each.
DEFAULT_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}

MAX_WIDTH = 63

# Widths up to this bound get exp/log tables at construction time.
_TABLE_WIDTH = 16


class PrimeSearchError(RuntimeError):
    """No prime with the requested property exists below the cap."""


def poly_degree(poly: int) -> int:
    """Degree of a nonzero GF(2) polynomial packed into an int."""
    if poly <= 0:
        raise ValueError("degree is only defined for nonzero polynomials")
    return poly.bit_length() - 1


def _poly_mulmod(a: int, b: int, mod: int) -> int:
    # Carry-less multiply followed by reduction.
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
    deg = mod.bit_length() - 1
    while acc.bit_length() > deg:
        acc ^= mod << (acc.bit_length() - 1 - deg)
    return acc


def _poly_gcd(a: int, b: int) -> int:
    while b:
        deg_b = b.bit_length()
        r = a
        while r.bit_length() >= deg_b:
            r ^= b << (r.bit_length() - deg_b)
        a, b = b, r
    return a


def is_irreducible(poly: int) -> bool:
    """Irreducibility of a GF(2) polynomial of degree >= 1.

    Uses the derivative-free finite field criterion: ``f`` of degree
    ``d`` is irreducible iff ``x^(2^d) == x (mod f)`` and for every
    prime ``r | d`` the polynomial ``x^(2^(d/r)) - x`` is coprime to
    ``f``.  Runs in polynomial time, so the all-ones moduli of degree
    up to 62 are no problem.
    """
    d = poly_degree(poly)
    if d == 1:
        return True
    if not poly & 1:
        return False  # divisible by x

    def x_to_power_of_two(e: int) -> int:
        # x^(2^e) mod poly by repeated squaring
        cur = 2
        for _ in range(e):
            cur = _poly_mulmod(cur, cur, poly)
        return cur

    if x_to_power_of_two(d) != 2:
        return False
    for r in factorint(d):
        if _poly_gcd(x_to_power_of_two(d // r) ^ 2, poly) != 1:
            return False
    return True


def mp_polynomial(p: int) -> int:
    """The all-ones polynomial 1 + x + ... + x^(p-1), packed as an int."""
    if p < 2:
        raise ValueError("need p >= 2")
    return (1 << p) - 1


def is_two_primitive(p: int) -> bool:
    """True iff 2 generates the multiplicative group modulo the odd prime p."""
    if not isprime(p) or p == 2:
        raise ValueError(f"{p} is not an odd prime")
    return all(pow(2, (p - 1) // q, p) != 1 for q in factorint(p - 1))


def find_construction_prime(min_size: int, cap: int = 64) -> int:
    """Smallest prime p > min_size such that 2 is primitive modulo p.

    For such p the all-ones modulus of degree p-1 is irreducible and x
    has multiplicative order exactly p in the quotient field, which is
    what the low-redundancy array constructions need.  The default cap
    keeps the resulting field width p-1 within the supported range.
    """
    p = nextprime(max(min_size, 1))
    while p <= cap:
        if p != 2 and is_two_primitive(p):
            return p
        p = nextprime(p)
    raise PrimeSearchError(
        f"no prime p with 2 primitive mod p in ({min_size}, {cap}]"
    )


class GF:
    """A finite field GF(2^w) together with an evaluation element alpha.

    Elements are ints.  Widths up to 16 get exp/log tables built from a
    primitive element found at construction time; larger widths fall
    back to shift-and-xor multiplication.
    """

    __slots__ = ("w", "modulus", "alpha", "order", "_exp", "_log",
                 "_alpha_order", "_order_factors")

    def __init__(self, w: int, modulus: int | None = None, alpha: int = 2):
        if not 1 <= w <= MAX_WIDTH:
            raise ValueError(f"width must be in [1, {MAX_WIDTH}], got {w}")
        if modulus is None:
            if w not in DEFAULT_MODULI:
                raise ValueError(f"no default modulus for width {w}; pass one")
            modulus = DEFAULT_MODULI[w]
        if poly_degree(modulus) != w:
            raise ValueError(
                f"modulus degree {poly_degree(modulus)} does not match width {w}"
            )
        if not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus:#x} is reducible")
        if alpha in (0, 1) or not 0 <= alpha < (1 << w):
            raise ValueError(f"alpha must lie in [2, 2^{w}), got {alpha}")
        self.w = w
        self.modulus = modulus
        self.alpha = alpha
        self.order = (1 << w) - 1  # size of the multiplicative group
        self._alpha_order: int | None = None
        self._order_factors: dict[int, int] | None = None
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if w <= _TABLE_WIDTH:
            self._build_tables()

    def _build_tables(self) -> None:
        n = self.order
        for g in range(2, n + 2):
            exp = [1] * (2 * n)
            log = [0] * (n + 1)
            val = 1
            ok = True
            for i in range(1, n):
                val = self._mul_raw(val, g)
                if val == 1:  # order of g divides i < n: not primitive
                    ok = False
                    break
                exp[i] = val
                log[val] = i
            if ok:
                for i in range(n, 2 * n):
                    exp[i] = exp[i - n]
                self._exp, self._log = exp, log
                return
        raise AssertionError("no primitive element found; modulus not irreducible?")

    def _mul_raw(self, a: int, b: int) -> int:
        acc = 0
        mod = self.modulus
        top = 1 << self.w
        while b:
            if b & 1:
                acc ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= mod
        return acc

    # -- arithmetic -------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    sub = add  # characteristic 2

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero in GF(2^w)")
        if self._exp is not None:
            return self._exp[self.order - self._log[a]]
        return self.pow(a, self.order - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """a raised to an arbitrary (possibly negative) integer power."""
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        if self._log is not None:
            idx = (self._log[a] * e) % self.order
            return self._exp[idx]
        if e < 0:
            return self.inv(self.pow(a, -e))
        acc = 1
        base = a
        while e:
            if e & 1:
                acc = self._mul_raw(acc, base)
            base = self._mul_raw(base, base)
            e >>= 1
        return acc

    def alpha_pow(self, e: int) -> int:
        return self.pow(self.alpha, e)

    def element_order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        if self._order_factors is None:
            self._order_factors = dict(factorint(self.order))
        n = self.order
        for q in self._order_factors:
            while n % q == 0 and self.pow(a, n // q) == 1:
                n //= q
        return n

    @property
    def alpha_order(self) -> int:
        if self._alpha_order is None:
            self._alpha_order = self.element_order(self.alpha)
        return self._alpha_order

    def elements(self) -> Iterator[int]:
        return iter(range(1 << self.w))

    # -- construction helpers ---------------------------------------

    @classmethod
    def from_prime(cls, p: int) -> "GF":
        """Field defined by the all-ones modulus of an odd prime p.

        2 must be primitive mod p (see :func:`is_two_primitive`); the
        resulting field has width p-1 and alpha = x of order exactly p.
        """
        if not is_two_primitive(p):
            raise ValueError(f"2 is not primitive modulo {p}")
        return cls(p - 1, mp_polynomial(p), alpha=2)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GF):
            return NotImplemented
        return (self.w, self.modulus, self.alpha) == (
            other.w, other.modulus, other.alpha)

    def __hash__(self) -> int:
        return hash((self.w, self.modulus, self.alpha))

    def __repr__(self) -> str:
        return f"GF(2^{self.w}, modulus={self.modulus:#x}, alpha={self.alpha})"


@lru_cache(maxsize=None)
def default_field(w: int) -> GF:
    """Shared GF(2^w) instance over the built-in modulus table."""
    return GF(w)


def field_with_order(min_order: int) -> GF:
    """Smallest table field whose alpha has order >= min_order."""
    for w in sorted(DEFAULT_MODULI):
        if w >= 2 and (1 << w) - 1 >= min_order:
            return default_field(w)
    raise ValueError(f"no table field with multiplicative order >= {min_order}")
