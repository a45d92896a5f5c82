"""Coefficient rings: exact integers and residues modulo 13^K.

Every series coefficient in this package is a plain Python ``int``.  A
:class:`Ring` value says how to interpret it: either as an exact integer or
as the canonical representative of a residue class mod ``13**K``.  All
derived data (valuations, inverses, Jacobi symbols) lives here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import gmpy2

P13 = 13

# 13^K fits a signed 64-bit word for K <= 17; larger K falls back to
# arbitrary-precision representatives transparently.
MACHINE_WORD_MAX_K = 17


class NotInvertibleError(ArithmeticError):
    """Raised when an inverse is requested for a multiple of 13."""


@dataclass(frozen=True)
class Ring:
    """Coefficient domain: ``kind`` is ``"exact"`` or ``"residue"``.

    For the residue kind, elements are kept reduced to ``[0, 13**K)``.
    """

    kind: str
    K: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("exact", "residue"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "residue" and self.K < 1:
            raise ValueError("residue ring needs K >= 1")
        if self.kind == "exact" and self.K != 0:
            raise ValueError("exact ring carries no K")

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def modulus(self) -> int | None:
        return None if self.is_exact else P13**self.K

    def reduce(self, x: int) -> int:
        if self.is_exact:
            return x
        return x % (P13**self.K)

    def neg(self, x: int) -> int:
        if self.is_exact:
            return -x
        return (-x) % (P13**self.K)

    def is_unit(self, x: int) -> bool:
        if self.is_exact:
            return x in (1, -1)
        return x % P13 != 0

    def inv(self, x: int) -> int:
        """Multiplicative inverse of x in the ring."""
        if self.is_exact:
            if x in (1, -1):
                return x
            raise NotInvertibleError(f"{x} is not a unit in Z")
        if x % P13 == 0:
            raise NotInvertibleError(f"{x} is divisible by 13")
        return pow(x, -1, P13**self.K)

    def __str__(self) -> str:
        return "Z" if self.is_exact else f"Z/13^{self.K}"


EXACT = Ring("exact")


@lru_cache(maxsize=None)
def residue_ring(K: int) -> Ring:
    return Ring("residue", K)


@dataclass(frozen=True)
class Valuation:
    """13-adic valuation: a known value, a lower bound, or infinity.

    ``at_least(K)`` is what a zero residue mod 13^K reports: the true
    valuation is >= K but unknowable inside the ring.  Exact zero reports
    infinity.
    """

    kind: str  # "finite" | "at-least" | "infinity"
    value: int = 0

    @staticmethod
    def finite(v: int) -> "Valuation":
        return Valuation("finite", v)

    @staticmethod
    def at_least(K: int) -> "Valuation":
        return Valuation("at-least", K)

    @staticmethod
    def infinity() -> "Valuation":
        return Valuation("infinity")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def satisfies(self, bound: int) -> bool:
        """True if this valuation certifies ``pi >= bound``.

        An at-least(K) reading counts as satisfying any bound <= K; it
        cannot certify more.
        """
        if self.kind == "infinity":
            return True
        if self.kind == "finite":
            return self.value >= bound
        return bound <= self.value

    def __str__(self) -> str:
        if self.kind == "finite":
            return str(self.value)
        if self.kind == "at-least":
            return f">={self.value}"
        return "inf"


def val13(a: int, ring: Ring = EXACT) -> Valuation:
    """13-adic valuation of ``a`` as an element of ``ring``."""
    if ring.is_exact:
        if a == 0:
            return Valuation.infinity()
        _, v = gmpy2.remove(gmpy2.mpz(a), P13)
        return Valuation.finite(int(v))
    r = ring.reduce(a)
    if r == 0:
        return Valuation.at_least(ring.K)
    _, v = gmpy2.remove(gmpy2.mpz(r), P13)
    return Valuation.finite(int(v))


def jacobi(a: int, m: int) -> int:
    """Jacobi symbol (a/m) for odd positive m, extended to negative a.

    The extension is (-1/m) = (-1)^((m-1)/2) taken multiplicatively, which
    coincides with reducing a into [0, m) first.
    """
    if m <= 0 or m % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive m, got {m}")
    if m == 1:
        return 1
    a %= m
    if a == 0:
        return 0
    acc = 1
    while True:
        a %= m
        if a == 0:
            return 0
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                acc = -acc
        if a == 1:
            return acc
        if a % 4 == 3 and m % 4 == 3:
            acc = -acc
        a, m = m, a


def inv_mod(a: int, K: int) -> int:
    """Inverse of a modulo 13^K; raises NotInvertibleError if 13 | a."""
    if K < 1:
        raise ValueError("K must be >= 1")
    if a % P13 == 0:
        raise NotInvertibleError(f"{a} is divisible by 13")
    return pow(a, -1, P13**K)


def is_prime(n: int) -> bool:
    return bool(gmpy2.is_prime(n))
