"""Dense truncated Laurent series on the q^(1/24) exponent grid.

Exponents are integers in units of 1/24, so eta quotients and the partition
generating function live on one grid with integer indices.  A series stores
the coefficients for grid exponents ``min_exp <= n < prec``; everything
below ``min_exp`` is exactly zero and everything at or above ``prec`` is
unknown.  The optional ``support_class`` records a residue class c mod 24
such that all nonzero terms satisfy n = c (mod 24).

Series are immutable values: no operation mutates its inputs, and none of
the exposed results alias internal buffers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .multiply import mul_coeffs
from .rings import EXACT, NotInvertibleError, Ring


class PrecisionExceededError(LookupError):
    """A coefficient beyond the precision horizon was requested."""


class RingMismatchError(ValueError):
    """Operands live in different coefficient rings."""


def _infer_class(exps_with_nonzero: list[int]) -> int | None:
    classes = {e % 24 for e in exps_with_nonzero}
    if len(classes) == 1:
        return classes.pop()
    return None


@dataclass(frozen=True)
class QSeries:
    """Truncated series sum(coeffs[n - min_exp] * q^(n/24))."""

    ring: Ring
    min_exp: int
    prec: int
    coeffs: tuple[int, ...]
    support_class: int | None = None

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.prec - self.min_exp:
            raise ValueError("coeffs length must equal prec - min_exp")

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_exponent(self) -> int | None:
        """Grid exponent of the first nonzero term, or None for zero."""
        return None if self.is_zero else self.min_exp

    def coeff_at(self, n: int) -> int:
        if n >= self.prec:
            raise PrecisionExceededError(
                f"exponent {n} is at or beyond precision horizon {self.prec}"
            )
        if n < self.min_exp:
            return 0
        return self.coeffs[n - self.min_exp]

    def nonzero_terms(self) -> list[tuple[int, int]]:
        return [(self.min_exp + i, c) for i, c in enumerate(self.coeffs) if c]

    def dumps(self) -> str:
        """Debug dump: one line per term, ``n/24 <tab> coefficient``."""
        return "".join(f"{n}/24\t{c}\n" for n, c in self.nonzero_terms())

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        return linear_combine([(1, self), (1, other)])

    def __sub__(self, other: "QSeries") -> "QSeries":
        return linear_combine([(1, self), (-1, other)])

    def __neg__(self) -> "QSeries":
        return self.scale(-1)

    def __mul__(self, other: "QSeries") -> "QSeries":
        return mul(self, other)

    def scale(self, c: int) -> "QSeries":
        c = self.ring.reduce(c)
        if c == 0:
            return zero(self.ring, self.prec)
        return _build(
            self.ring,
            self.min_exp,
            self.prec,
            [self.ring.reduce(c * x) for x in self.coeffs],
            self.support_class,
        )

    def shift(self, d: int) -> "QSeries":
        """Multiply by the monomial q^(d/24)."""
        cls = None if self.support_class is None else (self.support_class + d) % 24
        return _build(self.ring, self.min_exp + d, self.prec + d, list(self.coeffs), cls)

    def truncate(self, prec: int) -> "QSeries":
        if prec > self.prec:
            raise PrecisionExceededError(f"cannot extend precision {self.prec} to {prec}")
        n = max(0, prec - self.min_exp)
        return _build(self.ring, self.min_exp, prec, list(self.coeffs[:n]), self.support_class)

    def dilate(self, p: int) -> "QSeries":
        """Substitute q^(1/24) -> q^(p/24): exponent n maps to p*n."""
        if p < 1:
            raise ValueError("dilation factor must be >= 1")
        if self.is_zero:
            return zero(self.ring, p * (self.prec - 1) + 1)
        new_prec = p * (self.prec - 1) + 1
        out = [0] * (new_prec - p * self.min_exp)
        for i, c in enumerate(self.coeffs):
            if c:
                out[p * i] = c
        cls = None if self.support_class is None else (self.support_class * p) % 24
        return _build(self.ring, p * self.min_exp, new_prec, out, cls)

    def invert(self) -> "QSeries":
        """Multiplicative inverse by Newton iteration (precision doubling).

        Needs a unit leading coefficient.  The inverse of c*q^m*(1 + ...)
        starts at q^-m and keeps the same number of known coefficients.
        """
        if self.is_zero:
            raise NotInvertibleError("cannot invert the zero series")
        c0 = self.coeffs[0]
        if not self.ring.is_unit(c0):
            raise NotInvertibleError(f"leading coefficient {c0} is not a unit in {self.ring}")
        n = len(self.coeffs)
        f = list(self.coeffs)
        u = [self.ring.inv(c0)]
        length = 1
        while length < n:
            length = min(2 * length, n)
            e = mul_coeffs(f[:length], u, length, self.ring)
            # u <- u * (2 - f*u) to double the matched length
            two_minus = [self.ring.reduce(-x) for x in e]
            two_minus[0] = self.ring.reduce(2 - e[0])
            u = mul_coeffs(u, two_minus, length, self.ring)
        cls = None if self.support_class is None else (-self.support_class) % 24
        return _build(self.ring, -self.min_exp, -self.min_exp + n, u, cls)

    def pow(self, k: int) -> "QSeries":
        """Binary powering with truncation at every step; pow(f, 0) = 1."""
        if k == 0:
            rel = max(1, self.prec - self.min_exp)
            return one(self.ring, rel)
        if k < 0:
            return self.invert().pow(-k)
        result = None
        base = self
        e = k
        while e:
            if e & 1:
                result = base if result is None else mul(result, base)
            e >>= 1
            if e:
                base = mul(base, base)
        return result

    def equal_to_prec(self, other: "QSeries", prec: int | None = None) -> bool:
        """Coefficientwise equality up to the shared (or given) horizon."""
        if self.ring != other.ring:
            return False
        horizon = min(self.prec, other.prec)
        if prec is not None:
            horizon = min(horizon, prec)
        lo = min(self.min_exp, other.min_exp)
        for n in range(lo, horizon):
            if self.coeff_at(n) != other.coeff_at(n):
                return False
        return True


def _build(
    ring: Ring,
    min_exp: int,
    prec: int,
    coeffs: list[int],
    support_class: int | None = None,
) -> QSeries:
    """Normalize: reduce into the ring and strip leading zeros."""
    coeffs = [ring.reduce(c) for c in coeffs]
    i = 0
    while i < len(coeffs) and coeffs[i] == 0:
        i += 1
    if i == len(coeffs):
        return QSeries(ring, prec, prec, (), None)
    return QSeries(ring, min_exp + i, prec, tuple(coeffs[i:]), support_class)


def zero(ring: Ring, prec: int) -> QSeries:
    """The canonical zero series with a recorded horizon."""
    return QSeries(ring, prec, prec, (), None)


def one(ring: Ring, prec: int) -> QSeries:
    if prec < 1:
        raise ValueError("prec must be >= 1 for the unit series")
    return _build(ring, 0, prec, [1] + [0] * (prec - 1), 0)


def monomial(ring: Ring, n: int, prec: int, c: int = 1) -> QSeries:
    return from_terms([(n, c)], prec, ring)


def from_terms(
    terms: list[tuple[int, int]], prec: int, ring: Ring = EXACT
) -> QSeries:
    """Series with exactly the given (grid exponent, coefficient) terms."""
    seen = set()
    for n, _ in terms:
        if n in seen:
            raise ValueError(f"duplicate exponent {n}")
        if n >= prec:
            raise ValueError(f"exponent {n} not below precision {prec}")
        seen.add(n)
    live = [(n, ring.reduce(c)) for n, c in terms]
    live = [(n, c) for n, c in live if c != 0]
    if not live:
        return zero(ring, prec)
    lo = min(n for n, _ in live)
    coeffs = [0] * (prec - lo)
    for n, c in live:
        coeffs[n - lo] = c
    return _build(ring, lo, prec, coeffs, _infer_class([n for n, _ in live]))


def linear_combine(parts: list[tuple[int, QSeries]]) -> QSeries:
    """Sum of c_i * f_i; precision is the worst precision among the parts."""
    if not parts:
        raise ValueError("linear_combine needs at least one part")
    ring = parts[0][1].ring
    for _, f in parts:
        if f.ring != ring:
            raise RingMismatchError(f"mixed rings {ring} and {f.ring}")
    prec = min(f.prec for _, f in parts)
    live = [(c, f) for c, f in parts if not f.is_zero and ring.reduce(c) != 0]
    if not live:
        return zero(ring, prec)
    lo = min(f.min_exp for _, f in live)
    acc = [0] * max(0, prec - lo)
    for c, f in live:
        base = f.min_exp - lo
        stop = min(len(f.coeffs), prec - f.min_exp)
        for i in range(stop):
            x = f.coeffs[i]
            if x:
                acc[base + i] += c * x
    classes = {f.support_class for _, f in live}
    cls = classes.pop() if len(classes) == 1 else None
    return _build(ring, lo, prec, acc, cls)


def mul(f: QSeries, g: QSeries, kernel: str = "auto") -> QSeries:
    """Truncated product; precision follows the pessimistic min formula."""
    if f.ring != g.ring:
        raise RingMismatchError(f"mixed rings {f.ring} and {g.ring}")
    prec = min(f.prec + g.min_exp, g.prec + f.min_exp)
    if f.is_zero or g.is_zero:
        return zero(f.ring, prec)
    lo = f.min_exp + g.min_exp
    nout = max(0, prec - lo)
    if nout == 0:
        return zero(f.ring, prec)
    coeffs = mul_coeffs(list(f.coeffs), list(g.coeffs), nout, f.ring, kernel)
    if f.support_class is not None and g.support_class is not None:
        cls = (f.support_class + g.support_class) % 24
    else:
        cls = None
    return _build(f.ring, lo, prec, coeffs, cls)
