"""The Atkin U_p operator and the normalized half-integral-weight Hecke
operator p^3 * T_{p^2} on grid series.

On the q^(1/24) grid, U_p is coefficient extraction a(n) -> a(p*n).  The
normalized Hecke operator acts on a series supported on the class
n = rclass (mod 24), gcd(rclass, 6) = 1, as

    b(n) = p^3 a(p^2 n) + (-1/p)^((r-1)/2) (12n/p) psi(p) p a(n) + a(n/p^2)

with psi the character mod 13 attached to the carrier space.  For the
class-11 carriers (eta(13t)^odd / eta(t)^even quotients) psi(p) = (p/13);
for the class-23 carriers psi is trivial.  Tying psi to the support class
is what makes U_13 and the normalized T_{p^2} commute, and the operator
tests pin both parities against partition-table combinations computed
independently.  Everything is multiplied through by p^3 so the arithmetic
never leaves the ring.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import is_prime, jacobi
from .series import QSeries, _build, zero


def psi_for_class(rclass: int, p: int) -> int:
    """Character value psi(p) for the carrier with support class rclass."""
    if rclass % 24 == 11:
        return jacobi(p, 13)
    if rclass % 24 == 23:
        return 1
    raise ValueError(f"no carrier character known for class {rclass} mod 24")


@dataclass(frozen=True)
class HeckeParams:
    """Parameters of the normalized operator p^3 * T_{p^2}.

    ``weight_lambda`` is fixed at -1 (weight -1/2); the generic operator is
    deliberately not exposed.
    """

    p: int
    rclass: int
    weight_lambda: int = -1

    def __post_init__(self) -> None:
        if self.p in (2, 3, 13) or not is_prime(self.p):
            raise ValueError(f"p must be a prime >= 5, != 13; got {self.p}")
        if self.rclass % 2 == 0 or self.rclass % 3 == 0:
            raise ValueError(f"rclass must be coprime to 6; got {self.rclass}")
        if self.weight_lambda != -1:
            raise ValueError("only weight lambda = -1 is supported")

    @property
    def sign_factor(self) -> int:
        """(-1/p)^((r-1)/2)."""
        if ((self.rclass - 1) // 2) % 2 == 0:
            return 1
        return jacobi(-1, self.p)

    @property
    def psi_p(self) -> int:
        return psi_for_class(self.rclass, self.p)


def u_op(f: QSeries, p: int) -> QSeries:
    """Atkin U_p on the grid: output coefficient at n is a(p*n)."""
    if p < 2:
        raise ValueError("p must be >= 2")
    min_out = -((-f.min_exp) // p)  # ceil division
    prec_out = -((-f.prec) // p)
    if f.is_zero:
        return zero(f.ring, prec_out)
    n_out = prec_out - min_out
    coeffs = [0] * n_out
    for i in range(n_out):
        n = (min_out + i) * p
        if f.min_exp <= n < f.prec:
            coeffs[i] = f.coeffs[n - f.min_exp]
    cls = None
    if f.support_class is not None:
        try:
            cls = (f.support_class * pow(p, -1, 24)) % 24
        except ValueError:
            cls = None
    return _build(f.ring, min_out, prec_out, coeffs, cls)


def hecke_tp2_norm(f: QSeries, params: HeckeParams) -> QSeries:
    """Normalized Hecke operator p^3 * T_{p^2} on a class-consistent series.

    Grid lookups a(x) are zero for x below the support and for x off the
    grid (n/p^2 non-integral), mirroring the convention P(N) = 0 off the
    arithmetic progression.
    """
    p = params.p
    if f.support_class is not None and f.support_class != params.rclass % 24:
        raise ValueError(
            f"series class {f.support_class} does not match rclass {params.rclass}"
        )
    p2 = p * p
    prec_out = -((-f.prec) // p2)
    if f.is_zero:
        return zero(f.ring, prec_out)
    # The three taps read a(p^2 n), a(n) and a(n/p^2); the lowest exponent
    # that can produce output is the min over their preimages of min_exp.
    min_out = min(-((-f.min_exp) // p2), f.min_exp, p2 * f.min_exp)
    n_out = prec_out - min_out
    if n_out <= 0:
        return zero(f.ring, prec_out)
    ring = f.ring
    sign = params.sign_factor
    psi_p = params.psi_p
    p3 = p2 * p
    rc = params.rclass % 24
    coeffs = [0] * n_out
    start = min_out + ((rc - min_out) % 24)
    for n in range(start, prec_out, 24):
        acc = 0
        hi = n * p2
        if hi < f.prec:
            c = f.coeff_at(hi)
            if c:
                acc += p3 * c
        c = f.coeff_at(n) if n < f.prec else 0
        if c:
            acc += sign * jacobi(12 * n, p) * psi_p * p * c
        if n % p2 == 0:
            c = f.coeff_at(n // p2)
            if c:
                acc += c
        if acc:
            coeffs[n - min_out] = ring.reduce(acc)
    return _build(ring, min_out, prec_out, coeffs, rc)


def precision_plan(pipeline: list[tuple], target_prec: int) -> int:
    """Minimal input precision so the pipeline's output reaches target_prec.

    Steps are tuples: ("U", p), ("T", p), ("MUL", partner_min_exp),
    ("POW", k, own_min_exp).  U multiplies the requirement by p, T by p^2;
    MUL and POW invert the product precision formula assuming the partner
    is built at least as far as needed.
    """
    req = target_prec
    for step in reversed(pipeline):
        kind = step[0]
        if kind == "U":
            req *= step[1]
        elif kind == "T":
            req *= step[1] * step[1]
        elif kind == "MUL":
            req -= step[1]
        elif kind == "POW":
            k, min_exp = step[1], step[2]
            if k < 1:
                raise ValueError("POW planning needs k >= 1")
            req -= (k - 1) * min_exp
        else:
            raise ValueError(f"unknown pipeline step {step!r}")
    return req
