"""Eta quotients on the q^(1/24) grid.

eta(d*tau) expands as the sparse pentagonal series
sum_k (-1)^k q^(d*(6k+1)^2 / 24), so a quotient prod eta(d*tau)^e_d is a
short product of sparse series and Newton inversions.  The two named basis
functions of the decomposition machinery are

    g   = (eta(13t)/eta(t))^2      leading term q^1  (grid 24)
    phi = eta(169t)/eta(t)         leading term q^7  (grid 168)
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .rings import EXACT, Ring
from .series import QSeries, from_terms, mul, zero


@dataclass(frozen=True)
class EtaQuotientSpec:
    """Formal product prod eta(d*tau)^e over distinct scales d."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("eta quotient needs at least one factor")
        scales = [d for d, _ in self.factors]
        if len(set(scales)) != len(scales):
            raise ValueError("scales must be distinct")
        if any(d < 1 for d in scales):
            raise ValueError("scales must be positive")

    @property
    def leading_exponent(self) -> int:
        """Grid exponent of the leading term: sum(d*e)."""
        return sum(d * e for d, e in self.factors)

    @property
    def support_class(self) -> int:
        return self.leading_exponent % 24

    def __str__(self) -> str:
        num = [f"{d}^{e}" if e != 1 else str(d) for d, e in self.factors if e > 0]
        den = [f"{d}^{-e}" if e != -1 else str(d) for d, e in self.factors if e < 0]
        s = "*".join(num) if num else "1"
        if den:
            s += "/" + "/".join(den)
        return s


G_SPEC = EtaQuotientSpec(((13, 2), (1, -2)))
PHI_SPEC = EtaQuotientSpec(((169, 1), (1, -1)))

_FACTOR_RE = re.compile(r"^(\d+)(?:\^(-?\d+))?$")


def parse_eta_spec(text: str) -> EtaQuotientSpec:
    """Parse the CLI mini-syntax ``d1^e1/d2^e2*...``, e.g. ``13^2/1^2``.

    ``*`` joins factors, ``/`` negates the exponent of the factor after it.
    """
    tokens = re.split(r"([*/])", text.replace(" ", ""))
    if not tokens or not tokens[0]:
        raise ValueError(f"cannot parse eta quotient {text!r}")
    factors: list[tuple[int, int]] = []
    sign = 1
    for tok in tokens:
        if tok == "*":
            sign = 1
        elif tok == "/":
            sign = -1
        elif tok:
            m = _FACTOR_RE.match(tok)
            if not m:
                raise ValueError(f"bad eta factor {tok!r} in {text!r}")
            d = int(m.group(1))
            e = int(m.group(2)) if m.group(2) else 1
            factors.append((d, sign * e))
    merged: dict[int, int] = {}
    for d, e in factors:
        merged[d] = merged.get(d, 0) + e
    live = tuple((d, e) for d, e in merged.items() if e != 0)
    if not live:
        raise ValueError(f"eta quotient {text!r} cancels to 1")
    return EtaQuotientSpec(live)


def eta_series(d: int, prec: int, ring: Ring = EXACT) -> QSeries:
    """Pentagonal expansion of eta(d*tau) truncated at grid exponent prec."""
    if d < 1:
        raise ValueError("scale must be >= 1")
    terms: list[tuple[int, int]] = []
    kabs = 0
    while True:
        ks = [0] if kabs == 0 else [kabs, -kabs]
        alive = False
        for k in ks:
            n = d * (6 * k + 1) ** 2
            if n < prec:
                terms.append((n, 1 if k % 2 == 0 else -1))
                alive = True
        if not alive:
            break
        kabs += 1
    return from_terms(terms, prec, ring)


def eta_quotient(spec: EtaQuotientSpec, prec: int, ring: Ring = EXACT) -> QSeries:
    """Expand prod eta(d*tau)^e to grid precision ``prec``.

    Each factor eta(d)^e built from eta(d) at precision P carries P - d
    known coefficients past its leading term, and products keep the worst
    such headroom; building every eta to (prec - leading) + max(d) + 1
    therefore lands the quotient at horizon > prec.
    """
    rel = prec - spec.leading_exponent
    if rel <= 0:
        return zero(ring, prec)
    build_prec = rel + max(d for d, _ in spec.factors) + 1
    ordered = sorted(spec.factors, key=lambda de: de[1] < 0)
    result: QSeries | None = None
    for d, e in ordered:
        factor = eta_series(d, build_prec, ring).pow(e)
        result = factor if result is None else mul(result, factor)
    assert result is not None and result.prec > prec
    return result.truncate(prec)


def g_series(prec: int, ring: Ring = EXACT) -> QSeries:
    return eta_quotient(G_SPEC, prec, ring)


def phi_series(prec: int, ring: Ring = EXACT) -> QSeries:
    return eta_quotient(PHI_SPEC, prec, ring)
