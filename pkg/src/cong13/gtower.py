"""Laurent decomposition in g and the coefficient towers.

Every modular function handled here vanishes or blows up at i-infinity in a
way controlled by powers of g = (eta(13t)/eta(t))^2, which is monic with
integer leading exponent j for every j in Z.  Greedy elimination against
the g-powers therefore turns a class-0 grid series into a finite Laurent
polynomial in g, with the residual checked to be zero over a margin window
past the last eliminated exponent.

On top of the decomposition sit:

* the c/d matrices:  g^k|U13 = sum_r c_{k,r} g^r  and
  (phi g^k)|U13 = sum_r d_{k,r} g^r,
* the h rows:  omega_r|T~_{p^2} = sum_i h~_{r,i} omega_i  for r = 1..7,
  computed by dividing out omega_1 (omega_i = omega_1 * g^(i-1)),
* the L/H towers:  matrix recurrences producing k_{a,r}, l_{a,r}, u_{a,r},
  v_{a,r} mod 13^K, with a tail guard certifying that truncating the index
  range at rmax discards only terms that are zero in the ring,
* Newman's pole-order data for eta-quotient pairs.

The u/v towers carry the p^3-normalized operator throughout; 13-adic
valuations are unaffected since gcd(p, 13) = 1.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from .eta import EtaQuotientSpec, eta_quotient, g_series, phi_series
from .hecke import HeckeParams, hecke_tp2_norm, u_op
from .rings import EXACT, Ring, Valuation, is_prime, residue_ring, val13
from .series import PrecisionExceededError, QSeries, mul

DEFAULT_MARGIN = 2.0
MIN_WINDOW = 12


class NotRepresentableError(ValueError):
    """The series is not a Laurent polynomial in g to its horizon."""

    def __init__(self, msg: str, failing_exponent: int | None = None):
        super().__init__(msg)
        self.failing_exponent = failing_exponent


@dataclass(frozen=True)
class GLaurent:
    """Laurent polynomial sum coeffs[j - jmin] * g^j, trimmed at both ends."""

    ring: Ring
    jmin: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.coeffs and (self.coeffs[0] == 0 or self.coeffs[-1] == 0):
            raise ValueError("GLaurent must be trimmed")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int | None:
        return None if self.is_zero else self.jmin + len(self.coeffs) - 1

    def __getitem__(self, j: int) -> int:
        if self.is_zero or j < self.jmin or j > self.degree:
            return 0
        return self.coeffs[j - self.jmin]

    def items(self) -> list[tuple[int, int]]:
        return [(self.jmin + i, c) for i, c in enumerate(self.coeffs) if c]

    def shifted(self, d: int) -> "GLaurent":
        return GLaurent(self.ring, self.jmin + d, self.coeffs)

    def val13_at(self, j: int) -> Valuation:
        return val13(self[j], self.ring)


def glaurent_from_dict(ring: Ring, entries: dict[int, int]) -> GLaurent:
    live = {j: ring.reduce(c) for j, c in entries.items()}
    live = {j: c for j, c in live.items() if c != 0}
    if not live:
        return GLaurent(ring, 0, ())
    lo, hi = min(live), max(live)
    return GLaurent(ring, lo, tuple(live.get(j, 0) for j in range(lo, hi + 1)))


# ---------------------------------------------------------------------------
# g-power cache on the integer-exponent lattice


class GPowerCache:
    """Powers g^j compressed to integer exponents, shared per (ring, e_hi).

    Entry j is a pair (lead, rel) meaning sum rel[i] * q^(lead + i) with
    integer exponents, correct for all exponents < e_hi.
    """

    def __init__(self, ring: Ring, e_hi: int):
        self.ring = ring
        self.e_hi = e_hi
        g = g_series(24 * (e_hi + 2) + 1, ring)
        self._g = _compress_integer_exponents(g, e_hi + 2)
        self._pows: dict[int, tuple[int, list[int]]] = {
            0: (0, [1] + [0] * (e_hi - 1)),
            1: (1, list(self._g[1][: e_hi - 1])),
        }

    def _conv(self, a: tuple[int, list[int]], b: tuple[int, list[int]], hi: int):
        from .multiply import mul_coeffs

        lead = a[0] + b[0]
        nout = max(0, hi - lead)
        return (lead, mul_coeffs(a[1], b[1], nout, self.ring))

    def power(self, j: int) -> tuple[int, list[int]]:
        if j in self._pows:
            return self._pows[j]
        if j > 0:
            cur = self._conv(self.power(j - 1), (1, self._g[1]), self.e_hi)
        else:
            # Negative powers are rare (pole diagnostics); build each one
            # with enough grid headroom to stay exact up to e_hi.
            prec = 24 * (self.e_hi + abs(j) + 2) + 1
            series = g_series(prec, self.ring).invert().pow(abs(j))
            cur = _compress_integer_exponents(series, self.e_hi)
        self._pows[j] = cur
        return cur


def _compress_integer_exponents(f: QSeries, e_hi: int) -> tuple[int, list[int]]:
    """Extract coefficients at grid exponents 24e for e < e_hi.

    Raises NotRepresentableError if f has a nonzero term off the 24Z grid.
    """
    for n, c in f.nonzero_terms():
        if n % 24 != 0:
            raise NotRepresentableError(
                f"nonzero coefficient at grid exponent {n}, not a multiple of 24",
                failing_exponent=n,
            )
    if f.is_zero:
        return (0, [])
    lead = f.min_exp // 24 if f.min_exp % 24 == 0 else f.min_exp // 24 + 1
    avail = (f.prec - 1) // 24 + 1
    out = [0] * max(0, min(e_hi, avail) - lead)
    for i in range(len(out)):
        n = 24 * (lead + i)
        if n >= f.min_exp:
            out[i] = f.coeffs[n - f.min_exp]
    return (lead, out)


def integer_horizon(f: QSeries) -> int:
    """Largest e_hi such that all integer exponents e < e_hi are known."""
    return (f.prec - 1) // 24 + 1


# ---------------------------------------------------------------------------
# greedy decomposition


def decompose_in_g(
    f: QSeries,
    jmin_hint: int = 0,
    max_degree: int | None = None,
    margin: float = DEFAULT_MARGIN,
    min_window: int = MIN_WINDOW,
    cache: GPowerCache | None = None,
) -> GLaurent:
    """Write a class-0 series as a finite Laurent polynomial in g.

    Eliminates exponents bottom-up against the monic powers g^j, keeping a
    verification window of at least max(min_window, margin * span) integer
    exponents past the detected degree.  A nonzero residual in the window
    raises NotRepresentableError; too small a window raises
    PrecisionExceededError.
    """
    e_hi = integer_horizon(f)
    lead, vals = _compress_integer_exponents(f, e_hi)
    if not vals or not any(vals):
        return GLaurent(f.ring, 0, ())
    while vals and vals[0] == 0:
        lead += 1
        vals.pop(0)
    if lead < jmin_hint:
        raise NotRepresentableError(
            f"leading g-power {lead} below promised minimum {jmin_hint}",
            failing_exponent=24 * lead,
        )
    if cache is None:
        cache = GPowerCache(f.ring, e_hi)
    elif cache.e_hi < e_hi:
        e_hi = cache.e_hi
        vals = vals[: max(0, e_hi - lead)]

    cap = e_hi - 1 - min_window
    if max_degree is not None:
        cap = min(cap, max_degree)
    if cap < lead:
        raise PrecisionExceededError(
            f"horizon {e_hi} leaves no room to eliminate from g^{lead}"
        )

    ring = f.ring
    coeffs: dict[int, int] = {}
    for e in range(lead, cap + 1):
        idx = e - lead
        if idx >= len(vals):
            break
        c = vals[idx]
        if c == 0:
            continue
        coeffs[e] = c
        plead, prel = cache.power(e)
        assert plead == e
        for i, pc in enumerate(prel):
            if pc and idx + i < len(vals):
                vals[idx + i] = ring.reduce(vals[idx + i] - c * pc)

    for i, v in enumerate(vals):
        if v != 0:
            e_bad = lead + i
            raise NotRepresentableError(
                f"residual nonzero at integer exponent {e_bad} (grid {24 * e_bad})",
                failing_exponent=24 * e_bad,
            )

    result = glaurent_from_dict(ring, coeffs)
    if not result.is_zero:
        span = result.degree - result.jmin + 1
        window_have = (e_hi - 1) - result.degree
        window_need = max(min_window, int(margin * span + 0.999))
        if window_have < window_need:
            raise PrecisionExceededError(
                f"verification window {window_have} below required {window_need} "
                f"(degree {result.degree}, horizon {e_hi})"
            )
    return result


def reconstruct_in_g(lau: GLaurent, prec: int) -> QSeries:
    """Series sum coeffs[j] g^j to grid precision prec (exactness checks)."""
    from .series import linear_combine, zero

    if lau.is_zero:
        return zero(lau.ring, prec)
    build = prec + 24 * max(0, -lau.jmin) + 25
    parts = []
    g = g_series(build, lau.ring)
    for j, c in lau.items():
        parts.append((c, g.pow(j)))
    out = linear_combine(parts)
    return out.truncate(min(out.prec, prec))


# ---------------------------------------------------------------------------
# Newman pole data


@dataclass(frozen=True)
class NewmanData:
    """Pole-order bounds for T_{p^2}(B)/B with B = eta(t)^r eta(lt)^s."""

    r: int
    s: int
    l: int
    p: int
    delta: int
    delta_star: int
    bound_inf: int
    bound_zero: int


def newman_bounds(r: int, s: int, l: int, p: int) -> NewmanData:
    if not (is_prime(l) and is_prime(p)) or l == p or p < 5:
        raise ValueError("need distinct primes l and p with p >= 5")
    if (r + s) % 2 == 0:
        raise ValueError("r and s must have opposite parity")
    num = (r + l * s) * (p * p - 1)
    num_star = (s + l * r) * (p * p - 1)
    if num % 24 or num_star % 24:
        raise ValueError("Delta values are not integral for these parameters")
    delta = num // 24
    delta_star = num_star // 24
    bound_inf = delta // (p * p) if delta >= 0 else -delta
    bound_zero = delta_star // (p * p) if delta_star >= 0 else -delta_star
    return NewmanData(r, s, l, p, delta, delta_star, bound_inf, bound_zero)


def newman_for_omega(r: int, p: int) -> NewmanData:
    """Newman data for omega_r = eta(13t)^(2r-1) / eta(t)^(2r)."""
    return newman_bounds(-2 * r, 2 * r - 1, 13, p)


# ---------------------------------------------------------------------------
# c/d matrices


@dataclass
class CDData:
    modexp: int
    kmax: int
    prec_used: int
    c: dict[int, GLaurent]  # rows 1..kmax
    d: dict[int, GLaurent]  # rows 0..kmax; row 0 is phi|U13 itself

    def entry(self, which: str, k: int, r: int) -> int:
        row = (self.c if which == "c" else self.d).get(k)
        return 0 if row is None else row[r]


def _cd_horizon(kmax: int, modexp: int) -> int:
    # Entries c_{k,r} with floor((13r - k - 1)/14) >= modexp vanish in the
    # ring, so detection stops near r* = (14*modexp + kmax + 1)/13; the
    # horizon leaves a 2x margin window past that.
    dmax = (14 * modexp + kmax + 1) // 13 + 3
    return 3 * dmax + 25


def cd_matrices(kmax: int, modexp: int, prec: int | None = None) -> CDData:
    """Rows g^k|U13 (c) and (phi g^k)|U13 (d) decomposed in g, mod 13^modexp."""
    ring = residue_ring(modexp)
    e_hi = _cd_horizon(kmax, modexp)
    grid_prec = prec if prec is not None else 13 * 24 * e_hi + 27
    cache = GPowerCache(ring, e_hi)

    g = g_series(grid_prec, ring)
    phi = phi_series(grid_prec, ring)
    c_rows: dict[int, GLaurent] = {}
    d_rows: dict[int, GLaurent] = {0: decompose_in_g(u_op(phi, 13), 1, cache=cache)}
    gk = g
    for k in range(1, kmax + 1):
        c_rows[k] = decompose_in_g(u_op(gk, 13), 1, cache=cache)
        d_rows[k] = decompose_in_g(u_op(mul(phi, gk), 13), 1, cache=cache)
        if k < kmax:
            gk = mul(gk, g)
    return CDData(modexp, kmax, grid_prec, c_rows, d_rows)


# ---------------------------------------------------------------------------
# h rows (omega_r | T~_{p^2} in the omega basis)


@dataclass
class HData:
    """Rows omega_r|T~ = sum_i h~_{r,i} omega_i, r = 1..7, mod 13^modexp.

    ``x_rows[r]`` stores the decomposition of (omega_r|T~)/omega_1 in g,
    whose g^j coefficient is h~_{r, j+1}.  G_r = (omega_r|T~)/omega_r is the
    same data shifted down by r - 1.
    """

    p: int
    modexp: int
    prec_used: int
    x_rows: dict[int, GLaurent]
    newman: dict[int, NewmanData]
    g_lead: dict[int, int | None]

    def h_entry(self, r: int, i: int) -> int:
        return self.x_rows[r][i - 1]

    def h_index_range(self, r: int) -> int:
        """Theoretical top index: -Delta*_r + r."""
        return -self.newman[r].delta_star + r

    def g_laurent(self, r: int) -> GLaurent:
        return self.x_rows[r].shifted(-(r - 1))


def h_coefficients(
    p: int, modexp: int, prec: int | None = None, rmax: int = 7
) -> HData:
    """Decompose omega_r|T~_{p^2} over the omega basis for r = 1..rmax."""
    if p in (2, 3, 13) or not is_prime(p):
        raise ValueError(f"p must be a prime >= 5, != 13; got {p}")
    ring = residue_ring(modexp)
    e_hi = 3 * (modexp + rmax + 4) + 25
    x_prec = 24 * e_hi + 27
    omega_prec = prec if prec is not None else x_prec * p * p + 55
    cache = GPowerCache(ring, e_hi)
    params = HeckeParams(p, 11)
    omega1_inv = eta_quotient(EtaQuotientSpec(((1, 2), (13, -1))), x_prec + 24, ring)

    x_rows: dict[int, GLaurent] = {}
    newman: dict[int, NewmanData] = {}
    g_lead: dict[int, int | None] = {}
    eta13_sq = eta_quotient(EtaQuotientSpec(((13, 2),)), omega_prec + 55, ring)
    eta1_sq_inv = eta_quotient(EtaQuotientSpec(((1, -2),)), omega_prec + 55, ring)
    omega = eta_quotient(
        EtaQuotientSpec(((13, 1), (1, -2))), omega_prec + 30, ring
    ).truncate(omega_prec)
    for r in range(1, rmax + 1):
        t_out = hecke_tp2_norm(omega, params)
        x = mul(t_out, omega1_inv)
        nd = newman_for_omega(r, p)
        lau = decompose_in_g(x, -(r + 1), max_degree=-nd.delta_star + r - 1, cache=cache)
        x_rows[r] = lau
        newman[r] = nd
        xl = x.leading_exponent()
        g_lead[r] = None if xl is None else xl // 24 - (r - 1)
        if r < rmax:
            omega = mul(mul(omega, eta13_sq), eta1_sq_inv).truncate(omega_prec)
    return HData(p, modexp, omega_prec, x_rows, newman, g_lead)


# ---------------------------------------------------------------------------
# towers


@dataclass
class TowerCoeffs:
    """Level-alpha tower coefficients, 1-based in r via the accessors.

    u and v carry the p^3 normalization of the Hecke operator.
    """

    alpha: int
    k: list[int]
    l: list[int]
    u: list[int]
    v: list[int]
    rmax: int
    modexp: int
    tail_guard: int

    def get(self, symbol: str, r: int) -> int:
        seq = getattr(self, symbol)
        if not 1 <= r <= self.rmax:
            raise IndexError(f"r={r} outside 1..{self.rmax}")
        return seq[r - 1]


def tail_guard_value(rmax: int, kmax: int) -> int:
    return (13 * (rmax + 1) - kmax - 8) // 14


def decompose_l1_exact(window: int = 16) -> GLaurent:
    """Exact-integer decomposition of L1 = phi|U13 (seven terms, k_{1,r})."""
    e_hi = 7 + max(window, MIN_WINDOW) + 2
    grid_prec = 13 * 24 * e_hi + 27
    l1 = u_op(phi_series(grid_prec, EXACT), 13)
    return decompose_in_g(l1, 1)


def tower(
    alpha_max: int,
    p: int,
    rmax: int,
    modexp: int,
    cd: CDData | None = None,
    hdata: HData | None = None,
    k1: GLaurent | None = None,
) -> list[TowerCoeffs]:
    """Matrix-recurrence towers for alpha = 1..alpha_max mod 13^modexp.

    Refuses to run unless the tail guard certifies that every term dropped
    by truncating the index range at rmax is zero mod 13^modexp.
    """
    guard = tail_guard_value(rmax, rmax)
    if guard < modexp:
        raise ValueError(
            f"tail guard {guard} below modexp {modexp}; increase rmax"
        )
    ring = residue_ring(modexp)
    m = ring.modulus
    if cd is None:
        cd = cd_matrices(rmax, modexp)
    if hdata is None:
        hdata = h_coefficients(p, modexp)
    if k1 is None:
        k1 = decompose_l1_exact()
    if cd.modexp != modexp or cd.kmax < rmax:
        raise ValueError("c/d matrices do not cover this tower")
    if hdata.modexp != modexp or hdata.p != p:
        raise ValueError("h rows were computed for different parameters")

    if k1.jmin < 1 or (k1.degree or 0) > rmax:
        raise ValueError("k1 seed out of range for this rmax")
    kvec = [ring.reduce(k1[r]) for r in range(1, rmax + 1)]
    uvec = [0] * rmax
    for j in range(1, rmax + 1):
        acc = 0
        for r in range(1, 8):
            kr = k1[r]
            if kr:
                acc += ring.reduce(kr) * hdata.h_entry(r, j)
        uvec[j - 1] = acc % m

    cmat = [[cd.entry("c", j, r) for r in range(1, rmax + 1)] for j in range(1, rmax + 1)]
    dmat = [[cd.entry("d", j, r) for r in range(1, rmax + 1)] for j in range(1, rmax + 1)]

    def times_matrix(vec: list[int], mat: list[list[int]]) -> list[int]:
        out = [0] * rmax
        for j, x in enumerate(vec):
            if x:
                row = mat[j]
                for r in range(rmax):
                    if row[r]:
                        out[r] += x * row[r]
        return [x % m for x in out]

    levels: list[TowerCoeffs] = []
    for alpha in range(1, alpha_max + 1):
        lvec = times_matrix(kvec, cmat)
        vvec = times_matrix(uvec, cmat)
        levels.append(
            TowerCoeffs(alpha, kvec, lvec, uvec, vvec, rmax, modexp, guard)
        )
        if alpha < alpha_max:
            kvec = times_matrix(lvec, dmat)
            uvec = times_matrix(vvec, dmat)
    return levels


def tower_csv(levels: list[TowerCoeffs]) -> str:
    """CSV export: alpha,r,symbol,value,val13 per tower entry."""
    buf = io.StringIO()
    buf.write("alpha,r,symbol,value,val13\n")
    for tc in levels:
        ring = residue_ring(tc.modexp)
        for symbol in ("k", "l", "u", "v"):
            for r in range(1, tc.rmax + 1):
                v = tc.get(symbol, r)
                buf.write(f"{tc.alpha},{r},{symbol},{v},{val13(v, ring)}\n")
    return buf.getvalue()
