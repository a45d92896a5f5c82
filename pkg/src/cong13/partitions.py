"""Partition numbers: tables, the reindexed P(N), and independent oracles.

Three engines compute p(0..nmax):

* ``recurrence`` - Euler's pentagonal recurrence, O(n^1.5) pure Python,
  exact or modular.  The trusted oracle.
* ``newton`` - Newton inversion of the sparse pentagonal series, modular
  only, quasi-linear via the Kronecker multiply kernels.  The fast engine
  for nmax around 10^7; it always verifies f * (1/f) = 1 to the full table
  length and checks the first values against the enumeration oracle.
* ``partition_brute`` - a part-by-part counting DP capped at n <= 60,
  sharing no series machinery with the table engines.

Residue tables with word-size moduli are cached on disk because the
congruence checkers reread the same table for many parameter sets.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .multiply import mul_coeffs, mulmod_numpy, numpy_mulmod_supported
from .rings import EXACT, MACHINE_WORD_MAX_K, Ring
from .series import PrecisionExceededError

RECURRENCE_DEFAULT_LIMIT = 20_000
BRUTE_LIMIT = 60

_CACHE_MAGIC = b"PT13"
_CACHE_VERSION = 1


class InternalInconsistencyError(AssertionError):
    """The two partition engines disagreed; one of them is broken."""


@dataclass
class PartitionTable:
    ring: Ring
    nmax: int
    values: "np.ndarray | list[int]"

    def __getitem__(self, n: int) -> int:
        if n > self.nmax:
            raise PrecisionExceededError(f"p({n}) beyond table nmax {self.nmax}")
        return int(self.values[n])


def pentagonal_pairs(nmax: int) -> list[tuple[int, int, int]]:
    """(k(3k-1)/2, k(3k+1)/2, sign) for k = 1, 2, ... while relevant."""
    out = []
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > nmax:
            break
        out.append((g1, k * (3 * k + 1) // 2, 1 if k % 2 == 1 else -1))
        k += 1
    return out


def _table_recurrence(nmax: int, ring: Ring) -> list[int]:
    pairs = pentagonal_pairs(nmax)
    m = ring.modulus
    p = [0] * (nmax + 1)
    p[0] = 1
    for n in range(1, nmax + 1):
        acc = 0
        for g1, g2, s in pairs:
            if g1 > n:
                break
            t = p[n - g1]
            if g2 <= n:
                t += p[n - g2]
            acc += s * t
        p[n] = acc if m is None else acc % m
    return p


def _pentagonal_coeffs_mod(nmax: int, m: int) -> np.ndarray:
    f = np.zeros(nmax + 1, dtype=np.int64)
    f[0] = 1
    for g1, g2, s in pentagonal_pairs(nmax):
        v = (-s) % m
        f[g1] = v
        if g2 <= nmax:
            f[g2] = v
    return f


def _table_newton_numpy(nmax: int, m: int) -> np.ndarray:
    n = nmax + 1
    f = _pentagonal_coeffs_mod(nmax, m)
    h = np.zeros(1, dtype=np.int64)
    h[0] = 1
    length = 1
    while length < n:
        length = min(2 * length, n)
        e = mulmod_numpy(f[:length], h, length, m)
        corr = (-e) % m
        corr[0] = (2 - int(e[0])) % m
        h = mulmod_numpy(h, corr, length, m)
    check = mulmod_numpy(f, h, n, m)
    if int(check[0]) != 1 or np.any(check[1:]):
        bad = int(np.nonzero(check[1:])[0][0]) + 1 if np.any(check[1:]) else 0
        raise InternalInconsistencyError(f"newton inverse failed identity at n={bad}")
    return h


def _table_newton_list(nmax: int, ring: Ring) -> list[int]:
    n = nmax + 1
    m = ring.modulus
    f = [0] * n
    f[0] = 1
    for g1, g2, s in pentagonal_pairs(nmax):
        f[g1] = (-s) % m
        if g2 < n:
            f[g2] = (-s) % m
    h = [1]
    length = 1
    while length < n:
        length = min(2 * length, n)
        e = mul_coeffs(f[:length], h, length, ring)
        corr = [(-x) % m for x in e]
        corr[0] = (2 - e[0]) % m
        h = mul_coeffs(h, corr, length, ring)
    check = mul_coeffs(f, h, n, ring)
    if check[0] != 1 or any(check[1:]):
        raise InternalInconsistencyError("newton inverse failed identity")
    return h


def partition_brute(n: int) -> int:
    """p(n) by a counting DP over parts; independent of the series engines."""
    if n < 0:
        return 0
    if n > BRUTE_LIMIT:
        raise ValueError(f"partition_brute is capped at n <= {BRUTE_LIMIT}")
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for s in range(part, n + 1):
            ways[s] += ways[s - part]
    return ways[n]


# -- disk cache -------------------------------------------------------------


def _cache_eligible(ring: Ring) -> bool:
    return not ring.is_exact and ring.K <= MACHINE_WORD_MAX_K


def cache_filename(ring: Ring, nmax: int) -> str:
    return f"pt13_K{ring.K}_n{nmax}.bin"


def save_table(table: PartitionTable, cache_dir: str) -> str | None:
    if not _cache_eligible(table.ring):
        return None
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, cache_filename(table.ring, table.nmax))
    vals = np.asarray(table.values, dtype=np.int64)
    header = _CACHE_MAGIC + struct.pack(
        "<IBIQB", _CACHE_VERSION, 1, table.ring.K, table.nmax, 8
    )
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(header)
        fh.write(vals.astype("<u8").tobytes())
    os.replace(tmp, path)
    return path


def load_table(ring: Ring, nmax: int, cache_dir: str) -> PartitionTable | None:
    """Load a cached table covering nmax, preferring the smallest such file."""
    if not _cache_eligible(ring) or not os.path.isdir(cache_dir):
        return None
    best: tuple[int, str] | None = None
    prefix = f"pt13_K{ring.K}_n"
    for name in os.listdir(cache_dir):
        if name.startswith(prefix) and name.endswith(".bin"):
            try:
                n_file = int(name[len(prefix) : -4])
            except ValueError:
                continue
            if n_file >= nmax and (best is None or n_file < best[0]):
                best = (n_file, name)
    if best is None:
        return None
    path = os.path.join(cache_dir, best[1])
    try:
        with open(path, "rb") as fh:
            head = fh.read(4 + struct.calcsize("<IBIQB"))
            if head[:4] != _CACHE_MAGIC:
                return None
            version, kind, K, n_file, width = struct.unpack("<IBIQB", head[4:])
            if version != _CACHE_VERSION or kind != 1 or K != ring.K or width != 8:
                return None
            vals = np.frombuffer(fh.read((nmax + 1) * 8), dtype="<u8", count=nmax + 1)
    except (OSError, ValueError, struct.error):
        return None  # unreadable or truncated cache counts as a miss
    return PartitionTable(ring, nmax, vals.astype(np.int64))


# -- public construction ----------------------------------------------------


def partition_table(
    nmax: int,
    ring: Ring = EXACT,
    engine: str = "auto",
    cache_dir: str | None = None,
) -> PartitionTable:
    """Table of p(0..nmax) in the given ring.

    ``engine`` is ``auto``, ``recurrence``, ``newton`` or ``both``; ``both``
    runs the two independent engines and fails loudly if they disagree.
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    if cache_dir is not None and engine in ("auto", "newton"):
        cached = load_table(ring, nmax, cache_dir)
        if cached is not None:
            return cached

    if engine == "auto":
        engine = (
            "recurrence"
            if ring.is_exact or nmax <= RECURRENCE_DEFAULT_LIMIT
            else "newton"
        )

    if engine == "recurrence":
        table = PartitionTable(ring, nmax, _table_recurrence(nmax, ring))
    elif engine == "newton":
        if ring.is_exact:
            raise ValueError("newton engine is modular only")
        table = PartitionTable(ring, nmax, _newton_values(nmax, ring))
        _spot_check(table)
    elif engine == "both":
        rec = _table_recurrence(nmax, ring)
        if ring.is_exact:
            raise ValueError("engine 'both' is modular only")
        new = _newton_values(nmax, ring)
        for n in range(nmax + 1):
            if rec[n] != int(new[n]):
                raise InternalInconsistencyError(
                    f"engines disagree at n={n}: recurrence {rec[n]}, newton {int(new[n])}"
                )
        table = PartitionTable(ring, nmax, rec)
    else:
        raise ValueError(f"unknown engine {engine!r}")

    if cache_dir is not None:
        save_table(table, cache_dir)
    return table


def _newton_values(nmax: int, ring: Ring) -> "np.ndarray | list[int]":
    m = ring.modulus
    if ring.K <= MACHINE_WORD_MAX_K and numpy_mulmod_supported(nmax + 1, m):
        return _table_newton_numpy(nmax, m)
    return _table_newton_list(nmax, ring)


def _spot_check(table: PartitionTable) -> None:
    m = table.ring.modulus
    for n in range(min(table.nmax, BRUTE_LIMIT) + 1):
        expect = partition_brute(n) % m
        if table[n] != expect:
            raise InternalInconsistencyError(
                f"newton table wrong at n={n}: {table[n]} != {expect}"
            )


def bigP(N: "int | Fraction", table: PartitionTable) -> int:
    """P(N) = p((N+1)/24) when N is integral, >= -1 and = -1 mod 24, else 0."""
    if isinstance(N, Fraction):
        if N.denominator != 1:
            return 0
        N = int(N)
    if N < -1 or N % 24 != 23:
        return 0
    return table[(N + 1) // 24]
