"""Coefficient-array multiplication kernels.

Two independent kernels compute truncated convolutions:

* ``schoolbook`` walks the nonzero terms of the shorter operand in pure
  Python.  Exact for every ring, quadratic in the dense case, and fast when
  one operand is sparse (pentagonal series, single monomials).
* ``kronecker`` packs the arrays into big integers (Kronecker substitution,
  field width chosen so digits never carry) and lets GMP's multiplication
  do the work.  Exact by construction; no floating point anywhere.

The two kernels are cross-checked on random inputs by the test suite and by
the ``cross_checks`` battery, which is what pins their correctness.
"""

from __future__ import annotations

import gmpy2
import numpy as np

from .rings import Ring

# Work threshold below which schoolbook wins over packing overhead.
# nnz(shorter operand) * len(longer operand) is the schoolbook op count.
SCHOOLBOOK_WORK_LIMIT = 1 << 16


def mul_schoolbook(a: list[int], b: list[int], nout: int, ring: Ring) -> list[int]:
    """Truncated convolution by direct summation, skipping zero terms."""
    out = [0] * nout
    if len(a) > len(b):
        a, b = b, a
    for i, ai in enumerate(a):
        if i >= nout:
            break
        if ai == 0:
            continue
        jmax = min(len(b), nout - i)
        for j in range(jmax):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    if not ring.is_exact:
        m = ring.modulus
        out = [x % m for x in out]
    return out


def _nnz(a: list[int]) -> int:
    return sum(1 for x in a if x)


def _pack_nonneg(vals: list[int], width: int) -> "gmpy2.mpz":
    return gmpy2.pack(vals, width)


def _mul_kronecker_residue(a: list[int], b: list[int], nout: int, m: int) -> list[int]:
    nmin = min(len(a), len(b))
    bound = nmin * (m - 1) * (m - 1)
    width = bound.bit_length() + 1
    za = _pack_nonneg(a, width)
    zb = _pack_nonneg(b, width)
    digits = gmpy2.unpack(za * zb, width)
    out = [int(d) % m for d in digits[:nout]]
    out.extend([0] * (nout - len(out)))
    return out


def _mul_kronecker_exact(a: list[int], b: list[int], nout: int) -> list[int]:
    amax = max(abs(x) for x in a)
    bmax = max(abs(x) for x in b)
    nmin = min(len(a), len(b))
    bound = nmin * amax * bmax
    width = bound.bit_length() + 2
    half = 1 << (width - 1)

    def pack_signed(vals: list[int]) -> "gmpy2.mpz":
        pos = [x if x > 0 else 0 for x in vals]
        neg = [-x if x < 0 else 0 for x in vals]
        return _pack_nonneg(pos, width) - _pack_nonneg(neg, width)

    prod = pack_signed(a) * pack_signed(b)
    ndig = len(a) + len(b) - 1
    # Adding half to every digit makes all digits non-negative without
    # carries, since every true coefficient satisfies |c| < half.
    bias = (((gmpy2.mpz(1) << (width * ndig)) - 1) // ((1 << width) - 1)) << (width - 1)
    digits = gmpy2.unpack(prod + bias, width)
    if len(digits) < ndig:
        digits = list(digits) + [gmpy2.mpz(0)] * (ndig - len(digits))
    return [int(d) - half for d in digits[:nout]] + [0] * max(0, nout - ndig)


def mul_kronecker(a: list[int], b: list[int], nout: int, ring: Ring) -> list[int]:
    """Truncated convolution via big-integer (Kronecker) packing."""
    if ring.is_exact:
        if all(x == 0 for x in a) or all(x == 0 for x in b):
            return [0] * nout
        return _mul_kronecker_exact(a, b, nout)
    return _mul_kronecker_residue(a, b, nout, ring.modulus)


def mul_coeffs(
    a: list[int], b: list[int], nout: int, ring: Ring, kernel: str = "auto"
) -> list[int]:
    """Multiply coefficient lists, truncated to ``nout`` terms.

    ``kernel`` is ``"auto"`` (work-based choice), ``"schoolbook"`` or
    ``"kronecker"``.
    """
    if nout <= 0 or not a or not b:
        return [0] * max(nout, 0)
    if kernel == "schoolbook":
        return mul_schoolbook(a, b, nout, ring)
    if kernel == "kronecker":
        return mul_kronecker(a, b, nout, ring)
    if kernel != "auto":
        raise ValueError(f"unknown kernel {kernel!r}")
    short, long_ = (a, b) if len(a) <= len(b) else (b, a)
    if _nnz(short) * min(len(long_), nout) <= SCHOOLBOOK_WORK_LIMIT:
        return mul_schoolbook(a, b, nout, ring)
    return mul_kronecker(a, b, nout, ring)


# ---------------------------------------------------------------------------
# numpy fast path used by the large partition-table engine (word-size moduli)


def numpy_mulmod_supported(n: int, m: int) -> bool:
    """True if the 64-bit-field packing is carry-safe for this size."""
    return n * (m - 1) * (m - 1) < (1 << 64)


def mulmod_numpy(a: np.ndarray, b: np.ndarray, nout: int, m: int) -> np.ndarray:
    """Truncated convolution of int64 arrays mod m via 64-bit Kronecker fields."""
    nmin = min(len(a), len(b))
    if not numpy_mulmod_supported(nmin, m):
        raise ValueError("operands too long for 64-bit Kronecker fields")
    za = gmpy2.mpz.from_bytes(a.astype("<u8").tobytes(), "little")
    zb = gmpy2.mpz.from_bytes(b.astype("<u8").tobytes(), "little")
    zc = za * zb
    full = len(a) + len(b) - 1
    take = min(nout, full)
    buf = zc.to_bytes(full * 8, "little")
    out = np.frombuffer(buf, dtype="<u8", count=take).astype(np.int64) % m
    if take < nout:
        out = np.concatenate([out, np.zeros(nout - take, dtype=np.int64)])
    return out
