import gmpy2
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cong13.rings import (
    EXACT,
    NotInvertibleError,
    Ring,
    Valuation,
    inv_mod,
    jacobi,
    residue_ring,
    val13,
)


def test_val13_examples():
    assert val13(26) == Valuation.finite(1)
    assert val13(169) == Valuation.finite(2)
    assert val13(14) == Valuation.finite(0)
    assert val13(0) == Valuation.infinity()
    assert val13(0, residue_ring(3)) == Valuation.at_least(3)
    assert val13(13**3, residue_ring(3)) == Valuation.at_least(3)
    assert val13(2 * 13**2, residue_ring(3)) == Valuation.finite(2)


def test_valuation_satisfies():
    assert Valuation.finite(4).satisfies(4)
    assert not Valuation.finite(4).satisfies(5)
    assert Valuation.at_least(3).satisfies(3)
    assert not Valuation.at_least(3).satisfies(4)
    assert Valuation.infinity().satisfies(10**6)


@given(st.integers(min_value=-(10**9), max_value=10**9).filter(lambda x: x != 0),
       st.integers(min_value=-(10**9), max_value=10**9).filter(lambda x: x != 0))
def test_val13_multiplicative(a, b):
    assert val13(a * b).value == val13(a).value + val13(b).value


@given(st.integers(min_value=-(10**6), max_value=10**6).filter(lambda x: x != 0),
       st.integers(min_value=-(10**6), max_value=10**6).filter(lambda x: x != 0))
def test_val13_ultrametric(a, b):
    if a + b == 0:
        return
    va, vb, vs = val13(a).value, val13(b).value, val13(a + b).value
    assert vs >= min(va, vb)
    if va != vb:
        assert vs == min(va, vb)


def test_jacobi_examples():
    assert jacobi(5, 1) == 1
    assert jacobi(-7, 1) == 1
    assert jacobi(-429, 5) == 1  # -429 = 1 mod 5, a square
    assert jacobi(10, 5) == 0


def test_jacobi_euler_criterion_small_primes():
    for p in (3, 5, 7, 11, 13):
        squares = {(x * x) % p for x in range(1, p)}
        for a in range(-2 * p, 2 * p):
            want = 0 if a % p == 0 else (1 if a % p in squares else -1)
            assert jacobi(a, p) == want, (a, p)


def test_jacobi_invalid_modulus():
    with pytest.raises(ValueError):
        jacobi(3, 4)
    with pytest.raises(ValueError):
        jacobi(3, 0)
    with pytest.raises(ValueError):
        jacobi(3, -5)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6),
       st.integers(0, 10**4))
def test_jacobi_multiplicative(a, b, k):
    m = 2 * k + 1
    if m < 1:
        return
    assert jacobi(a * b, m) == jacobi(a, m) * jacobi(b, m)


@given(st.integers(-10**9, 10**9), st.integers(1, 10**5))
def test_jacobi_matches_gmpy2(a, k):
    m = 2 * k + 1
    assert jacobi(a, m) == gmpy2.jacobi(a, m)


def test_inv_mod_examples():
    assert inv_mod(1, 5) == 1
    assert inv_mod(2, 1) == 7  # scan 1..12: 2*7 = 14 = 1 mod 13
    with pytest.raises(NotInvertibleError):
        inv_mod(13, 2)
    with pytest.raises(NotInvertibleError):
        inv_mod(0, 1)


@given(st.integers(-(10**9), 10**9), st.integers(1, 8))
def test_inv_mod_inverse(a, K):
    if a % 13 == 0:
        return
    assert a * inv_mod(a, K) % 13**K == 1


def test_ring_construction():
    assert EXACT.is_exact and EXACT.modulus is None
    r = residue_ring(3)
    assert r.modulus == 2197
    assert str(r) == "Z/13^3"
    with pytest.raises(ValueError):
        Ring("residue", 0)
    with pytest.raises(ValueError):
        Ring("weird")


def test_ring_units_and_inverse():
    assert EXACT.is_unit(1) and EXACT.is_unit(-1) and not EXACT.is_unit(2)
    assert EXACT.inv(-1) == -1
    r = residue_ring(2)
    assert r.is_unit(5) and not r.is_unit(26)
    assert r.inv(5) * 5 % 169 == 1
    with pytest.raises(NotInvertibleError):
        EXACT.inv(3)
    with pytest.raises(NotInvertibleError):
        r.inv(26)


@given(st.integers(-(10**12), 10**12), st.integers(-(10**12), 10**12),
       st.sampled_from([1, 2, 5]))
def test_residue_arithmetic_commutes_with_reduction(x, y, K):
    r = residue_ring(K)
    for op in (lambda a, b: a + b, lambda a, b: a - b, lambda a, b: a * b):
        assert r.reduce(op(x, y)) == r.reduce(op(r.reduce(x), r.reduce(y)))
