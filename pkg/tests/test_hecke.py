import random

import pytest

from cong13.eta import eta_series
from cong13.hecke import (
    HeckeParams,
    hecke_tp2_norm,
    precision_plan,
    psi_for_class,
    u_op,
)
from cong13.partitions import bigP, partition_brute, partition_table
from cong13.rings import EXACT, jacobi, residue_ring
from cong13.series import from_terms, mul


def test_u_op_examples():
    f = from_terms([(143, 7), (5, 1)], 24 * 13, EXACT)
    out = u_op(f, 13)
    assert out.nonzero_terms() == [(11, 7)]
    assert out.prec == 24


def test_u_op_inverts_dilation():
    f = from_terms([(11, 3), (35, -2), (59, 9)], 24 * 30, EXACT)
    assert u_op(f.dilate(13), 13).equal_to_prec(f)


def test_u_op_partition_anchor():
    inner = u_op(eta_series(1, 24 * 13 * 16).invert(), 13)
    # coefficient at q^(N + 11/24) is P(13(24N + 11)); N = 0 gives p(6)
    assert inner.coeff_at(11) == partition_brute(6) == 11
    table = partition_table(200)
    for N in range(1, 12):
        assert inner.coeff_at(24 * N + 11) == bigP(13 * (24 * N + 11), table)


def test_u_op_support_class_transform():
    # 169 = 1 mod 24, so class 23 -> 11 -> 23 under two U_13 passes
    f = from_terms([(169 * 23, 1), (169 * 47, 5)], 24 * 13 * 13 * 4, EXACT)
    assert f.support_class == 23
    once = u_op(f, 13)
    assert once.support_class == 11 and not once.is_zero
    twice = u_op(once, 13)
    assert twice.support_class == 23 and not twice.is_zero


def test_carrier_identity():
    # U_p(dilate_p(f) * h) = f * U_p(h)
    rng = random.Random(5)
    ring = residue_ring(3)
    for p in (5, 13):
        prec = 24 * p * 12
        f = from_terms(
            [(n, rng.randrange(1, 2197)) for n in range(0, prec // p - 24, 24)],
            prec // p,
            ring,
        )
        h = from_terms(
            [(n, rng.randrange(2197)) for n in rng.sample(range(prec - 1), 40)],
            prec,
            ring,
        )
        lhs = u_op(mul(f.dilate(p), h), p)
        rhs = mul(f, u_op(h, p))
        assert lhs.equal_to_prec(rhs)


def test_psi_for_class():
    assert psi_for_class(11, 5) == jacobi(5, 13) == -1
    assert psi_for_class(23, 5) == 1
    assert psi_for_class(11 + 24, 7) == jacobi(7, 13)
    with pytest.raises(ValueError):
        psi_for_class(1, 5)


def test_hecke_params_validation():
    with pytest.raises(ValueError):
        HeckeParams(13, 11)
    with pytest.raises(ValueError):
        HeckeParams(9, 11)
    with pytest.raises(ValueError):
        HeckeParams(2, 11)
    with pytest.raises(ValueError):
        HeckeParams(5, 8)
    with pytest.raises(ValueError):
        HeckeParams(5, 11, weight_lambda=0)
    assert HeckeParams(5, 11).sign_factor == jacobi(-1, 5)
    assert HeckeParams(5, 23).sign_factor == jacobi(-1, 5)


def test_tp2_delta_series():
    # single term a(11) = 1, p = 5, class 11: only the middle tap fires,
    # worth sign * (132/5) * (5/13) * 5 = 1 * (-1) * (-1) * 5
    f = from_terms([(11, 1)], 700, EXACT)
    out = hecke_tp2_norm(f, HeckeParams(5, 11))
    expected = jacobi(-1, 5) ** 1 * jacobi(12 * 11, 5) * jacobi(5, 13) * 5
    assert expected == 5
    assert out.nonzero_terms() == [(11, 5)]


def test_tp2_linearity():
    rng = random.Random(11)
    ring = residue_ring(3)
    params = HeckeParams(7, 11)
    prec = 24 * 49 * 8
    mk = lambda: from_terms(
        [(n, rng.randrange(2197)) for n in range(11, prec, 24)], prec, ring
    )
    f, g = mk(), mk()
    lhs = hecke_tp2_norm(f + g, params)
    rhs = hecke_tp2_norm(f, params) + hecke_tp2_norm(g, params)
    assert lhs.equal_to_prec(rhs)


def test_tp2_class_mismatch_and_bad_p():
    f = from_terms([(11, 1)], 700, EXACT)
    with pytest.raises(ValueError):
        hecke_tp2_norm(f, HeckeParams(5, 23))
    with pytest.raises(ValueError):
        HeckeParams(3, 11)


@pytest.mark.parametrize("p", [5, 7])
def test_tp2_reproduces_partition_combination(p):
    """The operator on U13(1/eta) must produce the three-term combination
    p^3 P(13 p^2 M) + p (-3/p)(13M/p) P(13M) + P(13M/p^2) at M = 24N + 11,
    evaluated here straight from partition tables."""
    Nc = 12
    prec = 24 * (Nc + 2) * p * p
    inner = u_op(eta_series(1, prec * 13 + 300).invert(), 13)
    out = hecke_tp2_norm(inner, HeckeParams(p, 11))
    table = partition_table((13 * p * p * (24 * Nc + 11) + 1) // 24 + 1)
    for N in range(Nc):
        M = 24 * N + 11
        want = (
            p**3 * bigP(13 * p * p * M, table)
            + p * jacobi(-3, p) * jacobi(13 * M, p) * bigP(13 * M, table)
            + (bigP(13 * M // (p * p), table) if (13 * M) % (p * p) == 0 else 0)
        )
        assert out.coeff_at(M) == want, (p, N)


def test_tp2_commutes_with_u13():
    rng = random.Random(3)
    ring = residue_ring(4)
    for p, rclass in ((5, 11), (7, 23), (11, 11)):
        prec = 24 * 13 * p * p * 10
        f = from_terms(
            [(n, rng.randrange(1, ring.modulus)) for n in range(rclass, prec, 24)],
            prec,
            ring,
        )
        tu = u_op(hecke_tp2_norm(f, HeckeParams(p, rclass)), 13)
        ut = hecke_tp2_norm(u_op(f, 13), HeckeParams(p, (rclass * 13) % 24))
        assert not tu.is_zero
        assert tu.equal_to_prec(ut)


def test_tp2_negative_min_exp():
    # a(n/p^2) tap reaches p^2 times lower than the input lead
    f = from_terms([(-25, 1)], 24 * 30, EXACT)
    out = hecke_tp2_norm(f, HeckeParams(5, 23))
    assert out.coeff_at(-625) == 1


def test_precision_plan():
    assert precision_plan([("U", 13)], 100) == 1300
    assert precision_plan([("U", 13), ("U", 13), ("T", 5)], 240) == 1_014_000
    assert precision_plan([], 7) == 7
    assert precision_plan([("MUL", 13)], 100) == 87
    assert precision_plan([("POW", 3, 24)], 100) == 52
    with pytest.raises(ValueError):
        precision_plan([("WARP", 2)], 10)
