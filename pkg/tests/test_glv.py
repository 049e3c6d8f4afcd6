import random

import pytest

from hyperendo.errors import BadEigenvalue, MixedCurves
from hyperendo.families import ETA7_MIN_POLY, make_artin_schreier, make_cyclotomic
from hyperendo.field import gf, is_prime
from hyperendo.glv import glv_basis, glv_bench, glv_decompose, glv_scalar_mul, lll_reduce, multi_scalar_mul
from hyperendo.jacobian import jac_scalar_mul, random_divisor
from hyperendo.order import eta_eigenvalues, jacobian_order, match_eigenvalue

from conftest import EX_M, EX_N


def test_basis_small():
    B = glv_basis(11, 3, 2)
    for row in B.basis:
        assert B.in_lattice(row) and max(map(abs, row)) <= 4
    # exhaustive: no nonzero lattice vector is shorter than the shortest row
    shortest = min(max(map(abs, r)) for r in B.basis)
    for x in range(-3, 4):
        for y in range(-3, 4):
            if (x, y) != (0, 0) and (x + 3 * y) % 11 == 0:
                assert max(abs(x), abs(y)) >= shortest


def test_basis_example_bounds():
    B = glv_basis(EX_N, EX_M, 2)
    for row in B.basis:
        assert B.in_lattice(row)
        assert max(map(abs, row)) ** 2 < 4 * EX_N


def test_bad_eigenvalue():
    with pytest.raises(BadEigenvalue):
        glv_basis(EX_N, 0, 2)
    with pytest.raises(BadEigenvalue):
        glv_basis(EX_N, EX_M + 1, 2)


def test_decompose_example():
    B = glv_basis(EX_N, EX_M, 2)
    assert glv_decompose(B, 0) == [0, 0]
    ks = glv_decompose(B, EX_M)
    assert (ks[0] + ks[1] * EX_M - EX_M) % EX_N == 0
    rng = random.Random(0)
    for _ in range(1000):
        k = rng.randrange(EX_N)
        ks = glv_decompose(B, k)
        assert (ks[0] + ks[1] * EX_M - k) % EX_N == 0
        assert B.bound_ok(ks)


def test_dim3_lll_and_decompose():
    ell = next(p for p in range(10 ** 30, 10 ** 30 + 10 ** 5) if p % 7 == 1 and is_prime(p))
    rng = random.Random(1)
    for m in eta_eigenvalues(ETA7_MIN_POLY, ell):
        B = glv_basis(ell, m, 3)
        for row in B.basis:
            assert B.in_lattice(row) and B.bound_ok(row)
        for _ in range(200):
            k = rng.randrange(ell)
            ks = glv_decompose(B, k)
            assert (sum(x * pow(m, i, ell) for i, x in enumerate(ks)) - k) % ell == 0
            assert B.bound_ok(ks)


def test_lll_reduces_known_lattice():
    rows = lll_reduce([[1, 0, 0], [0, 1, 0], [1000, 1000, 1]])
    assert sorted(max(map(abs, r)) for r in rows) == [1, 1, 1]


def test_msm_consistency():
    c, _ = make_cyclotomic(gf(1009), 5, 3)
    rng = random.Random(2)
    P, Q = random_divisor(c, rng), random_divisor(c, rng)
    k = 123456789
    R, ops = multi_scalar_mul([P], [k])
    assert R == jac_scalar_mul(P, k)
    assert multi_scalar_mul([P, Q], [1, 1])[0] == P + Q
    for _ in range(30):
        ks = [rng.randrange(-10 ** 9, 10 ** 9) for _ in range(3)]
        pts = [P, Q, P + Q + Q]
        expect = jac_scalar_mul(pts[0], ks[0]) + jac_scalar_mul(pts[1], ks[1]) + jac_scalar_mul(pts[2], ks[2])
        R, ops = multi_scalar_mul(pts, ks)
        assert R == expect
        assert ops.doublings < max(abs(k) for k in ks).bit_length()
    c2, _ = make_cyclotomic(gf(1009), 5, 4)
    with pytest.raises(MixedCurves):
        multi_scalar_mul([P, random_divisor(c2, 0)], [1, 1])


def test_glv_small_cyclotomic_dim2_and_dim3():
    for make, ell_hint in [(lambda: make_cyclotomic(gf(11), 5, 1), 29), (lambda: make_artin_schreier(gf(7), 7, 3), None)]:
        c, eta = make()
        order, _ = jacobian_order(c)
        ell = ell_hint or max(p for p in range(2, order + 1) if order % p == 0 and all(p % d for d in range(2, int(p ** 0.5) + 1)))
        rng = random.Random(3)
        Q = c.identity()
        while Q.is_identity():
            Q = jac_scalar_mul(random_divisor(c, rng), order // ell)
        try:
            m = match_eigenvalue(eta, Q, eta_eigenvalues(eta.min_poly, ell))
        except Exception:
            continue
        B = glv_basis(ell, m, len(eta.min_poly) - 1, eta.min_poly)
        for _ in range(50):
            k = rng.randrange(ell)
            assert glv_scalar_mul(eta, B, Q, k)[0] == jac_scalar_mul(Q, k)


def test_example_glv_pipeline(example):
    _, _, eta, _, Q = example
    B = glv_basis(EX_N, EX_M, 2)
    report = glv_bench(eta, B, Q, 3, seed=5, timing=False)
    assert report["mismatches"] == 0
    assert report["glv"]["doublings"] <= 88
    assert report["plain"]["ns"] is None and report["speedup"] is None
