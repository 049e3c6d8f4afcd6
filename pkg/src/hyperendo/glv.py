"""GLV decomposition with a real endomorphism eta acting as [m] on <Q>.

k = k_0 + k_1 m (+ k_2 m^2) mod n with |k_i| about n^(1/d); the pieces are
recombined by interleaved (Straus-Shamir) multi-scalar multiplication.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .endo import Endomorphism, endo_evaluate
from .errors import BadEigenvalue, BadParameter, MixedCurves
from .families import ETA5_MIN_POLY, ETA7_MIN_POLY
from .jacobian import MumfordDivisor, jac_add, jac_neg, scalar_mul_counted

__all__ = [
    "GlvBasis",
    "OpCount",
    "glv_basis",
    "glv_decompose",
    "multi_scalar_mul",
    "glv_scalar_mul",
    "glv_bench",
    "lll_reduce",
]


@dataclass(frozen=True)
class GlvBasis:
    subgroup_order: int
    eigenvalue: int
    dim: int
    basis: Tuple[Tuple[int, ...], ...]
    # first row of basis^-1, cached for round-off
    _inv_row: Tuple[Fraction, ...] = ()

    def in_lattice(self, v: Sequence[int]) -> bool:
        n, m = self.subgroup_order, self.eigenvalue
        return sum(x * pow(m, i, n) for i, x in enumerate(v)) % n == 0

    def bound_ok(self, v: Sequence[int], c: Optional[int] = None) -> bool:
        """max |v_i| <= c n^(1/d), compared exactly as |v_i|^d <= c^d n."""
        c = c if c is not None else (2 if self.dim == 2 else 4)
        return all(abs(x) ** self.dim <= c ** self.dim * self.subgroup_order for x in v)


@dataclass
class OpCount:
    doublings: int = 0
    additions: int = 0
    endo: int = 0

    def to_json(self) -> dict:
        return {"doublings": self.doublings, "additions": self.additions, "endo": self.endo}


def _poly_at(coeffs: Sequence[int], x: int, n: int) -> int:
    return sum(c * pow(x, i, n) for i, c in enumerate(coeffs)) % n


def _euclid_basis(n: int, m: int) -> List[Tuple[int, int]]:
    # remainders r_i = s_i n + t_i m; (r_i, -t_i) lies in the lattice
    r0, r1 = n, m % n
    t0, t1 = 0, 1
    root = math.isqrt(n)
    seq = [(r0, t0), (r1, t1)]
    while seq[-1][0] >= root and seq[-1][0]:
        q = seq[-2][0] // seq[-1][0]
        seq.append((seq[-2][0] - q * seq[-1][0], seq[-2][1] - q * seq[-1][1]))
    # seq[-1] is the first remainder below sqrt(n)
    l = len(seq) - 2
    r_l1, t_l1 = seq[l + 1]
    v1 = (r_l1, -t_l1)
    r_l, t_l = seq[l]
    cands = [(r_l, -t_l)]
    if seq[-1][0]:
        q = seq[l][0] // seq[l + 1][0]
        r2, t2 = seq[l][0] - q * r_l1, seq[l][1] - q * t_l1
        cands.append((r2, -t2))
    v2 = min(cands, key=lambda v: v[0] * v[0] + v[1] * v[1])
    return [v1, v2]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def lll_reduce(rows: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> List[List[int]]:
    """Textbook LLL with exact rational Gram-Schmidt; meant for tiny dimensions."""
    b = [list(r) for r in rows]
    d = len(b)

    def gso():
        bs, mu = [], [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = _dot(b[i], bs[j]) / _dot(bs[j], bs[j])
                v = [x - mu[i][j] * y for x, y in zip(v, bs[j])]
            bs.append(v)
        return bs, mu

    bs, mu = gso()
    k = 1
    while k < d:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                bs, mu = gso()
        if _dot(bs[k], bs[k]) >= (delta - mu[k][k - 1] ** 2) * _dot(bs[k - 1], bs[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bs, mu = gso()
            k = max(k - 1, 1)
    return b


def _first_inverse_row(B: Sequence[Sequence[int]]) -> Tuple[Fraction, ...]:
    # solve x B = e_0 by Gauss-Jordan on B^T
    d = len(B)
    A = [[Fraction(B[j][i]) for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
    for col in range(d):
        piv = next(r for r in range(col, d) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(d):
            if r != col and A[r][col] != 0:
                fct = A[r][col]
                A[r] = [x - fct * y for x, y in zip(A[r], A[col])]
    return tuple(A[i][d] for i in range(d))


def glv_basis(n: int, m: int, dim: int, min_poly: Optional[Sequence[int]] = None) -> GlvBasis:
    """Short basis of {x : sum x_i m^i = 0 mod n}."""
    if dim not in (2, 3):
        raise BadParameter(f"dim = {dim}: only 2 and 3 are supported")
    n, m = int(n), int(m) % int(n)
    mp = min_poly if min_poly is not None else (ETA5_MIN_POLY if dim == 2 else ETA7_MIN_POLY)
    if _poly_at(mp, m, n):
        raise BadEigenvalue(f"m = {m} is not a root of the minimal polynomial mod n")
    if dim == 2:
        rows = _euclid_basis(n, m)
    else:
        rows = lll_reduce([(n, 0, 0), (-m, 1, 0), (-m * m, 0, 1)])
    rows = tuple(tuple(int(x) for x in r) for r in rows)
    return GlvBasis(n, m, dim, rows, _first_inverse_row(rows))


def _round(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def glv_decompose(basis: GlvBasis, k: int) -> List[int]:
    """Babai round-off: k e_0 minus the nearby lattice vector."""
    beta = [_round(k * c) for c in basis._inv_row]
    v = [sum(beta[i] * basis.basis[i][j] for i in range(basis.dim)) for j in range(basis.dim)]
    target = [k] + [0] * (basis.dim - 1)
    return [t - x for t, x in zip(target, v)]


def multi_scalar_mul(points: Sequence[MumfordDivisor], scalars: Sequence[int]) -> Tuple[MumfordDivisor, OpCount]:
    """sum [k_i] P_i with one shared doubling chain."""
    if len(points) != len(scalars):
        raise BadParameter("points and scalars differ in length")
    if not points:
        raise BadParameter("empty input")
    curve = points[0].curve
    for P in points[1:]:
        if P.curve is not curve and P.curve != curve:
            raise MixedCurves("points live on different curves")
    ops = OpCount()
    pts, ks = [], []
    for P, k in zip(points, scalars):
        if k < 0:
            P, k = jac_neg(P), -k
        pts.append(P)
        ks.append(k)
    d = len(pts)
    if d == 1:
        R, ops.doublings, ops.additions = scalar_mul_counted(pts[0], ks[0])
        return R, ops
    # table[mask] = sum of pts[i] for bits i of mask, built lazily
    table = {}

    def combo(mask: int) -> MumfordDivisor:
        if mask not in table:
            low = mask & -mask
            idx = low.bit_length() - 1
            rest = mask ^ low
            if rest:
                table[mask] = jac_add(combo(rest), pts[idx])
                ops.additions += 1
            else:
                table[mask] = pts[idx]
        return table[mask]

    R = curve.identity()
    started = False
    for bit in range(max(k.bit_length() for k in ks) - 1, -1, -1):
        if started:
            R = jac_add(R, R)
            ops.doublings += 1
        mask = sum(1 << i for i, k in enumerate(ks) if (k >> bit) & 1)
        if mask:
            T = combo(mask)
            if started:
                R = jac_add(R, T)
                ops.additions += 1
            else:
                R = T
                started = True
    return R, ops


def glv_scalar_mul(eta: Endomorphism, basis: GlvBasis, Q: MumfordDivisor, k: int) -> Tuple[MumfordDivisor, OpCount]:
    """[k]Q as sum [k_i] eta^i(Q)."""
    ks = glv_decompose(basis, k % basis.subgroup_order)
    pts = [Q]
    for _ in range(1, basis.dim):
        pts.append(endo_evaluate(eta, pts[-1]))
    R, ops = multi_scalar_mul(pts, ks)
    ops.endo = basis.dim - 1
    return R, ops


def glv_bench(eta: Endomorphism, basis: GlvBasis, Q: MumfordDivisor, trials: int, seed: int = 0,
              timing: bool = True) -> dict:
    """Plain double-and-add against GLV on ``trials`` random scalars.

    Operation counts are averaged (rounded) over trials and are deterministic
    in the seed; ``ns`` fields are wall-clock means and are ``None`` when
    ``timing`` is off.
    """
    if trials < 1:
        raise BadParameter("trials must be positive")
    n = basis.subgroup_order
    rng = random.Random(seed)
    scalars = [rng.randrange(1, n) for _ in range(trials)]
    plain = OpCount()
    glv = OpCount()
    t_plain = t_glv = 0
    mismatches = 0
    for k in scalars:
        t0 = time.perf_counter_ns()
        R1, dbl, add = scalar_mul_counted(Q, k)
        t1 = time.perf_counter_ns()
        R2, ops = glv_scalar_mul(eta, basis, Q, k)
        t2 = time.perf_counter_ns()
        t_plain += t1 - t0
        t_glv += t2 - t1
        plain.doublings += dbl
        plain.additions += add
        glv.doublings += ops.doublings
        glv.additions += ops.additions
        glv.endo += ops.endo
        mismatches += R1 != R2

    def avg(ops: OpCount, ns: int, with_endo: bool) -> dict:
        out = {
            "doublings": round(ops.doublings / trials),
            "additions": round(ops.additions / trials),
            "ns": round(ns / trials) if timing else None,
        }
        if with_endo:
            out["endo"] = round(ops.endo / trials)
        return out

    return {
        "bits": n.bit_length(),
        "trials": trials,
        "plain": avg(plain, t_plain, False),
        "glv": avg(glv, t_glv, True),
        "speedup": round(t_plain / t_glv, 3) if timing and t_glv else None,
        "mismatches": mismatches,
    }
