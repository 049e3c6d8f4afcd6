"""Small-field group orders and eigenvalues of eta.

Point counts over F_{q^e} (e = 1..g) give the L-polynomial through Newton's
identities and the functional equation; |Jac(F_q)| = L(1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from .endo import Endomorphism, endo_evaluate
from .errors import BadParameter, NoMatch, NoRoots, TooLarge
from .field import FieldDesc, is_prime
from .jacobian import HyperellipticCurve, MumfordDivisor, jac_scalar_mul
from .poly import Polynomial, extension, poly_roots

__all__ = [
    "COUNT_LIMIT",
    "LPolynomial",
    "count_curve_points",
    "count_curve_points_naive",
    "jacobian_order",
    "eta_eigenvalues",
    "match_eigenvalue",
]

COUNT_LIMIT = 10 ** 7


@dataclass(frozen=True)
class LPolynomial:
    """L(T) = 1 + c_1 T + ... + c_{2g} T^{2g}."""

    q: int
    genus: int
    coeffs: Tuple[int, ...]

    def __call__(self, x: int) -> int:
        return sum(c * x ** i for i, c in enumerate(self.coeffs))

    def point_counts(self, upto: int) -> List[int]:
        """#X(F_{q^e}) for e = 1..upto, recovered from the coefficients."""
        g = self.genus
        # e_k of the inverse roots: c_k = (-1)^k e_k
        e = [(-1) ** k * c for k, c in enumerate(self.coeffs)]
        s: List[int] = []
        for k in range(1, upto + 1):
            acc = (-1) ** (k - 1) * k * e[k] if k <= 2 * g else 0
            for i in range(1, min(k, 2 * g + 1)):
                acc += (-1) ** (i - 1) * e[i] * s[k - i - 1]
            s.append(acc)
        return [self.q ** k + 1 - s[k - 1] for k in range(1, upto + 1)]

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coeffs]


# ---------------------------------------------------------------------------
# counting


def _count_prime_field(f: Polynomial, p: int) -> int:
    us = np.arange(p, dtype=np.int64)
    h = np.zeros(p, dtype=np.int64)
    for c in reversed(f.coeffs):
        h = (h * us + c.to_int()) % p
    is_sq = np.zeros(p, dtype=bool)
    is_sq[(us * us) % p] = True
    zeros = int(np.count_nonzero(h == 0))
    squares = int(np.count_nonzero(is_sq[h])) - zeros
    return 1 + zeros + 2 * squares


def _factor_small(n: int) -> List[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _primitive_element(F: FieldDesc):
    order = F.q - 1
    primes = _factor_small(order)
    for idx in range(1, F.q):
        g = F.from_index(idx)
        if all(g ** (order // r) != 1 for r in primes):
            return g
    raise AssertionError("no primitive element")


def _encode(x) -> int:
    p = x.desc.p
    return sum(c * p ** i for i, c in enumerate(x.coeffs))


def _mul_matrix(g) -> np.ndarray:
    """Matrix of y -> y*g on coefficient rows (row vector convention)."""
    F = g.desc
    k = F.k
    rows = []
    for i in range(k):
        e = [0] * k
        e[i] = 1
        rows.append([c for c in (F(e) * g).coeffs])
    return np.array(rows, dtype=np.int64)


def _count_extension_field(f: Polynomial, F: FieldDesc) -> int:
    p, k, Q = F.p, F.k, F.q
    g = _primitive_element(F)
    # coefficient rows of g^0 .. g^(Q-2), doubling with a matrix per step
    powers = np.zeros((Q - 1, k), dtype=np.int64)
    powers[0, 0] = 1
    filled = 1
    gp = g
    while filled < Q - 1:
        take = min(filled, Q - 1 - filled)
        powers[filled:filled + take] = (powers[:take] @ _mul_matrix(gp)) % p
        filled += take
        gp = gp * gp
    weights = p ** np.arange(k, dtype=np.int64)
    antilog = powers @ weights
    log = np.full(Q, -1, dtype=np.int64)
    log[antilog] = np.arange(Q - 1, dtype=np.int64)

    def add_const(h: np.ndarray, c: int) -> np.ndarray:
        if c == 0:
            return h
        out = np.zeros_like(h)
        for j in range(k):
            w = int(weights[j])
            d = (h // w) % p
            out += ((d + (c // w) % p) % p) * w
        return out

    us = np.arange(Q, dtype=np.int64)
    log_u = log[us]
    h = np.zeros(Q, dtype=np.int64)
    for c in reversed(f.coeffs):
        lh = log[h]
        nz = (lh >= 0) & (log_u >= 0)
        prod = np.zeros(Q, dtype=np.int64)
        prod[nz] = antilog[(lh[nz] + log_u[nz]) % (Q - 1)]
        h = add_const(prod, _encode(c))
    lh = log[h]
    zeros = int(np.count_nonzero(lh < 0))
    squares = int(np.count_nonzero((lh >= 0) & (lh % 2 == 0)))
    return 1 + zeros + 2 * squares


def count_curve_points(curve: HyperellipticCurve, ext_degree: int = 1) -> int:
    """#X(F_{q^e}), including the point at infinity."""
    if ext_degree < 1:
        raise BadParameter("ext_degree must be positive")
    Q = curve.desc.q ** ext_degree
    if Q > COUNT_LIMIT:
        raise TooLarge(f"q^e = {Q} exceeds the counting limit {COUNT_LIMIT}")
    if ext_degree == 1 and curve.desc.k == 1:
        return _count_prime_field(curve.f, curve.desc.p)
    if ext_degree == 1:
        return _count_extension_field(curve.f, curve.desc)
    ext = extension(curve.desc, ext_degree)
    return _count_extension_field(ext.embed_poly(curve.f), ext.big)


def count_curve_points_naive(curve: HyperellipticCurve) -> int:
    """Double loop over (u, v) in F_q^2; only for tiny fields."""
    F = curve.desc
    elems = list(F.elements())
    squares = {}
    for v in elems:
        squares[v * v] = squares.get(v * v, 0) + 1
    return 1 + sum(squares.get(curve.f(u), 0) for u in elems)


def jacobian_order(curve: HyperellipticCurve) -> Tuple[int, LPolynomial]:
    g, q = curve.genus, curve.desc.q
    if q ** g > COUNT_LIMIT:
        raise TooLarge(f"q^g = {q ** g} exceeds the counting limit {COUNT_LIMIT}")
    counts = [count_curve_points(curve, e) for e in range(1, g + 1)]
    s = [q ** e + 1 - n for e, n in zip(range(1, g + 1), counts)]
    # Newton: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i
    e = [Fraction(1)]
    for k in range(1, g + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * s[i - 1] for i in range(1, k + 1))
        e.append(acc / k)
    if any(x.denominator != 1 for x in e):
        raise ArithmeticError("non-integral L-polynomial coefficient")
    c = [(-1) ** k * int(x) for k, x in enumerate(e)]
    for i in range(g - 1, -1, -1):
        c.append(q ** (g - i) * c[i])
    L = LPolynomial(q, g, tuple(c))
    order = L(1)
    if order <= 0:
        raise ArithmeticError("L(1) must be positive")
    return order, L


# ---------------------------------------------------------------------------
# eigenvalues


def eta_eigenvalues(min_poly: Sequence[int], subgroup_order: int, seed: int = 0) -> List[int]:
    """Roots of min_poly modulo a prime, ascending."""
    ell = int(subgroup_order)
    if ell < 3 or not is_prime(ell):
        raise BadParameter(f"{ell} is not an odd prime")
    F = FieldDesc(ell, check=False)
    h = Polynomial(F, [int(c) for c in min_poly])
    if h.degree < 1:
        raise BadParameter("min_poly must have positive degree")
    roots = sorted(r.to_int() for r in poly_roots(h, random.Random(seed)))
    if not roots:
        raise NoRoots(f"min_poly has no root modulo {ell}")
    return roots


def match_eigenvalue(eta: Endomorphism, Q: MumfordDivisor, candidates: Sequence[int]) -> int:
    """The candidate m with eta(Q) = [m]Q."""
    image = endo_evaluate(eta, Q)
    hits = [m for m in candidates if jac_scalar_mul(Q, m) == image]
    if len(hits) != 1:
        raise NoMatch(f"eta acts as {len(hits)} of {len(candidates)} candidate scalars")
    return hits[0]
