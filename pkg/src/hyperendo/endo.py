"""Endomorphisms of Jac(X) induced by a correspondence (v2 - v1, E(u1, u2)).

With e1, e2 the roots of E(u, x) = 0 over k(u), the correspondence sends a
point (u, v) to [(e1, v)] + [(e2, v)]. Everything is driven by the two
symmetric functions ``t1 = e1 + e2`` and ``n1 = e1*e2``:

* :func:`rational_maps` builds the trace/norm tables t_i, n_ij,
* :func:`endo_evaluate` maps a Mumford divisor through the ideal-level
  formula and one Cantor reduction,
* :func:`endo_evaluate_pointwise` is the slow, definitional route (split
  the support, push every point, add the images) used as oracle and
  fallback.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    DegenerateSupport,
    DegreeTooLarge,
    DivisionByZero,
    ExtensionTooLarge,
    InvalidDivisor,
)
from .field import FieldDesc, FieldElement
from .jacobian import (
    HyperellipticCurve,
    MumfordDivisor,
    _reduce,
    curve_from_json,
    curve_to_json,
    jac_add,
    jac_neg,
    jac_scalar_mul,
    point_divisor,
    random_divisor,
)
from .poly import (
    Polynomial,
    RationalFunction,
    extension,
    poly_roots,
    ratfun_from_json,
    ratfun_to_json,
    root_multiplicity,
)

__all__ = [
    "TNTables",
    "Endomorphism",
    "EvalInfo",
    "rational_maps",
    "apply_T",
    "apply_N",
    "endo_evaluate",
    "endo_evaluate_traced",
    "endo_evaluate_pointwise",
    "apply_endo_poly",
    "endo_to_json",
    "endo_from_json",
]

# extension degrees (over F_p) the automatic pointwise fallback may use
POINTWISE_FALLBACK_MAX_K = 64


class TNTables:
    """t_0..t_top and n_ij (0 <= i <= j <= top) as rational functions.

    ``e2`` is the monic lcm of the denominators of t1 and n1; the polynomial
    numerators ``e2^g * t_i`` and ``e2^g * n_ij`` are cached for evaluation
    (``g`` = genus).
    """

    def __init__(self, genus: int, t: Sequence[RationalFunction], n: Dict[Tuple[int, int], RationalFunction],
                 e2: Polynomial):
        self.genus = genus
        self.t = tuple(t)
        self.n = dict(n)
        self.e2 = e2
        self.e2g = e2 ** genus
        self._tp = [self._clear(self.t[i]) for i in range(genus + 1)]
        self._np = {(i, j): self._clear(self.n[i, j]) for i in range(genus + 1) for j in range(i, genus + 1)}

    def _clear(self, r: RationalFunction) -> Polynomial:
        q, rem = divmod(r.num * self.e2g, r.den)
        if rem:
            raise ValueError("table entry is not integral after clearing e2^g")
        return q

    @property
    def desc(self) -> FieldDesc:
        return self.e2.desc

    def n_entry(self, i: int, j: int) -> RationalFunction:
        return self.n[min(i, j), max(i, j)]

    def t_cleared(self, a: Polynomial) -> Polynomial:
        """e2^g * T(a)."""
        _check_degree(a, self.genus)
        out = Polynomial(self.desc)
        for i, c in enumerate(a.coeffs):
            if c:
                out = out + self._tp[i].scale(c)
        return out

    def n_cleared(self, a: Polynomial) -> Polynomial:
        """e2^g * N(a)."""
        _check_degree(a, self.genus)
        cs = a.coeffs
        out = Polynomial(self.desc)
        for i, ci in enumerate(cs):
            if not ci:
                continue
            for j in range(i, len(cs)):
                cj = cs[j]
                if cj:
                    out = out + self._np[i, j].scale(ci * cj)
        return out


def _check_degree(a: Polynomial, genus: int):
    if a.degree > genus:
        raise DegreeTooLarge(f"deg {a.degree} exceeds genus {genus}")


def rational_maps(t1: RationalFunction, n1: RationalFunction, genus: int) -> TNTables:
    """Trace and norm tables from t1 = e1 + e2 and n1 = e1*e2."""
    if genus < 1:
        raise ValueError("genus must be positive")
    desc = t1.desc
    one = RationalFunction(Polynomial.constant(desc, 1))
    t = [RationalFunction(Polynomial.constant(desc, 2)), t1]
    npow = [one, n1]
    for i in range(1, genus):
        npow.append(n1 * npow[i])
        t.append(t1 * t[i] - n1 * t[i - 1])
    n = {}
    for i in range(genus + 1):
        n[i, i] = npow[i]
        for j in range(i + 1, genus + 1):
            n[i, j] = npow[i] * t[j - i]
    e2 = _lcm(t1.den, n1.den)
    return TNTables(genus, t, n, e2)


def _lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    return (a * b // a.gcd(b)).monic()


def apply_T(tables: TNTables, a: Polynomial) -> RationalFunction:
    """T(sum a_i x^i) = sum a_i t_i."""
    return RationalFunction(tables.t_cleared(a), tables.e2g)


def apply_N(tables: TNTables, a: Polynomial) -> RationalFunction:
    """N(sum a_i x^i) = sum_{i<=j} a_i a_j n_ij."""
    return RationalFunction(tables.n_cleared(a), tables.e2g)


@dataclass(frozen=True)
class Endomorphism:
    """A real endomorphism eta of Jac(curve), realized through its T/N tables.

    ``min_poly`` is little-endian over Z and monic.
    """

    curve: HyperellipticCurve
    tables: TNTables
    min_poly: Tuple[int, ...]
    t1: RationalFunction = field(compare=False)
    n1: RationalFunction = field(compare=False)

    @classmethod
    def from_t1_n1(cls, curve: HyperellipticCurve, t1: RationalFunction, n1: RationalFunction,
                   min_poly: Sequence[int]) -> "Endomorphism":
        return cls(curve, rational_maps(t1, n1, curve.genus), tuple(min_poly), t1, n1)

    def __call__(self, P: MumfordDivisor) -> MumfordDivisor:
        return endo_evaluate(self, P)


# ---------------------------------------------------------------------------


@dataclass
class EvalInfo:
    """What happened during one evaluation."""

    path: str = "identity"  # identity | fast | pointwise | translate
    g_degree: Optional[int] = None
    pre_reduce_degree: Optional[int] = None
    reduce_iterations: Optional[int] = None
    reason: str = ""


def _fast_image(eta: Endomorphism, P: MumfordDivisor, info: EvalInfo) -> Optional[MumfordDivisor]:
    curve, tab = eta.curve, eta.tables
    f = curve.f
    na = tab.n_cleared(P.a)  # e2^g N(a)
    tb = tab.t_cleared(P.b)  # e2^g T(b)
    nb = tab.n_cleared(P.b)  # e2^g N(b)
    a_rf = RationalFunction(na, tab.e2g)
    d_rf = RationalFunction(tb, tab.e2g)
    E = _lcm(a_rf.den, d_rf.den)
    G = a_rf.num.gcd(d_rf.num) if d_rf.num else a_rf.num.monic()
    info.g_degree = G.degree
    if G.degree != 0:
        # N(a) and T(b) share a zero: the ideal-level formula loses information there
        info.reason = "gcd(N(a), T(b)) nontrivial"
        return None
    a2 = (E // a_rf.den) * a_rf.num
    d2 = (E // d_rf.den) * d_rf.num
    try:
        inv = d2.inverse_mod(a2)
    except DivisionByZero:
        info.reason = "T(b) not invertible modulo N(a)"
        return None
    # E (f + N(b)) / G  =  E (e2^g f + e2^g N(b)) / e2^g
    h = RationalFunction(E * (tab.e2g * f + nb), tab.e2g)
    if h.is_polynomial():
        hp = h.num.scale(h.den.lc().inverse())
    else:
        try:
            hp = h.num * h.den.inverse_mod(a2)
        except DivisionByZero:
            info.reason = "denominator of f + N(b) meets the support"
            return None
    b2 = (inv * hp) % a2
    info.pre_reduce_degree = a2.degree
    if (b2 * b2 - f) % a2:
        info.reason = "result is not a valid Mumford pair"
        return None
    a3, b3, iters = _reduce(f, curve.genus, a2, b2)
    info.reduce_iterations = iters
    info.path = "fast"
    return MumfordDivisor(curve, a3, b3 % a3, check=False)


def _bump(stats: Optional[dict], key: str):
    if stats is not None:
        stats[key] = stats.get(key, 0) + 1


def endo_evaluate_traced(eta: Endomorphism, P: MumfordDivisor, *, stats: Optional[dict] = None,
                         fallback: bool = True) -> Tuple[MumfordDivisor, EvalInfo]:
    """eta(P) together with an :class:`EvalInfo` describing the route taken."""
    if P.curve != eta.curve:
        raise InvalidDivisor("divisor is not on the endomorphism's curve")
    info = EvalInfo()
    if P.is_identity():
        return P, info
    D = _fast_image(eta, P, info)
    if D is not None:
        _bump(stats, "fast")
        return D, info
    if not fallback:
        raise DegenerateSupport(info.reason)
    _bump(stats, "fallback")
    desc = eta.curve.desc
    budget = max(1, POINTWISE_FALLBACK_MAX_K // desc.k)
    try:
        D = endo_evaluate_pointwise(eta, P, max_ext_degree=min(budget, 4))
        info.path = "pointwise"
        _bump(stats, "pointwise")
        return D, info
    except (ExtensionTooLarge, DegenerateSupport):
        pass
    D = _translate(eta, P)
    info.path = "translate"
    _bump(stats, "translate")
    return D, info


def _translate(eta: Endomorphism, P: MumfordDivisor, tries: int = 32) -> MumfordDivisor:
    # eta(P) = eta(P + R) - eta(R) for any R; pick R so both land on the fast path
    rng = random.Random(0x7A11)
    for _ in range(tries):
        R = random_divisor(eta.curve, rng)
        info1, info2 = EvalInfo(), EvalInfo()
        PR = jac_add(P, R)
        if PR.is_identity() or R.is_identity():
            continue
        A = _fast_image(eta, PR, info1)
        if A is None:
            continue
        B = _fast_image(eta, R, info2)
        if B is None:
            continue
        return jac_add(A, jac_neg(B))
    raise DegenerateSupport("no translate avoided the degenerate support")


def endo_evaluate(eta: Endomorphism, P: MumfordDivisor, stats: Optional[dict] = None) -> MumfordDivisor:
    """The reduced representative of eta(P).

    Uses the ideal-level formula when N(a) and T(b) are coprime; otherwise
    falls back to the pointwise route, and failing that to translation by a
    random divisor. ``stats`` (a dict) counts the routes taken.
    """
    return endo_evaluate_traced(eta, P, stats=stats)[0]


def endo_evaluate_pointwise(eta: Endomorphism, P: MumfordDivisor, max_ext_degree: int = 4) -> MumfordDivisor:
    """eta(P) by pushing each support point through the correspondence.

    Works over the smallest extension F_{q^D}, D <= ``max_ext_degree``, that
    contains the support of P and both preimages e1, e2 of every support
    point, then restricts the (Galois-stable) sum back to F_q.
    """
    curve = eta.curve
    if P.is_identity():
        return P
    base = curve.desc
    t1, n1 = eta.t1, eta.n1
    for D in range(1, max_ext_degree + 1):
        ext = extension(base, D)
        big = ext.big
        A = ext.embed_poly(P.a)
        roots = poly_roots(A)
        if sum(root_multiplicity(A, r) for r in roots) != P.a.degree:
            continue
        T1 = RationalFunction(ext.embed_poly(t1.num), ext.embed_poly(t1.den))
        N1 = RationalFunction(ext.embed_poly(n1.num), ext.embed_poly(n1.den))
        images = []
        ok = True
        for r in roots:
            if not T1.den(r) or not N1.den(r):
                raise DegenerateSupport(f"support point u = {r!r} is a pole of t1/n1")
            s, n = T1(r), N1(r)
            root = (s * s - 4 * n).sqrt()
            if root is None:
                ok = False
                break
            half = big(2).inverse()
            e_pair = sorted([(s + root) * half, (s - root) * half], key=lambda e: e.coeffs)
            images.append((r, root_multiplicity(A, r), e_pair))
        if not ok:
            continue
        bigcurve = curve.base_change(ext)
        Bb = ext.embed_poly(P.b)
        total = bigcurve.identity()
        for r, mult, e_pair in images:
            v = Bb(r)
            img = bigcurve.identity()
            for e in e_pair:
                if bigcurve.f(e) != v * v:
                    raise DegenerateSupport("correspondence does not preserve the curve at this point")
                img = jac_add(img, point_divisor(bigcurve, e, v))
            total = jac_add(total, jac_scalar_mul(img, mult))
        try:
            a = ext.restrict_poly(total.a)
            b = ext.restrict_poly(total.b)
        except ValueError:
            raise DegenerateSupport("image is not defined over the base field") from None
        return MumfordDivisor(curve, a, b, check=False)
    raise ExtensionTooLarge(f"support and preimages need an extension of degree > {max_ext_degree}")


def apply_endo_poly(eta: Endomorphism, coeffs: Sequence[int], P: MumfordDivisor,
                    stats: Optional[dict] = None) -> MumfordDivisor:
    """(sum c_i eta^i)(P) for integer coefficients (little-endian)."""
    acc = P.curve.identity()
    power = P
    for i, c in enumerate(coeffs):
        if i:
            power = endo_evaluate(eta, power, stats)
        if c:
            acc = jac_add(acc, jac_scalar_mul(power, c))
    return acc


# ---------------------------------------------------------------------------
# JSON


def endo_to_json(eta: Endomorphism) -> dict:
    return {
        "curve": curve_to_json(eta.curve),
        "t1": ratfun_to_json(eta.t1),
        "n1": ratfun_to_json(eta.n1),
        "min_poly": [str(c) for c in eta.min_poly],
    }


def endo_from_json(obj: dict, curve: Optional[HyperellipticCurve] = None) -> Endomorphism:
    curve = curve or curve_from_json(obj["curve"])
    desc = curve.desc
    t1 = ratfun_from_json(desc, obj["t1"])
    n1 = ratfun_from_json(desc, obj["n1"])
    return Endomorphism.from_t1_n1(curve, t1, n1, [int(c) for c in obj["min_poly"]])
