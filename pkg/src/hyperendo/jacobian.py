"""Imaginary hyperelliptic curves v^2 = f(u) and their Jacobians.

Group elements are Mumford pairs (a, b): a monic, deg b < deg a, a | b^2 - f.
Addition is Cantor's composition (with the full gcd cascade) followed by the
classical reduction loop ``a := (f - b^2)/a; b := -b mod a``.
"""

from __future__ import annotations

import random
from typing import Optional, Tuple

from .errors import (
    BadCurve,
    CharacteristicTwo,
    EvenDegree,
    FieldTooSmall,
    InvalidDivisor,
    MixedCurves,
    NotMonic,
    NotSquarefree,
)
from .field import FieldDesc, FieldElement, desc_from_json, desc_to_json
from .poly import Polynomial, poly_from_json, poly_to_json, poly_xgcd

__all__ = [
    "HyperellipticCurve",
    "MumfordDivisor",
    "curve_new",
    "cantor_reduce",
    "jac_add",
    "jac_neg",
    "jac_double",
    "jac_scalar_mul",
    "scalar_mul_counted",
    "random_divisor",
    "point_divisor",
    "curve_to_json",
    "curve_from_json",
    "divisor_to_json",
    "divisor_from_json",
]


class HyperellipticCurve:
    """v^2 = f(u), f monic squarefree of odd degree 2g+1 >= 5."""

    __slots__ = ("desc", "f", "genus")

    def __init__(self, desc: FieldDesc, f: Polynomial):
        if desc.p == 2:
            raise CharacteristicTwo("characteristic 2 is not supported")
        if f.desc != desc:
            f = Polynomial(desc, f.coeffs)
        if not f or not f.is_monic():
            raise NotMonic(f"f = {f!r} is not monic")
        if f.degree % 2 == 0:
            raise EvenDegree(f"deg f = {f.degree} is even")
        if f.degree < 5:
            raise BadCurve(f"deg f = {f.degree}; genus must be at least 2")
        if f.gcd(f.derivative()).degree > 0:
            raise NotSquarefree(f"f = {f!r} has a repeated factor")
        self.desc = desc
        self.f = f
        self.genus = (f.degree - 1) // 2

    def __eq__(self, other):
        return isinstance(other, HyperellipticCurve) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def __repr__(self):
        return f"HyperellipticCurve(v^2 = {self.f!r} over {self.desc})"

    def identity(self) -> "MumfordDivisor":
        desc = self.desc
        return MumfordDivisor(self, Polynomial.constant(desc, 1), Polynomial(desc), check=False)

    def is_on_curve(self, u: FieldElement, v: FieldElement) -> bool:
        return v * v == self.f(u)

    def base_change(self, ext) -> "HyperellipticCurve":
        """The same curve over ``ext.big`` for an :class:`~hyperendo.poly.Extension`."""
        return HyperellipticCurve(ext.big, ext.embed_poly(self.f))


def curve_new(desc: FieldDesc, f: Polynomial) -> HyperellipticCurve:
    return HyperellipticCurve(desc, f)


class MumfordDivisor:
    """Ideal class representative (a(u), v - b(u)).

    Construction validates ``a | b^2 - f`` unless ``check=False``.
    Semi-reduced inputs (deg a > g) are allowed; arithmetic always returns
    reduced representatives.
    """

    __slots__ = ("curve", "a", "b")

    def __init__(self, curve: HyperellipticCurve, a: Polynomial, b: Polynomial, *, check: bool = True):
        if check:
            if not a:
                raise InvalidDivisor("a must be nonzero")
            if not a.is_monic():
                a = a.monic()
            b = b % a
            if (b * b - curve.f) % a:
                raise InvalidDivisor("a does not divide b^2 - f")
        self.curve = curve
        self.a = a
        self.b = b

    @property
    def degree(self) -> int:
        return self.a.degree

    def is_reduced(self) -> bool:
        return self.a.degree <= self.curve.genus

    def is_identity(self) -> bool:
        return self.a.degree == 0

    def is_valid(self) -> bool:
        return (
            self.a.is_monic()
            and (not self.b or self.b.degree < self.a.degree)
            and not ((self.b * self.b - self.curve.f) % self.a)
        )

    def __eq__(self, other):
        if not isinstance(other, MumfordDivisor):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.curve == other.curve

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"[({self.a!r}, v - ({self.b!r}))]"

    def __add__(self, other):
        return jac_add(self, other)

    def __neg__(self):
        return jac_neg(self)

    def __sub__(self, other):
        return jac_add(self, jac_neg(other))

    def __rmul__(self, k: int):
        return jac_scalar_mul(self, k)


def point_divisor(curve: HyperellipticCurve, u0: FieldElement, v0: FieldElement) -> MumfordDivisor:
    """[(u0, v0)] - [O] as (u - u0, v - v0)."""
    desc = curve.desc
    if not curve.is_on_curve(desc(u0), desc(v0)):
        raise InvalidDivisor(f"({u0}, {v0}) is not on the curve")
    return MumfordDivisor(curve, Polynomial(desc, [-desc(u0), 1]), Polynomial.constant(desc, v0), check=False)


def _reduce(f: Polynomial, g: int, a: Polynomial, b: Polynomial) -> Tuple[Polynomial, Polynomial, int]:
    count = 0
    while a.degree > g:
        a = (f - b * b).exact_div(a)
        b = (-b) % a
        count += 1
    if not a.is_monic():
        inv = a.lc().inverse()
        a = a.scale(inv)
    return a, b, count


def cantor_reduce(d: MumfordDivisor) -> Tuple[MumfordDivisor, int]:
    """Reduce a semi-reduced divisor; also return the number of loop iterations."""
    curve = d.curve
    a, b = d.a, d.b
    if not a or (b * b - curve.f) % a:
        raise InvalidDivisor("a does not divide b^2 - f")
    a, b, count = _reduce(curve.f, curve.genus, a, b)
    return MumfordDivisor(curve, a, b % a, check=False), count


def _compose(f: Polynomial, a1, b1, a2, b2):
    """Cantor composition; returns a semi-reduced (a, b)."""
    d1, e1, e2 = poly_xgcd(a1, a2)
    if d1.degree == 0:
        # coprime supports
        a = a1 * a2
        b = (e1 * a1 * b2 + e2 * a2 * b1) % a
        return a, b
    d, c1, c2 = poly_xgcd(d1, b1 + b2)
    s1, s2, s3 = c1 * e1, c1 * e2, c2
    a = (a1 * a2).exact_div(d * d)
    b = ((s1 * a1 * b2 + s2 * a2 * b1 + s3 * (b1 * b2 + f)).exact_div(d)) % a
    return a, b


def _check_same(P: MumfordDivisor, Q: MumfordDivisor):
    if P.curve is not Q.curve and P.curve != Q.curve:
        raise MixedCurves("divisors live on different curves")


def jac_add(P: MumfordDivisor, Q: MumfordDivisor) -> MumfordDivisor:
    _check_same(P, Q)
    if P.a.degree == 0:
        return Q
    if Q.a.degree == 0:
        return P
    curve = P.curve
    a, b = _compose(curve.f, P.a, P.b, Q.a, Q.b)
    a, b, _ = _reduce(curve.f, curve.genus, a, b)
    return MumfordDivisor(curve, a, b % a, check=False)


def jac_double(P: MumfordDivisor) -> MumfordDivisor:
    return jac_add(P, P)


def jac_neg(P: MumfordDivisor) -> MumfordDivisor:
    if P.a.degree == 0:
        return P
    return MumfordDivisor(P.curve, P.a, (-P.b) % P.a, check=False)


def scalar_mul_counted(P: MumfordDivisor, k: int) -> Tuple[MumfordDivisor, int, int]:
    """Left-to-right double-and-add. Returns (kP, doublings, additions)."""
    if k < 0:
        P, k = jac_neg(P), -k
    R = P.curve.identity()
    dbl = add = 0
    started = False
    for bit in bin(k)[2:]:
        if started:
            R = jac_add(R, R)
            dbl += 1
        if bit == "1":
            if started:
                R = jac_add(R, P)
                add += 1
            else:
                R = P
                started = True
    return R, dbl, add


def jac_scalar_mul(P: MumfordDivisor, k: int) -> MumfordDivisor:
    return scalar_mul_counted(P, k)[0]


def random_point(curve: HyperellipticCurve, rng: random.Random) -> Tuple[FieldElement, FieldElement]:
    """A random affine point; raises FieldTooSmall after 100*g misses in a row."""
    desc = curve.desc
    for _ in range(100 * curve.genus):
        u = desc.random(rng)
        v = curve.f(u).sqrt()
        if v is not None:
            if rng.getrandbits(1):
                v = -v
            return u, v
    raise FieldTooSmall(f"no square values of f found in {100 * curve.genus} samples")


def random_divisor(curve: HyperellipticCurve, rng_seed, npoints: Optional[int] = None) -> MumfordDivisor:
    """Sum of ``npoints`` (default g) random affine points; deterministic in the seed.

    ``rng_seed`` may be an int or an existing ``random.Random``.
    """
    rng = rng_seed if isinstance(rng_seed, random.Random) else random.Random(rng_seed)
    n = curve.genus if npoints is None else npoints
    D = curve.identity()
    for _ in range(n):
        u, v = random_point(curve, rng)
        D = jac_add(D, point_divisor(curve, u, v))
    return D


# ---------------------------------------------------------------------------
# JSON


def curve_to_json(curve: HyperellipticCurve) -> dict:
    return {"field": desc_to_json(curve.desc), "f": poly_to_json(curve.f)}


def curve_from_json(obj: dict) -> HyperellipticCurve:
    desc = desc_from_json(obj["field"])
    return HyperellipticCurve(desc, poly_from_json(desc, obj["f"]))


def divisor_to_json(D: MumfordDivisor) -> dict:
    return {"a": poly_to_json(D.a), "b": poly_to_json(D.b)}


def divisor_from_json(curve: HyperellipticCurve, obj: dict) -> MumfordDivisor:
    desc = curve.desc
    return MumfordDivisor(curve, poly_from_json(desc, obj["a"]), poly_from_json(desc, obj["b"]))
