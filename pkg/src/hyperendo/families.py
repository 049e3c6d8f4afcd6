"""Curve families carrying an explicit real endomorphism.

* Artin-Schreier: v^2 = u(u^((p-1)/2) - 1)^2 - 4t over char p, p in {5, 7}
* cyclotomic: v^2 = D_n(u) + t, n in {5, 7}, with D_n the Dickson polynomial
* Mestre genus 2 (eta^2 + eta - 1 = 0) and genus 3 (eta^3 + eta^2 - 2 eta - 1 = 0)

Each constructor returns ``(curve, endomorphism)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

from .endo import Endomorphism
from .errors import (
    BadParameter,
    CharacteristicTwo,
    NoTauInField,
    NotSquarefree,
    SingularCurve,
    WrongCharacteristic,
)
from .field import FieldDesc, FieldElement, desc_from_json, desc_to_json, elem_from_json, elem_to_json
from .jacobian import HyperellipticCurve
from .poly import Polynomial, RationalFunction, poly_roots

__all__ = [
    "FamilyParams",
    "ETA5_MIN_POLY",
    "ETA7_MIN_POLY",
    "dickson",
    "dickson_poly",
    "trace_min_poly",
    "find_tau",
    "make_artin_schreier",
    "make_cyclotomic",
    "make_mestre_g2",
    "make_mestre_g3",
    "make_family",
    "family_from_json",
    "family_to_json",
]

ETA5_MIN_POLY = (-1, 1, 1)  # x^2 + x - 1
ETA7_MIN_POLY = (-1, -2, 1, 1)  # x^3 + x^2 - 2x - 1

FAMILIES = ("artin_schreier", "cyclotomic", "mestre_g2", "mestre_g3")


@lru_cache(maxsize=None)
def _dickson_table(n: int) -> Tuple[Tuple[int, ...], ...]:
    rows = [(2,), (0, 1)]
    for k in range(2, n + 1):
        prev, prev2 = rows[k - 1], rows[k - 2]
        nxt = [0] * (k + 1)
        for i, c in enumerate(prev):
            nxt[i + 1] += c
        for i, c in enumerate(prev2):
            nxt[i] -= c
        rows.append(tuple(nxt))
    return tuple(rows)


def dickson(n: int) -> List[int]:
    """Little-endian integer coefficients of D_n(u, 1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_dickson_table(max(n, 1))[n])


def dickson_poly(desc: FieldDesc, n: int) -> Polynomial:
    return Polynomial(desc, dickson(n))


def trace_min_poly(n: int) -> Tuple[int, ...]:
    """Minimal polynomial of 2cos(2pi/n) (little-endian), n in {5, 7}."""
    if n == 5:
        return (-1, 1, 1)
    if n == 7:
        return (-1, -2, 1, 1)
    raise BadParameter(f"n = {n}: only 5 and 7 are supported")


def find_tau(desc: FieldDesc, n: int, seed: int = 0) -> FieldElement:
    """Smallest (by coefficient tuple) root of the trace polynomial in the field."""
    h = Polynomial(desc, trace_min_poly(n))
    roots = poly_roots(h, random.Random(seed))
    if not roots:
        raise NoTauInField(f"{h!r} has no root in {desc}")
    return roots[0]


def _curve(desc: FieldDesc, f: Polynomial) -> HyperellipticCurve:
    try:
        return HyperellipticCurve(desc, f)
    except NotSquarefree as exc:
        raise SingularCurve(str(exc)) from None


def _rf(num: Polynomial, den: Optional[Polynomial] = None) -> RationalFunction:
    return RationalFunction(num, den)


def make_artin_schreier(desc: FieldDesc, p: int, t) -> Tuple[HyperellipticCurve, Endomorphism]:
    if p not in (5, 7):
        raise BadParameter(f"p = {p}: only 5 and 7 are supported")
    if desc.p != p:
        raise WrongCharacteristic(f"field characteristic {desc.p} != {p}")
    t = desc(t)
    if not t:
        raise SingularCurve("t = 0 gives a singular model")
    u = Polynomial.x(desc)
    f = u * (u ** ((p - 1) // 2) - 1) ** 2 - 4 * t
    curve = _curve(desc, f)
    t1 = _rf((u + 1).scale(2))
    n1 = _rf((u - 1) ** 2)
    mp = ETA5_MIN_POLY if p == 5 else ETA7_MIN_POLY
    return curve, Endomorphism.from_t1_n1(curve, t1, n1, mp)


def make_cyclotomic(desc: FieldDesc, n: int, t, tau=None) -> Tuple[HyperellipticCurve, Endomorphism]:
    if n not in (5, 7):
        raise BadParameter(f"n = {n}: only 5 and 7 are supported")
    if desc.p == 2:
        raise CharacteristicTwo("characteristic 2 is not supported")
    if desc.p == n:
        raise WrongCharacteristic(f"characteristic must not divide {2 * n}")
    mp = trace_min_poly(n)
    if tau is None:
        tau = find_tau(desc, n)
    else:
        tau = desc(tau)
        if Polynomial(desc, mp)(tau):
            raise NoTauInField(f"tau = {tau!r} is not a root of the trace polynomial")
    u = Polynomial.x(desc)
    f = dickson_poly(desc, n) + desc(t)
    curve = _curve(desc, f)
    t1 = _rf(u.scale(tau))
    n1 = _rf(u * u + (tau * tau - 4))
    return curve, Endomorphism.from_t1_n1(curve, t1, n1, mp)


def _check_s(desc: FieldDesc, s) -> FieldElement:
    s = desc(s)
    if s == 0 or s == 1:
        raise BadParameter(f"s = {s!r} degenerates the correspondence")
    return s


def mestre_g2_f(desc: FieldDesc, s, t) -> Polynomial:
    s, t = desc(s), desc(t)
    u = Polynomial.x(desc)
    return u ** 4 * (u - s) - (u + 1).scale(s) * (u - s) ** 3 + u ** 3 * (s ** 3) - u ** 2 * (u - s) ** 2 * t


def make_mestre_g2(desc: FieldDesc, s, t) -> Tuple[HyperellipticCurve, Endomorphism]:
    s = _check_s(desc, s)
    curve = _curve(desc, mestre_g2_f(desc, s, t))
    u = Polynomial.x(desc)
    u2 = u * u
    t1 = _rf((u.scale(s - 1) - s).scale(-s), u2)
    n1 = _rf((u + s).scale(s * s), u2)
    return curve, Endomorphism.from_t1_n1(curve, t1, n1, ETA5_MIN_POLY)


def mestre_g3_f(desc: FieldDesc, s, t) -> Polynomial:
    s, t = desc(s), desc(t)
    u = Polynomial.x(desc)
    s1 = s - 1
    psi = u * (u - s ** 3 + s ** 2) * (u - s ** 2 + s)
    c5 = s * s1 * (s ** 2 - s + 1) * (s ** 3 + 2 * s ** 2 - 5 * s + 1)
    c4 = -(s ** 3) * s1 ** 2 * (6 * s ** 4 - 11 * s ** 3 + 12 * s ** 2 - 11 * s - 1)
    c3 = s ** 4 * s1 ** 3 * (s ** 2 - s - 1) * (s ** 3 + 2 * s ** 2 + 6 * s + 1)
    c2 = -(s ** 6) * s1 ** 4 * (s + 1) * (3 * s ** 2 - 5 * s - 3)
    c1 = s ** 8 * s1 ** 5 * (s ** 2 - 3 * s - 3)
    c0 = s ** 10 * s1 ** 6
    phi = u * psi * psi + Polynomial(desc, [c0, c1, c2, c3, c4, c5])
    return phi - psi * psi * t


def make_mestre_g3(desc: FieldDesc, s, t) -> Tuple[HyperellipticCurve, Endomorphism]:
    s = _check_s(desc, s)
    curve = _curve(desc, mestre_g3_f(desc, s, t))
    u = Polynomial.x(desc)
    u2 = u * u
    s1 = s - 1
    c = s * s * s1  # s^2 (s - 1)
    t1 = _rf((u.scale(s * s - s - 1) + c).scale(c), u2)
    n1 = _rf((u + c).scale(-(c * c)), u2)
    return curve, Endomorphism.from_t1_n1(curve, t1, n1, ETA7_MIN_POLY)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyParams:
    family: str
    p_or_n: int
    t: FieldElement
    s: Optional[FieldElement] = None
    tau: Optional[FieldElement] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise BadParameter(f"unknown family {self.family!r}")


def make_family(desc: FieldDesc, params: FamilyParams) -> Tuple[HyperellipticCurve, Endomorphism]:
    fam = params.family
    if fam == "artin_schreier":
        return make_artin_schreier(desc, params.p_or_n, params.t)
    if fam == "cyclotomic":
        return make_cyclotomic(desc, params.p_or_n, params.t, params.tau)
    if params.s is None:
        raise BadParameter("Mestre families need s")
    if fam == "mestre_g2":
        return make_mestre_g2(desc, params.s, params.t)
    return make_mestre_g3(desc, params.s, params.t)


def _opt_elem(desc: FieldDesc, obj):
    return None if obj is None else elem_from_json(desc, obj)


def family_from_json(obj: dict) -> Tuple[FieldDesc, FamilyParams]:
    """Parse ``{"family", "n", "t", "tau", "s", "field"}``.

    ``n`` is the prime p for Artin-Schreier and the cyclotomic index; Mestre
    families ignore it (genus fixes it).
    """
    desc = desc_from_json(obj["field"])
    fam = obj["family"]
    n = obj.get("n", obj.get("p"))
    if n is None:
        n = {"mestre_g2": 5, "mestre_g3": 7}.get(fam, desc.p)
    params = FamilyParams(
        family=fam,
        p_or_n=int(n),
        t=elem_from_json(desc, obj["t"]),
        s=_opt_elem(desc, obj.get("s")),
        tau=_opt_elem(desc, obj.get("tau")),
    )
    return desc, params


def family_to_json(desc: FieldDesc, params: FamilyParams) -> dict:
    return {
        "family": params.family,
        "n": params.p_or_n,
        "t": elem_to_json(params.t),
        "tau": None if params.tau is None else elem_to_json(params.tau),
        "s": None if params.s is None else elem_to_json(params.s),
        "field": desc_to_json(desc),
    }
