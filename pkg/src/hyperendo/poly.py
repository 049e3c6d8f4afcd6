"""Univariate polynomials and rational functions over a :class:`FieldDesc`.

Coefficients are held in the field's raw representation (``int`` or
``tuple``) to keep the inner loops free of wrapper objects; the public
accessors hand out :class:`FieldElement` values.

Also here: root finding by equal-degree splitting, and the embedding of a
field into a single-step extension of larger degree (needed to enumerate
points over F_{q^e} and to factor Mumford ideals for the pointwise oracle).
"""

from __future__ import annotations

import math
import random
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import DivisionByZero, MixedFields
from .field import FieldDesc, FieldElement, elem_from_json, elem_to_json, find_irreducible

__all__ = [
    "NEG_INF",
    "Polynomial",
    "RationalFunction",
    "poly_divmod",
    "poly_xgcd",
    "poly_eval",
    "ratfun_arith",
    "poly_roots",
    "Extension",
    "extension",
    "poly_to_json",
    "poly_from_json",
    "ratfun_to_json",
    "ratfun_from_json",
]

#: degree of the zero polynomial; compares below every int, never used as an index
NEG_INF = -math.inf

Coeff = Union[FieldElement, int]


class Polynomial:
    __slots__ = ("desc", "_c")

    def __init__(self, desc: FieldDesc, coeffs: Iterable[Coeff] = ()):
        self.desc = desc
        raw = [desc(c)._v for c in coeffs]
        zero = desc._zero._v
        while raw and raw[-1] == zero:
            raw.pop()
        self._c = tuple(raw)

    @classmethod
    def _from_raw(cls, desc: FieldDesc, raw: Sequence) -> "Polynomial":
        zero = desc._zero._v
        raw = list(raw)
        while raw and raw[-1] == zero:
            raw.pop()
        out = object.__new__(cls)
        out.desc = desc
        out._c = tuple(raw)
        return out

    @classmethod
    def x(cls, desc: FieldDesc) -> "Polynomial":
        return cls._from_raw(desc, (desc._zero._v, desc._one._v))

    @classmethod
    def constant(cls, desc: FieldDesc, c: Coeff) -> "Polynomial":
        return cls._from_raw(desc, (desc(c)._v,))

    @classmethod
    def from_roots(cls, desc: FieldDesc, roots: Iterable[FieldElement]) -> "Polynomial":
        out = cls.constant(desc, 1)
        u = cls.x(desc)
        for r in roots:
            out = out * (u - cls.constant(desc, r))
        return out

    # -- basic accessors -----------------------------------------------
    @property
    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INF

    @property
    def coeffs(self) -> Tuple[FieldElement, ...]:
        return tuple(FieldElement(self.desc, v) for v in self._c)

    def __getitem__(self, i: int) -> FieldElement:
        if 0 <= i < len(self._c):
            return FieldElement(self.desc, self._c[i])
        return self.desc.zero()

    def __len__(self):
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def lc(self) -> FieldElement:
        if not self._c:
            return self.desc.zero()
        return FieldElement(self.desc, self._c[-1])

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == self.desc._one._v

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.desc == other.desc and self._c == other._c
        if isinstance(other, (int, FieldElement)):
            return self == Polynomial.constant(self.desc, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.desc, self._c))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = repr(c)
            if " " in cs:
                cs = f"({cs})"
            mon = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
            if not mon:
                terms.append(cs)
            elif c == 1:
                terms.append(mon)
            else:
                terms.append(f"{cs}*{mon}")
        return " + ".join(reversed(terms)) if terms else "0"

    # -- ring operations -----------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.desc is not self.desc and other.desc != self.desc:
                raise MixedFields(f"{self.desc} vs {other.desc}")
            return other
        if isinstance(other, (int, FieldElement)):
            return Polynomial.constant(self.desc, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        desc = self.desc
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = desc._add(out[i], v)
        return Polynomial._from_raw(desc, out)

    __radd__ = __add__

    def __neg__(self):
        desc = self.desc
        return Polynomial._from_raw(desc, [desc._neg(v) for v in self._c])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, FieldElement) or isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        desc = self.desc
        a, b = self._c, other._c
        if not a or not b:
            return Polynomial._from_raw(desc, ())
        if desc.k == 1:
            p = desc.p
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return Polynomial._from_raw(desc, [v % p for v in out])
        mul, add = desc._mul, desc._add
        out = [desc._zero._v] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] = add(out[i + j], mul(ai, bj))
        return Polynomial._from_raw(desc, out)

    __rmul__ = __mul__

    def scale(self, c: Coeff) -> "Polynomial":
        desc = self.desc
        if isinstance(c, int):
            c = c % desc.p
            return Polynomial._from_raw(desc, [desc._scale(v, c) for v in self._c])
        cv = desc(c)._v
        return Polynomial._from_raw(desc, [desc._mul(v, cv) for v in self._c])

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.desc, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, n: int) -> "Polynomial":
        """Multiply by u^n."""
        if not self._c:
            return self
        return Polynomial._from_raw(self.desc, (self.desc._zero._v,) * n + self._c)

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = poly_divmod(self, other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def divides(self, other: "Polynomial") -> bool:
        return not (other % self)

    def monic(self) -> "Polynomial":
        if not self._c or self.is_monic():
            return self
        return self.scale(self.lc().inverse())

    def derivative(self) -> "Polynomial":
        desc = self.desc
        return Polynomial._from_raw(desc, [desc._scale(v, i % desc.p) for i, v in enumerate(self._c)][1:])

    def __call__(self, x: Coeff) -> FieldElement:
        return poly_eval(self, x)

    def compose(self, inner: "Polynomial") -> "Polynomial":
        out = Polynomial._from_raw(self.desc, ())
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def pow_mod(self, e: int, m: "Polynomial") -> "Polynomial":
        result = Polynomial.constant(self.desc, 1) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def inverse_mod(self, m: "Polynomial") -> "Polynomial":
        g, s, _ = poly_xgcd(self, m)
        if g.degree != 0:
            raise DivisionByZero("not invertible modulo the given polynomial")
        return s % m

    def map_coeffs(self, fn, desc: FieldDesc) -> "Polynomial":
        return Polynomial(desc, [fn(c) for c in self.coeffs])


def poly_divmod(a: Polynomial, b: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Schoolbook division: a = q*b + r with deg r < deg b."""
    if isinstance(b, (int, FieldElement)):
        b = Polynomial.constant(a.desc, b)
    if b.desc is not a.desc and b.desc != a.desc:
        raise MixedFields(f"{a.desc} vs {b.desc}")
    if not b._c:
        raise DivisionByZero("polynomial division by zero")
    desc = a.desc
    db = len(b._c) - 1
    if len(a._c) <= db:
        return Polynomial._from_raw(desc, ()), a
    bc = b._c
    if desc.k == 1:
        p = desc.p
        inv = pow(bc[-1], -1, p)
        rem = list(a._c)
        q = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] % p
            if c:
                c = c * inv % p
                q[i - db] = c
                off = i - db
                for j in range(db):
                    rem[off + j] -= c * bc[j]
        return (
            Polynomial._from_raw(desc, q),
            Polynomial._from_raw(desc, [v % p for v in rem[:db]]),
        )
    mul, sub = desc._mul, desc._sub
    monic = bc[-1] == desc._one._v
    inv = None if monic else desc._inv(bc[-1])
    rem = list(a._c)
    zero = desc._zero._v
    q = [zero] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c != zero:
            if not monic:
                c = mul(c, inv)
            q[i - db] = c
            off = i - db
            for j in range(db):
                if bc[j] != zero:
                    rem[off + j] = sub(rem[off + j], mul(c, bc[j]))
    return Polynomial._from_raw(desc, q), Polynomial._from_raw(desc, rem[:db])


def poly_xgcd(a: Polynomial, b: Polynomial) -> Tuple[Polynomial, Polynomial, Polynomial]:
    """Return (g, s, t) with g = s*a + t*b and g the monic gcd."""
    desc = a.desc
    if b.desc != desc:
        raise MixedFields(f"{a.desc} vs {b.desc}")
    zero = Polynomial._from_raw(desc, ())
    one = Polynomial.constant(desc, 1)
    if not a and not b:
        raise ValueError("xgcd of two zero polynomials")
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_monic():
        return r0, s0, t0
    inv = r0.lc().inverse()
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_eval(a: Polynomial, x: Coeff) -> FieldElement:
    """Horner evaluation."""
    desc = a.desc
    xv = desc(x)._v
    acc = desc._zero._v
    mul, add = desc._mul, desc._add
    for c in reversed(a._c):
        acc = add(mul(acc, xv), c)
    return FieldElement(desc, acc)


# ---------------------------------------------------------------------------


class RationalFunction:
    """num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Optional[Polynomial] = None, *, reduce: bool = True):
        desc = num.desc
        if den is None:
            den = Polynomial.constant(desc, 1)
        if den.desc != desc:
            raise MixedFields(f"{num.desc} vs {den.desc}")
        if not den:
            raise DivisionByZero("zero denominator")
        if reduce:
            if not num:
                den = Polynomial.constant(desc, 1)
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num, den = num // g, den // g
            lc = den.lc()
            if lc != 1:
                inv = lc.inverse()
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def desc(self) -> FieldDesc:
        return self.num.desc

    @classmethod
    def coerce(cls, x, desc: FieldDesc) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Polynomial):
            return cls(x, reduce=False)
        return cls(Polynomial.constant(desc, x), reduce=False)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (Polynomial, int, FieldElement)):
            other = RationalFunction.coerce(other, self.desc)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.is_polynomial():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"

    def __add__(self, other):
        other = RationalFunction.coerce(other, self.desc)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other, self.desc))

    def __rsub__(self, other):
        return RationalFunction.coerce(other, self.desc) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return RationalFunction(self.num.scale(other), self.den)
        other = RationalFunction.coerce(other, self.desc)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFunction.coerce(other, self.desc)
        if not other.num:
            raise DivisionByZero("division by the zero function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, e: int):
        if e < 0:
            return RationalFunction(self.den, self.num) ** (-e)
        return RationalFunction(self.num ** e, self.den ** e, reduce=False)

    def __call__(self, x: Coeff) -> FieldElement:
        d = self.den(x)
        if not d:
            raise DivisionByZero("evaluation at a pole")
        return self.num(x) / d


def ratfun_arith(x: RationalFunction, y: RationalFunction, op: str) -> RationalFunction:
    if x.desc != y.desc:
        raise MixedFields(f"{x.desc} vs {y.desc}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# roots and extensions


def _split(g: Polynomial, rng: random.Random) -> List[FieldElement]:
    # g monic, squarefree, splits into distinct linear factors
    if g.degree == 1:
        return [-g[0]]
    desc = g.desc
    u = Polynomial.x(desc)
    e = (desc.q - 1) // 2
    while True:
        delta = desc.random(rng)
        w = (u + delta).pow_mod(e, g) - 1
        d = g.gcd(w)
        if 0 < d.degree < g.degree:
            return _split(d, rng) + _split(g // d, rng)


def poly_roots(h: Polynomial, rng: Optional[random.Random] = None) -> List[FieldElement]:
    """Distinct roots of h in its own field, sorted by coefficient tuple."""
    if not h:
        raise ValueError("roots of the zero polynomial")
    if h.degree <= 0:
        return []
    desc = h.desc
    rng = rng or random.Random(0)
    h = h.monic()
    u = Polynomial.x(desc)
    frob = u.pow_mod(desc.q, h)
    g = h.gcd(frob - u)
    if g.degree <= 0:
        return []
    return sorted(_split(g, rng), key=lambda r: r.coeffs)


def root_multiplicity(h: Polynomial, r: FieldElement) -> int:
    lin = Polynomial(h.desc, [-r, 1])
    m = 0
    while h and not (h % lin):
        h = h // lin
        m += 1
    return m


class Extension:
    """F = ``base`` embedded in ``big`` = F_{p^(k*degree)}.

    ``embed`` maps base elements up; ``restrict`` maps back and raises
    ``ValueError`` for elements outside the image.
    """

    def __init__(self, base: FieldDesc, degree: int):
        self.base = base
        self.degree = degree
        p, k = base.p, base.k
        K = k * degree
        self.big = base if degree == 1 else FieldDesc(p, find_irreducible(p, K) if K > 1 else None)
        if degree == 1:
            self._images = None
            return
        if k == 1:
            self._images = None
        else:
            m = Polynomial(self.big, [self.big(c) for c in base.modulus])
            root = poly_roots(m)[0]
            powers = [self.big.one()]
            for _ in range(k - 1):
                powers.append(powers[-1] * root)
            self._images = powers
            self._left_inverse()

    def _left_inverse(self):
        # Solve c * M = y for c where rows of M are coeffs of root^i; precompute
        # a reduced echelon form of M^T augmented with the identity.
        p = self.base.p
        k, K = self.base.k, self.big.k
        cols = [list(im.coeffs) for im in self._images]  # k vectors of length K
        # matrix A (K x k): A[r][i] = cols[i][r]; row-reduce [A | I_K]
        rows = [[cols[i][r] for i in range(k)] + [1 if j == r else 0 for j in range(K)] for r in range(K)]
        piv_row = 0
        for c in range(k):
            sel = next(r for r in range(piv_row, K) if rows[r][c] % p)
            rows[piv_row], rows[sel] = rows[sel], rows[piv_row]
            inv = pow(rows[piv_row][c], -1, p)
            rows[piv_row] = [v * inv % p for v in rows[piv_row]]
            for r in range(K):
                if r != piv_row and rows[r][c] % p:
                    f = rows[r][c]
                    rows[r] = [(v - f * w) % p for v, w in zip(rows[r], rows[piv_row])]
            piv_row += 1
        self._solve = [row[k:] for row in rows[:k]]
        self._kernel = [row[k:] for row in rows[k:]]

    def embed(self, x: FieldElement) -> FieldElement:
        if self.degree == 1:
            return self.base(x)
        if self._images is None:
            return self.big(x.to_int() if isinstance(x, FieldElement) else int(x))
        x = self.base(x)
        acc = self.big.zero()
        for c, im in zip(x.coeffs, self._images):
            if c:
                acc = acc + im * c
        return acc

    def restrict(self, y: FieldElement) -> FieldElement:
        if self.degree == 1:
            return y
        p = self.base.p
        ys = y.coeffs
        if self._images is None:
            if any(ys[1:]):
                raise ValueError("element is not in the base field")
            return self.base(ys[0])
        for row in self._kernel:
            if sum(a * b for a, b in zip(row, ys)) % p:
                raise ValueError("element is not in the base field")
        return self.base.from_coeffs(sum(a * b for a, b in zip(row, ys)) % p for row in self._solve)

    def embed_poly(self, a: Polynomial) -> Polynomial:
        return Polynomial(self.big, [self.embed(c) for c in a.coeffs])

    def restrict_poly(self, a: Polynomial) -> Polynomial:
        return Polynomial(self.base, [self.restrict(c) for c in a.coeffs])


@lru_cache(maxsize=64)
def extension(base: FieldDesc, degree: int) -> Extension:
    return Extension(base, degree)


# ---------------------------------------------------------------------------
# JSON

def poly_to_json(a: Polynomial) -> dict:
    return {"coeffs": [elem_to_json(c) for c in a.coeffs]}


def poly_from_json(desc: FieldDesc, obj) -> Polynomial:
    coeffs = obj["coeffs"] if isinstance(obj, dict) else obj
    return Polynomial(desc, [elem_from_json(desc, c) for c in coeffs])


def ratfun_to_json(r: RationalFunction) -> dict:
    return {"num": poly_to_json(r.num), "den": poly_to_json(r.den)}


def ratfun_from_json(desc: FieldDesc, obj) -> RationalFunction:
    if "num" not in obj:
        return RationalFunction(poly_from_json(desc, obj))
    return RationalFunction(poly_from_json(desc, obj["num"]), poly_from_json(desc, obj["den"]))
