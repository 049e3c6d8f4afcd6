import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperendo.errors import BadFieldDesc, CharacteristicTwo, DivisionByZero, MixedFields
from hyperendo.field import (
    FieldDesc,
    desc_from_json,
    desc_to_json,
    elem_from_json,
    elem_to_json,
    field_arith,
    field_inv,
    field_pow,
    field_sqrt,
    find_irreducible,
    gf,
)

from conftest import EX_MODULUS, EX_T

EX = FieldDesc(5, EX_MODULUS)
FIELDS = [gf(5), gf(1009), gf(7, 6), gf(5, 5), gf(1009, 2), EX, gf(2 ** 61 - 1, 3)]


def test_small_examples():
    F5 = gf(5)
    assert field_arith(F5(3), F5(4), "add") == 2
    assert field_inv(F5(2)) == 3
    assert field_inv(gf(7)(3)) == 5
    assert field_arith(gf(1009)(500), gf(1009)(500), "mul") == 777
    assert field_sqrt(F5(4)) == 2
    assert field_sqrt(F5(0)) == 0
    assert field_sqrt(F5(2)) is None


def test_example_modulus_wraps():
    xi = EX.gen()
    # xi^37 = -(4 xi^2 + 3 xi + 3) = xi^2 + 2 xi + 2
    assert (xi ** 36) * xi == EX([2, 2, 1])
    inv = field_inv(xi)
    assert inv * xi == 1


def test_sqrt_of_example_t():
    t = EX(EX_T)
    y = field_sqrt(t)
    assert y is not None and y * y == t
    assert y.coeffs <= (-y).coeffs


def test_legendre_by_euler():
    F = gf(1009)
    assert field_pow(F(3), 504) in (F(1), F(-1))
    assert field_pow(F(0), 0) == 1


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_field_axioms_sampled(F):
    rng = random.Random(F.q % 1000)
    for _ in range(200):
        x, y, z = F.random(rng), F.random(rng), F.random(rng)
        assert x + y == y + x and x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x - x == 0
        if x:
            assert x * field_inv(x) == 1
        r = field_sqrt(x * x)
        assert r * r == x * x


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_fermat(F):
    rng = random.Random(1)
    for _ in range(5):
        x = F.random_nonzero(rng)
        assert x ** (F.q - 1) == 1
        assert x ** F.q == x


@settings(max_examples=200, deadline=None)
@given(st.integers(), st.integers())
def test_prime_field_matches_integers(a, b):
    p = 1009
    F = gf(p)
    assert F(a) * F(b) == (a * b) % p
    assert F(a) - F(b) == (a - b) % p


def test_errors():
    with pytest.raises(DivisionByZero):
        field_inv(gf(5)(0))
    with pytest.raises(MixedFields):
        field_arith(gf(5)(1), gf(7)(1), "add")
    with pytest.raises(CharacteristicTwo):
        FieldDesc(2)
    with pytest.raises(BadFieldDesc):
        FieldDesc(9)
    with pytest.raises(BadFieldDesc):
        FieldDesc(5, [1, 0, 1])  # x^2 + 1 = (x - 2)(x - 3) over F_5


def test_find_irreducible_is_irreducible():
    for p, k in [(3, 4), (5, 3), (7, 2), (11, 5)]:
        m = find_irreducible(p, k)
        FieldDesc(p, m)  # would raise if reducible


def test_json_roundtrip():
    t = EX(EX_T)
    d = desc_to_json(EX)
    assert d["p"] == "5" and d["ext"][-1] == "1"
    F2 = desc_from_json(d)
    assert F2 == EX
    assert elem_from_json(F2, elem_to_json(t)) == t
    assert "ext" not in desc_to_json(gf(1009))
