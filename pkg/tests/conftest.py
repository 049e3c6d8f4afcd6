import pytest

from hyperendo.families import make_artin_schreier
from hyperendo.field import FieldDesc
from hyperendo.jacobian import MumfordDivisor, jac_scalar_mul
from hyperendo.poly import Polynomial

EX_MODULUS = [3, 3, 4] + [0] * 34 + [1]
EX_T = [3, 2, 1, 3, 1, 3]
EX_N = 1058791184067701689674637025340531565456011790341311
EX_M = 336894053941004885519266617028956898972619907667301


@pytest.fixture(scope="session")
def example():
    """The F_5^37 Artin-Schreier instance: (field, curve, eta, P, Q = 5P)."""
    F = FieldDesc(5, EX_MODULUS)
    t = F(EX_T)
    curve, eta = make_artin_schreier(F, 5, t)
    y = t.sqrt()
    P = MumfordDivisor(curve, Polynomial.x(F), Polynomial.constant(F, y))
    Q = jac_scalar_mul(P, 5)
    return F, curve, eta, P, Q
