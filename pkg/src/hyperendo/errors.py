"""Exception hierarchy.

Every domain error carries a ``kind`` (the class name) so the CLI can report
``{"error": {"kind": ..., "detail": ...}}`` without a lookup table.
"""


class HyperEndoError(ValueError):
    @property
    def kind(self) -> str:
        return type(self).__name__


class MixedFields(HyperEndoError):
    pass


class DivisionByZero(HyperEndoError, ZeroDivisionError):
    pass


class BadFieldDesc(HyperEndoError):
    pass


# curves and divisors
class BadCurve(HyperEndoError):
    pass


class NotMonic(HyperEndoError):
    pass


class EvenDegree(HyperEndoError):
    pass


class NotSquarefree(HyperEndoError):
    pass


class CharacteristicTwo(HyperEndoError):
    pass


class InvalidDivisor(HyperEndoError):
    pass


class MixedCurves(HyperEndoError):
    pass


class FieldTooSmall(HyperEndoError):
    pass


# endomorphisms
class DegreeTooLarge(HyperEndoError):
    pass


class DegenerateSupport(HyperEndoError):
    pass


class ExtensionTooLarge(HyperEndoError):
    pass


# families
class WrongCharacteristic(HyperEndoError):
    pass


class SingularCurve(HyperEndoError):
    pass


class NoTauInField(HyperEndoError):
    pass


class BadParameter(HyperEndoError):
    pass


# order / glv
class TooLarge(HyperEndoError):
    pass


class NoRoots(HyperEndoError):
    pass


class NoMatch(HyperEndoError):
    pass


class BadEigenvalue(HyperEndoError):
    pass
