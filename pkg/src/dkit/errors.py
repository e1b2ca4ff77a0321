"""Exception hierarchy. Every failure a caller can act on has its own class."""


class DkitError(Exception):
    """Base class for all library errors."""


class InvalidInput(DkitError):
    """Input data failed validation (maps to CLI exit code 2)."""


class NotInvertible(DkitError, ArithmeticError):
    pass


class NotSeparable(InvalidInput):
    pass


class AmbientMismatch(DkitError, ValueError):
    pass


class FieldMismatch(DkitError, ValueError):
    pass


class FlavorViolation(InvalidInput):
    """A flavor law (antisymmetry, Jacobi, associativity, ...) fails on a basis tuple."""

    def __init__(self, law, indices, message=None):
        self.law = law
        self.indices = tuple(indices)
        super().__init__(message or f"{law} fails on basis tuple {self.indices}")


class NotAutomorphism(InvalidInput):
    pass


class NotOrderM(InvalidInput):
    pass


class UnknownName(InvalidInput, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ParseError(InvalidInput):
    pass


class DimoduleMismatch(DkitError, ValueError):
    pass


class MissingKStructure(DkitError, ValueError):
    pass


class RStructureInvalid(InvalidInput):
    pass


class NotPerfect(DkitError, ValueError):
    pass


class InnerNotContained(DkitError):
    pass


class MissingRootOfUnity(InvalidInput):
    pass


class WindowTooSmall(DkitError):
    """Windowed system did not stabilize; results are inconclusive."""


class NotRLinear(DkitError):
    pass


class CocycleInvalid(InvalidInput):
    def __init__(self, message, pair=None):
        self.pair = pair
        super().__init__(message)


class NotAForm(DkitError):
    pass


class PreconditionFailed(DkitError):
    def __init__(self, assumption, message=None):
        self.assumption = assumption
        super().__init__(message or f"precondition failed: {assumption}")
