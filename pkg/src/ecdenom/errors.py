"""Exception hierarchy shared by all modules.

``InputError`` subclasses describe bad user input (CLI exit code 1);
``InvariantViolation`` subclasses describe a broken postcondition (exit code 2).
"""


class EcDenomError(Exception):
    pass


class InputError(EcDenomError):
    pass


class InvariantViolation(EcDenomError):
    pass


class FactoringTimeout(EcDenomError):
    """The Pollard-rho iteration budget ran out before a split was found."""

    def __init__(self, n, budget):
        super().__init__(f"could not factor {n} within {budget} iterations")
        self.n = n
        self.budget = budget


class SingularCurve(InputError):
    pass


class NotOnCurve(InputError):
    pass


class GeneratorNotOnCurve(NotOnCurve):
    pass


class ParseError(InputError):
    pass


class InfinityHasNoDenominator(InputError):
    pass


class MalformedPoint(InvariantViolation):
    pass


class TorsionGenerator(InputError):
    pass


class EmptyBasis(InputError):
    pass


class InsufficientData(InputError):
    pass


class EmptyCensus(InputError):
    pass
