"""Exception types shared across the package."""


class HomsplitError(Exception):
    pass


class CapacityError(HomsplitError, ValueError):
    """Input is outside the range the implementation is willing to handle."""


class DimensionError(HomsplitError, ValueError):
    """Operands do not share the same arity and rank."""


class DomainError(HomsplitError, ValueError):
    """Argument lies outside an operation's domain."""


class UnsupportedFamilyError(DomainError):
    pass


class ConsistencyError(HomsplitError, ArithmeticError):
    """A computed series violated integrality, positivity or an identity."""


class ClassificationError(HomsplitError, ValueError):
    """A numerical tuple could not be placed in a stratum."""


class DegeneracyError(ClassificationError):
    pass


class SingularityError(HomsplitError, ValueError):
    pass
