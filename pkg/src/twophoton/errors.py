"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class PreconditionError(ValueError):
    """An input violates a structural precondition (e.g. Hermiticity)."""


class DegenerateMeasurementError(DomainError):
    """The conditional post-measurement state is undefined.

    Raised when the normalisation ``1 + n . xi1`` of a single-analyzer
    measurement vanishes, i.e. the outcome has probability zero.
    """


class StateFileError(ValueError):
    """A state JSON file could not be parsed or has the wrong schema."""
