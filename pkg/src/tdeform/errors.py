"""Exception hierarchy shared by every module."""


class TDeformError(ValueError):
    """Base class; the CLI maps every subclass except MalformedInputError to exit 1."""


class TruncationMismatchError(TDeformError):
    pass


class DomainError(TDeformError):
    pass


class ParameterError(TDeformError):
    pass


class PreconditionError(TDeformError):
    pass


class NonConvergenceError(TDeformError):
    pass


class MalformedInputError(TDeformError):
    """Input that could not be parsed at all (bad JSON, bad rational string)."""
