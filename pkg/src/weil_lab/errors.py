"""Exception hierarchy shared by the library and the CLI."""


class WeilLabError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class ValidationError(WeilLabError, ValueError):
    pass


class SizeMismatchError(ValidationError):
    pass


class InvalidGeneratorError(ValidationError):
    pass


class PreconditionError(WeilLabError):
    pass


class ResourceLimitError(WeilLabError):
    exit_code = 2

    def __init__(self, message, partial=None):
        super().__init__(message)
        # whatever finished before the limit was hit
        self.partial = partial


class ConvergenceError(WeilLabError):
    """Root finding did not converge; retry at a higher precision."""
