"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ShapeError(ValueError):
    """Tensor orders, alphabet sizes or coordinate frames do not match."""


class ResourceError(RuntimeError):
    """A dense computation would exceed the configured size limit."""


class PreconditionError(ValueError):
    """An input violates a documented precondition (e.g. not in the cycle space)."""


class EigenvectorsUnavailable(DomainError):
    """Raised by the Toeplitz oracle when sigma * tau == 0.

    The eigenvalues are still well defined and are attached as ``eigenvalues``.
    """

    def __init__(self, message, eigenvalues):
        super().__init__(message)
        self.eigenvalues = eigenvalues
