"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An input violates a documented precondition (norm, grade, ...)."""


class DomainError(ValueError):
    """A matrix or vector lies outside the group it is required to belong to."""


class ResourceError(MemoryError):
    """A dense construction would exceed the configured memory budget."""
