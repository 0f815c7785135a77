"""Clifford algebra of R^3, SU(2) qubit groups and their tensor powers."""

from quregroups.errors import DomainError, PreconditionError, ResourceError

__version__ = "0.1.0"

__all__ = ["DomainError", "PreconditionError", "ResourceError", "__version__"]
