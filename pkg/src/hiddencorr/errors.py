"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class InvalidStateError(ValueError):
    """Input fails the invariants of a probability vector or density matrix."""
