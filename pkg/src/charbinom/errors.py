"""Exception hierarchy shared by the library and the CLI exit codes."""


class CharbinomError(Exception):
    """Base class for all library errors."""


class DomainError(CharbinomError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class ModulusError(DomainError):
    """A user-supplied modulus is not a monic irreducible of the right degree."""


class InvariantViolation(CharbinomError):
    """A computation contradicts a claim the library checks (e.g. a closed form)."""


class ResourceCapError(CharbinomError):
    """The requested field would exceed the configured memory cap."""
