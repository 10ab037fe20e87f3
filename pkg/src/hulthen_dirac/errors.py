"""Exception hierarchy shared by all modules."""


class HulthenDiracError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HulthenDiracError, ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidStateError(HulthenDiracError, ValueError):
    """The quantum numbers give a non-positive counting number."""


class NotBoundStateError(HulthenDiracError):
    """The requested energy/state does not describe a normalizable bound state."""


class DivergentComponentError(NotBoundStateError):
    """A spinor component would divide by a vanishing energy denominator."""


class NoEigenvalueError(HulthenDiracError):
    """The shooting solver found no eigenvalue with the requested node count."""


class IntegrationError(HulthenDiracError):
    """The radial integration produced non-finite values."""
