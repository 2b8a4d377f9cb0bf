"""Exception hierarchy shared by all modules."""


class GeoboundError(Exception):
    """Base class for every error raised by the package."""


class DomainError(GeoboundError, ValueError):
    pass


class ModulusError(GeoboundError, ValueError):
    pass


class ShapeError(GeoboundError, ValueError):
    pass


class RootError(GeoboundError, ValueError):
    """Root is isotropic or timelike."""


class CrystallographicError(GeoboundError, ValueError):
    """Reflection in a root is not integral over the base ring."""


class DiagramError(GeoboundError, ValueError):
    pass


class SizeError(GeoboundError, ValueError):
    pass


class OrderOverflow(GeoboundError, RuntimeError):
    """Matrix order search exceeded its iteration cap."""


class RepresentationError(GeoboundError, ValueError):
    """A matrix representation contradicts the combinatorial data."""


class DataError(GeoboundError, ValueError):
    """Malformed or unknown bundled data."""
