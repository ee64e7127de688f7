"""Exception hierarchy shared by all modules."""


class IrrPointsError(Exception):
    """Base class for library errors."""


class DimensionError(IrrPointsError, ValueError):
    pass


class SingularMatrixError(IrrPointsError, ArithmeticError):
    pass


class LinealityError(IrrPointsError):
    """The cone contains a nonzero linear subspace."""


class DomainError(IrrPointsError):
    """Raised for inputs outside an operation's domain (unbounded, empty, ...)."""


class UnboundedError(DomainError):
    def __init__(self, direction):
        self.direction = tuple(direction)
        super().__init__(f"polyhedron is unbounded along {list(map(str, self.direction))}")


class EmptyError(DomainError):
    pass


class DegenerateError(DomainError):
    pass


class CapacityError(DomainError):
    """A scale guard was exceeded."""
