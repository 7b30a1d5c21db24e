"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Base class for geometric precondition violations."""


class DegenerateLineError(GeometryError):
    """Two spanning points are projectively equal, or a line collapses."""


class InvalidDirectionError(GeometryError):
    """A direction vector/quaternion is zero where it must not be."""


class NonPureDirectionError(GeometryError):
    """An operation requires a direction orthogonal to x0 (pure quaternion)."""


class GeneratorSpaceError(GeometryError):
    """A point lies in (or too close to) the generator space: dir block vanishes.

    Carries the curve parameter ``t`` when raised during evaluation of a net.
    """

    def __init__(self, msg, t=None):
        super().__init__(msg)
        self.t = t


class DegenerateFitError(GeometryError):
    """Point set is rank deficient for the requested fit."""


class InvalidFarinError(GeometryError):
    """A Farin point does not lie in the span of its control segment."""


class OutsideSegmentError(GeometryError):
    """A Farin point lies on the segment's line but outside the segment."""


class TangentSolveError(GeometryError):
    """Tangent-parameter solve found no solution or several (non-generic input)."""


class SliceCheckError(GeometryError):
    """Numeric intersection count against the test plane failed."""


class SceneValidationError(ValueError):
    """A scene document violates the schema or a net invariant.

    ``path`` names the offending field, e.g. ``farins[0]``.
    """

    def __init__(self, msg, path=""):
        super().__init__(f"{path}: {msg}" if path else msg)
        self.path = path
