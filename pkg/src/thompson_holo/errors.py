"""Exception types shared across the package."""


class ThompsonHoloError(Exception):
    """Base class for all domain errors."""


class NotStandardDyadic(ThompsonHoloError):
    """A partition or interval fails the a/2^n standard-dyadic form."""


class NotARefinement(ThompsonHoloError):
    """fine_grainer called with a target that does not refine the source."""


class NotPerfect(ThompsonHoloError):
    """Tensor fails the perfectness check for some bipartition."""

    def __init__(self, message, bipartition=None, deviation=None):
        super().__init__(message)
        self.bipartition = bipartition
        self.deviation = deviation


class DimensionMismatch(ThompsonHoloError):
    """Bonded tensor legs have unequal dimensions."""


class TheoryMismatch(ThompsonHoloError):
    """Two states built from different perfect tensors were combined."""


class ResourceLimit(ThompsonHoloError):
    """A requested amplitude vector exceeds the configured cap."""


class EdgeNotFound(ThompsonHoloError):
    """Pachner flip requested on an edge absent from the tessellation."""


class BoundaryEdge(ThompsonHoloError):
    """Pachner flip requested where the adjacent quadrilateral is incomplete."""


class SearchExhausted(ThompsonHoloError):
    """Flip-sequence search ran out of room within the requested depth."""


class LabelNotRepresented(ThompsonHoloError):
    """Characteristic-map lookup for a label outside the explored region."""


class NotMonotone(ThompsonHoloError):
    """Circle map fails the strict-monotonicity check."""


class DegenerateImage(ThompsonHoloError):
    """Two image points of a circle map coincide at sampling resolution."""
