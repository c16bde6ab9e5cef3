"""Exception types raised by the qsi package."""


class QSIError(ValueError):
    """Base class for all domain errors."""


class CyclicQuiver(QSIError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("quiver has an oriented cycle: " + " -> ".join(map(str, self.cycle)))


class DanglingArrow(QSIError):
    pass


class VertexMismatch(QSIError):
    pass


class NonSquare(QSIError):
    pass


class QuiverMismatch(QSIError):
    pass


class ShapeMismatch(QSIError):
    pass


class IntertwiningViolation(QSIError):
    pass


class PartitionError(QSIError):
    pass


class TooManyRows(QSIError):
    pass


class NotOrthogonal(QSIError):
    def __init__(self, value, message=None):
        self.value = value
        super().__init__(message or f"<alpha,beta> = {value}, expected 0")


class WeightNotOrthogonal(QSIError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"sigma(alpha) = {value}, expected 0")


class CodimFailure(QSIError):
    pass


class NonnegativityFailure(QSIError):
    pass


class NotNested(QSIError):
    pass


class InsufficientData(QSIError):
    pass
