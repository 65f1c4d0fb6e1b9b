class LipnormError(ValueError):
    """Base class for domain errors"""


class MetricError(LipnormError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SpaceMismatchError(LipnormError):
    pass


class SubsetError(LipnormError):
    pass


class OutsideBallError(LipnormError):
    pass


class PolytopeError(LipnormError):
    pass


class DimensionCapError(LipnormError):
    def __init__(self, size, cap):
        super().__init__(f"Dimension {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class DocumentError(LipnormError):
    """Malformed input document; `field` names the offending entry"""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class ConsistencyError(RuntimeError):
    """A postcondition guaranteed by construction failed"""
