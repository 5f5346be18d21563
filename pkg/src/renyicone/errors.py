"""Exception types raised by renyicone."""


class RenyiConeError(ValueError):
    """Base class for invalid-input errors."""


class EmptySystemError(RenyiConeError):
    pass


class DimensionError(RenyiConeError):
    pass


class NormalizationError(RenyiConeError):
    pass


class UnsupportedOrderError(RenyiConeError):
    pass


class BudgetExceededError(RenyiConeError):
    """An explicit state or dense matrix would exceed the size budget."""


class AlphabetTooSmallError(RenyiConeError):
    """The chosen alphabet cannot accommodate the spike weight ``t <= 1``."""

    def __init__(self, message, min_size=None):
        super().__init__(message)
        self.min_size = min_size
