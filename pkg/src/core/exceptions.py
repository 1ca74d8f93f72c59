class TfmLabError(Exception):
    """Base class for every error raised by tfmlab."""


class ZeroDensityError(TfmLabError, ValueError):
    def __init__(self, value: float):
        super().__init__(f"Density is zero at v={value}; virtual value undefined")
        self.value = value


class NoRootError(TfmLabError, ValueError):
    """Virtual value never changes sign on the support.

    ``fallback`` holds sup{v : phi(v) <= 0}, the reserve to use instead.
    """

    def __init__(self, message: str, fallback: float):
        super().__init__(message)
        self.fallback = fallback


class OutOfRangeError(TfmLabError, ValueError):
    pass


class NumericFailureError(TfmLabError, ArithmeticError):
    pass


class InfoViolationError(TfmLabError):
    """A strategy tried to read bid contents it may not observe."""


class MonotonicityViolationError(TfmLabError, ValueError):
    pass


class BenchmarkUnavailableError(TfmLabError):
    pass


class ScenarioGapError(TfmLabError):
    pass


class ConfigError(TfmLabError, ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key
