"""
Exception types shared across the toolchain
"""


class SnnDseError(Exception):
    """Base class for every error raised on purpose by this package"""


class NetworkFormatError(SnnDseError, ValueError):
    """Network file is malformed; the message names the offending field"""


class ShapeError(SnnDseError, ValueError):
    """Array or topology shapes disagree"""


class IdxFormatError(SnnDseError, ValueError):
    """MNIST IDX file is missing, truncated or has the wrong magic number"""


class ConfigError(SnnDseError, ValueError):
    """Tech constants, calibration or exploration file is invalid"""


class TrainingError(SnnDseError, RuntimeError):
    """Training diverged (NaN/inf loss)"""


class ExplorationError(SnnDseError, RuntimeError):
    """A design point failed to evaluate"""
