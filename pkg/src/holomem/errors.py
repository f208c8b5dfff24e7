"""Exception hierarchy for holomem."""


class HoloMemError(Exception):
    """Base class for all holomem errors."""


class InvalidDimensionError(HoloMemError, ValueError):
    pass


class InvalidArgumentError(HoloMemError, ValueError):
    pass


class DegenerateSpectrumError(HoloMemError, ValueError):
    """A vector has a Fourier coefficient too small to normalize."""


class InvalidParameterError(HoloMemError, ValueError):
    pass


class InvalidTimeError(HoloMemError, ValueError):
    pass


class InvalidTokenError(HoloMemError, ValueError):
    pass


class DuplicateSlotError(HoloMemError, ValueError):
    pass


class EmptyChunkError(HoloMemError, ValueError):
    pass


class EmptySentenceError(HoloMemError, ValueError):
    pass


class InvalidCueError(HoloMemError, ValueError):
    pass


class ChunkParseError(HoloMemError, ValueError):
    def __init__(self, message, token=None, position=None):
        super().__init__(message)
        self.token = token
        self.position = position


class RecallFailure(HoloMemError):
    """Whole-chunk recall produced no chunk.

    ``stage`` is ``"scan"`` when no candidate slots survived the time scan
    and ``"retrieve"`` when chained value retrieval failed.
    """

    def __init__(self, stage, message=None):
        super().__init__(message or f"recall failed at stage {stage!r}")
        self.stage = stage


class InsufficientDataError(HoloMemError, ValueError):
    pass


class ConvergenceError(HoloMemError, RuntimeError):
    def __init__(self, message, iterations):
        super().__init__(message)
        self.iterations = iterations


class SnapshotError(HoloMemError):
    pass


class IncompatibleSnapshotError(SnapshotError):
    def __init__(self, found, expected):
        super().__init__(
            f"snapshot version {found!r} is incompatible with supported version {expected!r}"
        )
        self.found = found
        self.expected = expected


class CorruptSnapshotError(SnapshotError):
    pass
