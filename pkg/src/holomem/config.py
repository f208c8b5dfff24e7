"""Model parameters."""

from dataclasses import asdict, dataclass, fields, replace

from .errors import InvalidParameterError

RECALL_METHODS = ("top_p", "threshold", "both")


@dataclass(frozen=True)
class RecallPolicy:
    method: str = "both"
    p: int = 8
    time_threshold: float = 0.15
    retrieval_threshold: float = 0.1

    def __post_init__(self):
        if self.method not in RECALL_METHODS:
            raise InvalidParameterError(f"method must be one of {RECALL_METHODS}, got {self.method!r}")
        if isinstance(self.p, bool) or not isinstance(self.p, int) or self.p < 1:
            raise InvalidParameterError(f"p must be a positive integer, got {self.p!r}")
        for name in ("time_threshold", "retrieval_threshold"):
            value = getattr(self, name)
            if not -1.0 <= value <= 1.0:
                raise InvalidParameterError(f"{name} must lie in [-1, 1], got {value}")


@dataclass(frozen=True)
class ModelConfig:
    n: int = 1024
    seed: int = 0
    S: float = 1e-5
    sigma2: float = 1.0
    beta: float = 5.125
    recenter: bool = False
    noise_sd: float = 0.0
    retrieval_threshold: float = 0.1
    method: str = "both"
    p: int = 8
    time_threshold: float = 0.15
    center_time: bool = True

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 2:
            raise InvalidParameterError(f"n must be an integer >= 2, got {self.n!r}")
        if not self.S > 0:
            raise InvalidParameterError(f"S must be positive, got {self.S}")
        if not self.sigma2 >= 0:
            raise InvalidParameterError(f"sigma2 must be non-negative, got {self.sigma2}")
        if not self.beta > 0:
            raise InvalidParameterError(f"beta must be positive, got {self.beta}")
        if not self.noise_sd >= 0:
            raise InvalidParameterError(f"noise_sd must be non-negative, got {self.noise_sd}")
        self.policy()

    def policy(self, **overrides):
        """Recall policy from the global defaults, with per-request overrides."""
        base = RecallPolicy(self.method, self.p, self.time_threshold, self.retrieval_threshold)
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(base, **overrides) if overrides else base

    def updated(self, **changes):
        return replace(self, **changes)

    def as_dict(self):
        return asdict(self)


def field_types():
    return {f.name: f.type for f in fields(ModelConfig)}


def coerce(name, text):
    """Parse a textual parameter value for field ``name``."""
    types = field_types()
    if name not in types:
        raise InvalidParameterError(f"unknown parameter {name!r}")
    kind = types[name]
    try:
        if kind in ("bool", bool):
            lowered = text.strip().lower()
            if lowered not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(text)
            return lowered in ("true", "1", "yes")
        if kind in ("int", int):
            return int(text)
        if kind in ("float", float):
            return float(text)
        return text
    except ValueError:
        raise InvalidParameterError(f"bad value for {name}: {text!r}") from None
