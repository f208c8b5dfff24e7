"""Holographic declarative memory with whole-chunk recall."""

from .config import ModelConfig, RecallPolicy
from .errors import HoloMemError, RecallFailure
from .kernels import BACKEND
from .store import Chunk, Cue, HDMStore, LexiconEntry

__all__ = [
    "BACKEND",
    "Chunk",
    "Cue",
    "HDMStore",
    "HoloMemError",
    "LexiconEntry",
    "ModelConfig",
    "RecallFailure",
    "RecallPolicy",
]

__version__ = "0.1.0"
