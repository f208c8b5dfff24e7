"""Oscillator-based time codes.

Fifteen noisy sinusoidal oscillators of geometrically spaced frequency;
each of the 320 time-vector elements is the product of four oscillators
drawn (with a bias toward slow ones) when the bank is created.
"""

from dataclasses import dataclass
import numbers

import numpy as np

from . import kernels
from .errors import InvalidParameterError, InvalidTimeError
from .hrr import rng_for

N_OSCILLATORS = 15
N_ELEMENTS = 320
N_SELECTED = 4
MIN_ABS_THETA = 1e-12


def selection_probabilities(beta, n_oscillators=N_OSCILLATORS):
    """Discretized, truncated exponential over oscillator indices."""
    if not beta > 0:
        raise InvalidParameterError(f"beta must be positive, got {beta}")
    w = np.exp(-np.arange(n_oscillators) / beta)
    return w / w.sum()


def sample_indices(beta, count, rng):
    return rng.choice(N_OSCILLATORS, size=count, p=selection_probabilities(beta))


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class OscillatorBank:
    thetas: np.ndarray
    phis: np.ndarray
    selection: np.ndarray
    use_cos: np.ndarray
    S: float
    sigma2: float
    beta: float

    def __post_init__(self):
        for name in ("thetas", "phis", "selection", "use_cos"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        if self.thetas.shape != (N_OSCILLATORS,) or self.phis.shape != (N_OSCILLATORS,):
            raise InvalidParameterError("bank needs exactly 15 oscillators")
        if self.selection.shape != (N_ELEMENTS, N_SELECTED) or self.use_cos.shape != (N_ELEMENTS, N_SELECTED):
            raise InvalidParameterError("bank tables must be 320 x 4")

    @property
    def degenerate(self):
        """True when every oscillator is frozen (zero frequency)."""
        return bool(np.all(self.thetas == 0.0))

    def same_as(self, other):
        return (
            self.S == other.S and self.sigma2 == other.sigma2 and self.beta == other.beta
            and np.array_equal(self.thetas, other.thetas)
            and np.array_equal(self.phis, other.phis)
            and np.array_equal(self.selection, other.selection)
            and np.array_equal(self.use_cos, other.use_cos)
        )


def sample_bank(S=1e-5, sigma2=1.0, beta=5.125, seed=0, recenter=False):
    """Draw an oscillator bank.

    ``recenter`` draws the frequency multiplier from N(1, sigma2) instead of
    N(0, sigma2), so that frequencies are not sign-symmetric around zero.
    """
    if not S > 0:
        raise InvalidParameterError(f"S must be positive, got {S}")
    if not sigma2 >= 0:
        raise InvalidParameterError(f"sigma2 must be non-negative, got {sigma2}")
    if not beta > 0:
        raise InvalidParameterError(f"beta must be positive, got {beta}")
    rng = rng_for("bank", seed)
    R = rng.normal(1.0 if recenter else 0.0, np.sqrt(sigma2), N_OSCILLATORS)
    thetas = S * R * 2.0 ** np.arange(1, N_OSCILLATORS + 1)
    phis = rng.uniform(0.0, 1.0, N_OSCILLATORS) * np.pi / np.maximum(np.abs(thetas), MIN_ABS_THETA)
    selection = sample_indices(beta, (N_ELEMENTS, N_SELECTED), rng)
    use_cos = rng.random((N_ELEMENTS, N_SELECTED)) < 0.5
    return OscillatorBank(thetas, phis, selection.astype(np.int64), use_cos, float(S), float(sigma2), float(beta))


def _check_time(t):
    if isinstance(t, bool) or not isinstance(t, numbers.Integral) or t < 1:
        raise InvalidTimeError(f"time step must be a positive integer, got {t!r}")


def raw_time_vectors(bank, ts):
    for t in ts:
        _check_time(t)
    return kernels.oscillator_table(bank.thetas, bank.phis, bank.selection, bank.use_cos, np.asarray(ts, dtype=float))


def time_vectors(bank, ts):
    """Unit-norm time vectors, one row per entry of ``ts``."""
    raw = raw_time_vectors(bank, list(ts))
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    return np.divide(raw, norms, out=np.zeros_like(raw), where=norms > 0)


def time_vector(bank, t):
    _check_time(t)
    return time_vectors(bank, [t])[0]


def self_similarity(bank, t_max):
    """Dot products of time vectors for all pairs in 1..t_max."""
    if isinstance(t_max, bool) or not isinstance(t_max, numbers.Integral) or t_max < 2:
        raise InvalidParameterError(f"t_max must be an integer >= 2, got {t_max!r}")
    T = time_vectors(bank, range(1, t_max + 1))
    M = T @ T.T
    M = (M + M.T) / 2
    np.fill_diagonal(M, 1.0)
    return M


def lag_profile(M):
    """Mean similarity at each absolute lag 0..t_max-1."""
    t_max = M.shape[0]
    return np.array([np.diagonal(M, k).mean() for k in range(t_max)])
