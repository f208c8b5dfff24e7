"""Holographic reduced representation algebra.

Vectors are plain 1-D float64 numpy arrays. All functions are pure.
"""

import hashlib

import numpy as np

from .errors import DegenerateSpectrumError, InvalidArgumentError, InvalidDimensionError

UNITARY_TOL = 1e-6
_SPECTRUM_FLOOR = 1e-12


def _key(*parts):
    digest = hashlib.blake2b("\x1f".join(str(p) for p in parts).encode("utf-8"), digest_size=16)
    return int.from_bytes(digest.digest(), "little")


def rng_for(*parts):
    """Counter-based generator keyed by an arbitrary tuple of labels."""
    return np.random.Generator(np.random.Philox(key=_key(*parts)))


def random_vector(token, seed, n):
    """Deterministic N(0, 1/n) vector for ``(token, seed, n)``."""
    if n < 2:
        raise InvalidDimensionError(f"dimension must be >= 2, got {n}")
    if not token:
        raise InvalidArgumentError("token must be non-empty")
    return rng_for("env", seed, n, token).normal(0.0, 1.0 / np.sqrt(n), n)


def random_permutation(label, seed, n):
    if n < 2:
        raise InvalidDimensionError(f"dimension must be >= 2, got {n}")
    return rng_for("perm", seed, n, label).permutation(n)


def delta(n):
    """The identity under circular convolution."""
    d = np.zeros(n)
    d[0] = 1.0
    return d


def _check_pair(a, b):
    if a.shape != b.shape:
        raise InvalidArgumentError(f"dimension mismatch: {a.shape} vs {b.shape}")


def convolve(a, b):
    """Circular convolution via the real FFT."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _check_pair(a, b)
    n = a.shape[-1]
    return np.fft.irfft(np.fft.rfft(a) * np.fft.rfft(b), n)


def approx_inverse(a):
    """Involution: element 0 fixed, the rest reversed."""
    a = np.asarray(a, dtype=float)
    return np.concatenate((a[:1], a[:0:-1]))


def cosine(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _check_pair(a, b)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na < 1e-12 or nb < 1e-12:
        return 0.0
    return float(a @ b / (na * nb))


def normalize(a):
    a = np.asarray(a, dtype=float)
    norm = np.linalg.norm(a)
    if norm == 0.0:
        return a.copy()
    return a / norm


def permute(a, p, inverse=False):
    a = np.asarray(a, dtype=float)
    p = np.asarray(p)
    if a.shape != p.shape:
        raise InvalidArgumentError(f"permutation over {p.shape[0]} elements applied to {a.shape[0]}")
    if inverse:
        out = np.empty_like(a)
        out[p] = a
        return out
    return a[p]


def make_unitary(a):
    """Scale every Fourier coefficient to magnitude 1, keeping phases."""
    a = np.asarray(a, dtype=float)
    spectrum = np.fft.rfft(a)
    mags = np.abs(spectrum)
    if np.any(mags < _SPECTRUM_FLOOR):
        raise DegenerateSpectrumError("vector has a near-zero Fourier coefficient")
    return np.fft.irfft(spectrum / mags, a.shape[0])


def is_unitary(a, tol=UNITARY_TOL):
    return bool(np.all(np.abs(np.abs(np.fft.rfft(a)) - 1.0) <= tol))


def spectral_phases(a):
    """Principal-branch phases of the half spectrum of a unitary vector."""
    if not is_unitary(a):
        raise InvalidArgumentError("fractional powers require a unitary base")
    return np.angle(np.fft.rfft(a))


def fractional_power(base, x):
    """Raise a unitary vector to a real power in the Fourier domain.

    The group law ``base**a * base**b == base**(a+b)`` is exact only when
    the purely real DC and Nyquist coefficients are +1; see
    :func:`random_unitary`.
    """
    base = np.asarray(base, dtype=float)
    phases = spectral_phases(base)
    return np.fft.irfft(np.exp(1j * x * phases), base.shape[0])


def random_unitary(token, seed, n, max_attempts=64):
    """A unitary vector projected from an N(0, 1/n) draw.

    Draws whose DC or Nyquist coefficient is negative are rejected and
    redrawn, since fractional powers of a -1 real coefficient leave the
    real line.
    """
    for attempt in range(max_attempts):
        label = token if attempt == 0 else f"{token}#{attempt}"
        spectrum = np.fft.rfft(random_vector(label, seed, n))
        mags = np.abs(spectrum)
        if np.any(mags < _SPECTRUM_FLOOR):
            continue
        if spectrum[0].real > 0 and (n % 2 or spectrum[-1].real > 0):
            return np.fft.irfft(spectrum / mags, n)
    raise DegenerateSpectrumError(f"no usable unitary draw for {token!r} in {max_attempts} attempts")
