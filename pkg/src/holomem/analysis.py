"""Figure data as CSV: 2-D PCA of lexicon vectors and time-code self-similarity."""

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConvergenceError, InsufficientDataError, InvalidParameterError
from .hrr import rng_for
from .timecode import lag_profile, self_similarity

FLOAT_FORMAT = "{:.9g}"


@dataclass(frozen=True)
class Projection2D:
    tokens: tuple
    coords: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    variances: tuple
    iterations: tuple

    def rows(self):
        return [(tok, float(x), float(y)) for tok, (x, y) in zip(self.tokens, self.coords)]


def _power_iterate(X, start, deflate, tol, max_iter):
    """Leading eigenvector of X^T X restricted to the complement of ``deflate``."""

    def project(v):
        for c in deflate:
            v = v - (c @ v) * c
        return v

    v = project(start)
    v /= np.linalg.norm(v)
    for it in range(1, max_iter + 1):
        w = project(X.T @ (X @ v))
        norm = np.linalg.norm(w)
        if norm < 1e-300:
            return v, 0.0, it
        w /= norm
        if 1.0 - abs(w @ v) < tol:
            return w, float(w @ (X.T @ (X @ w))) / max(1, X.shape[0] - 1), it
        v = w
    raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations", max_iter)


def pca_2d(vectors, seed=0, tol=1e-9, max_iter=10000):
    """Top two principal components by power iteration with deflation.

    ``vectors`` is a sequence of ``(token, vector)``. Each axis is signed so
    that its largest-magnitude coordinate is positive.
    """
    vectors = list(vectors)
    if len(vectors) < 3:
        raise InsufficientDataError(f"PCA needs at least 3 vectors, got {len(vectors)}")
    tokens = tuple(tok for tok, _ in vectors)
    X = np.stack([np.asarray(v, dtype=float) for _, v in vectors])
    if X.shape[1] < 2:
        raise InsufficientDataError("PCA needs dimension >= 2")
    Xc = X - X.mean(axis=0)
    rng = rng_for("pca", seed, X.shape[1])
    c1, var1, it1 = _power_iterate(Xc, rng.normal(size=X.shape[1]), [], tol, max_iter)
    c2, var2, it2 = _power_iterate(Xc, rng.normal(size=X.shape[1]), [c1], tol, max_iter)
    coords = Xc @ np.stack([c1, c2], axis=1)
    for axis, c in ((0, c1), (1, c2)):
        col = coords[:, axis]
        if np.any(col) and col[np.argmax(np.abs(col))] < 0:
            coords[:, axis] = -col
            c *= -1
    return Projection2D(tokens, coords, c1, c2, (var1, var2), (it1, it2))


def lexicon_vectors(store, which="m"):
    if which not in ("m", "e", "mt"):
        raise InvalidParameterError(f"unknown vector kind {which!r}")
    return [(tok, getattr(store.lexicon[tok], which)) for tok in sorted(store.lexicon)]


def _fmt(x):
    return FLOAT_FORMAT.format(float(x))


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def export_pca(projection, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["token", "x", "y"])
        for tok, x, y in projection.rows():
            w.writerow([tok, _fmt(x), _fmt(y)])
    return Path(path)


def matrix_path(path):
    path = Path(path)
    return path.with_name(f"{path.stem}_matrix{path.suffix or '.csv'}")


def export_self_similarity(bank, t_max, path):
    """Write the lag curve to ``path`` and the full matrix beside it.

    Returns ``(lag_path, matrix_path)``.
    """
    M = self_similarity(bank, t_max)
    profile = lag_profile(M)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["lag", "similarity"])
        for lag, value in enumerate(profile):
            w.writerow([lag, _fmt(value)])
    full = matrix_path(path)
    with open(full, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["t1", "t2", "similarity"])
        for i in range(t_max):
            for j in range(t_max):
                w.writerow([i + 1, j + 1, _fmt(M[i, j])])
    return Path(path), full


def interior_maxima(curve, start=1):
    """Indices i >= start with curve[i-1] < curve[i] > curve[i+1]."""
    return [i for i in range(max(1, start), len(curve) - 1) if curve[i - 1] < curve[i] > curve[i + 1]]
