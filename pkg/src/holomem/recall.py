"""Whole-chunk recall through time-memory traces.

A chunk's encoding time is mapped into HRR space by fractional binding of
320 unitary bases, one per time-vector element. Every token in the chunk
accumulates ``time_hrr (*) sum(slot (*) value)`` in its time-memory vector.
Unbinding a partial cue from those traces gives each token a noisy copy of
the time HRR of the chunk(s) it shared with the cue; scanning stored time
steps picks out the tokens (and hence slots) that belong together.
"""

import numpy as np

from . import hrr, kernels
from .errors import InvalidCueError, RecallFailure
from .timecode import N_ELEMENTS, time_vectors


def make_time_bases(seed, n, count=N_ELEMENTS):
    return np.stack([hrr.random_unitary(f"time-base-{l}", seed, n) for l in range(count)])


class TimeEncoder:
    """Maps chunk indices to unit-norm time HRRs.

    With ``center`` set, the zero-exponent term of every base (the identity
    vector) is subtracted before normalizing. Time-vector elements cluster
    near zero, so without it every time HRR is dominated by the same
    identity component and all encodings look alike.
    """

    def __init__(self, bank, bases, center=True):
        self.bank = bank
        self.bases = np.array(bases, dtype=float)
        self.bases.setflags(write=False)
        self.n = self.bases.shape[1]
        self.center = center
        self.phases = np.stack([hrr.spectral_phases(b) for b in self.bases])
        self._cache = {}

    def encode_many(self, ts):
        ts = list(ts)
        missing = sorted({t for t in ts if t not in self._cache})
        if missing:
            T = time_vectors(self.bank, missing)
            spectrum = kernels.fractional_spectrum(T, self.phases)
            if self.center:
                spectrum = spectrum - len(self.bases)
            V = np.fft.irfft(spectrum, self.n, axis=1)
            norms = np.linalg.norm(V, axis=1, keepdims=True)
            V = np.divide(V, norms, out=np.zeros_like(V), where=norms > 0)
            for t, row in zip(missing, V):
                row.setflags(write=False)
                self._cache[t] = row
        if not ts:
            return np.zeros((0, self.n))
        return np.stack([self._cache[t] for t in ts])

    def encode(self, t):
        return self.encode_many([t])[0]


def pair_binding(store, pairs):
    """Sum of ``slot (*) value`` bindings, computed in the Fourier domain."""
    total = np.zeros(store.n // 2 + 1, dtype=complex)
    for s, v in pairs:
        total += np.fft.rfft(store.env(s)) * np.fft.rfft(store.env(v))
    return np.fft.irfft(total, store.n)


def update_time_memory(store, chunk, time_hrr):
    """Add the chunk's time trace to the time-memory of each of its tokens."""
    trace = hrr.convolve(time_hrr, pair_binding(store, chunk.pairs))
    touched = []
    for s, v in chunk.pairs:
        for tok in (s, v):
            if tok not in touched:
                touched.append(tok)
    for tok in touched:
        store.lexicon[tok].mt += trace
    return trace


def reconstruct_time(store, cue_known):
    """Noisy time HRR per token: unbind the cue from each time-memory vector."""
    cue_known = [(s, v) for s, v in cue_known]
    if not cue_known:
        raise InvalidCueError("time reconstruction needs at least one known pair")
    q = pair_binding(store, cue_known)
    energy = float(q @ q)
    q_inv_hat = np.fft.rfft(hrr.approx_inverse(q)) / (energy if energy > 0 else 1.0)
    out = []
    for tok in sorted(store.lexicon):
        mt = store.lexicon[tok].mt
        if not np.any(mt):
            continue
        out.append((tok, np.fft.irfft(np.fft.rfft(mt) * q_inv_hat, store.n)))
    return out


def _kept(scores, policy):
    keep = np.ones(scores.shape, dtype=bool)
    if policy.method in ("top_p", "both"):
        top = np.zeros(scores.shape, dtype=bool)
        top[np.argsort(-scores, kind="stable")[: policy.p]] = True
        keep &= top
    if policy.method in ("threshold", "both"):
        keep &= scores >= policy.time_threshold
    return keep


def scan_time(store, reconstructions, policy, t_now):
    """Step through stored time steps and collect candidate slots.

    Returns ``(t_star, slot_candidates)``; ``t_star`` is ``None`` when there
    is nothing to scan. Candidates are ordered by descending similarity.
    """
    if t_now < 1:
        raise ValueError(f"t_now must be >= 1, got {t_now}")
    if not reconstructions:
        return None, []
    tokens = [tok for tok, _ in reconstructions]
    R = np.stack([vec for _, vec in reconstructions])
    E = store.encoder.encode_many(range(1, t_now + 1))
    S = E @ R.T
    best_total, best_t, best_keep = -np.inf, None, None
    for row, scores in enumerate(S):
        keep = _kept(scores, policy)
        total = float(scores[keep].sum())
        if total > best_total:
            best_total, best_t, best_keep = total, row + 1, keep
    order = np.argsort(-S[best_t - 1], kind="stable")
    candidates = [tokens[i] for i in order if best_keep[i] and store.lexicon[tokens[i]].is_slot]
    return best_t, candidates


def recall_whole_chunk(store, cue_known, policy):
    """Recover a full chunk from a partial cue of known pairs.

    Raises :class:`RecallFailure` with stage ``"scan"`` if no candidate
    slots are found and ``"retrieve"`` if chained retrieval fails.
    """
    from .store import Cue

    cue = Cue(tuple(cue_known), ())
    if not cue.known:
        raise InvalidCueError("whole-chunk recall needs at least one known pair")
    if store.counter < 1:
        raise RecallFailure("scan", "memory is empty")
    _, candidates = scan_time(store, reconstruct_time(store, cue.known), policy, store.counter)
    if not candidates:
        raise RecallFailure("scan", "no candidate slots found")
    known_slots = {s for s, _ in cue.known}
    unknown = tuple(s for s in candidates if s not in known_slots)
    if not unknown:
        return list(cue.known)
    result = store.retrieve_multi(Cue(cue.known, unknown), threshold=policy.retrieval_threshold)
    if result is None:
        raise RecallFailure("retrieve", "chained retrieval failed")
    return result
