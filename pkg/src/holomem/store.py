"""Token lexicon and holographic associative memory.

Each unique token owns three vectors: a fixed random environment vector
``e``, a memory vector ``m`` accumulating its associations, and a
time-memory vector ``mt`` used for whole-chunk recall. Chunks themselves
are never stored.
"""

from dataclasses import dataclass, field
import logging

import numpy as np

from . import hrr
from .config import ModelConfig
from .errors import (
    DuplicateSlotError,
    EmptyChunkError,
    EmptySentenceError,
    InvalidCueError,
    InvalidTokenError,
)
from .recall import TimeEncoder, make_time_bases, update_time_memory
from .timecode import sample_bank

log = logging.getLogger(__name__)


def normalize_token(token):
    if not isinstance(token, str):
        raise InvalidTokenError(f"token must be a string, got {type(token).__name__}")
    norm = token.strip().lower()
    if not norm:
        raise InvalidTokenError("token is empty after normalization")
    return norm


@dataclass(eq=False)
class LexiconEntry:
    token: str
    e: np.ndarray
    m: np.ndarray
    mt: np.ndarray
    is_slot: bool = False
    count: int = 0


@dataclass(frozen=True)
class Chunk:
    pairs: tuple
    index: int

    @property
    def slots(self):
        return tuple(s for s, _ in self.pairs)

    @property
    def values(self):
        return tuple(v for _, v in self.pairs)


@dataclass(frozen=True)
class Cue:
    """A retrieval request: known ``(slot, value)`` pairs plus unknown slots."""

    known: tuple = ()
    unknown: tuple = ()

    def __post_init__(self):
        known = tuple((normalize_token(s), normalize_token(v)) for s, v in self.known)
        unknown = tuple(normalize_token(s) for s in self.unknown)
        slots = [s for s, _ in known] + list(unknown)
        if not slots:
            raise InvalidCueError("cue has no slots")
        if len(set(slots)) != len(slots):
            raise InvalidCueError("cue repeats a slot")
        object.__setattr__(self, "known", known)
        object.__setattr__(self, "unknown", unknown)


def _check_pairs(pairs):
    pairs = [(normalize_token(s), normalize_token(v)) for s, v in pairs]
    if not pairs:
        raise EmptyChunkError("chunk needs at least one slot:value pair")
    seen = set()
    for s, _ in pairs:
        if s in seen:
            raise DuplicateSlotError(f"slot {s!r} appears twice in chunk")
        seen.add(s)
    return tuple(pairs)


class HDMStore:
    """Holographic declarative memory with time-memory traces.

    Writes (``add_chunk``, ``ingest_sentence``) must be serialized by the
    caller; reads may run concurrently between writes.
    """

    def __init__(self, config=None, *, bank=None, time_bases=None):
        self.config = config if config is not None else ModelConfig()
        cfg = self.config
        self.n = cfg.n
        self.seed = cfg.seed
        self.bank = bank if bank is not None else sample_bank(
            cfg.S, cfg.sigma2, cfg.beta, cfg.seed, recenter=cfg.recenter
        )
        self._time_bases = time_bases
        self._encoder = None
        self.placeholder = hrr.rng_for("placeholder", cfg.seed, cfg.n).normal(0.0, 1.0 / np.sqrt(cfg.n), cfg.n)
        self.right = hrr.random_permutation("right", cfg.seed, cfg.n)
        self.lexicon = {}
        self.counter = 0
        self.noise_draws = 0

    @property
    def encoder(self):
        """Time-HRR encoder; its 320 bases are generated on first use."""
        if self._encoder is None:
            if self._time_bases is None:
                self._time_bases = make_time_bases(self.seed, self.n)
            self._encoder = TimeEncoder(self.bank, self._time_bases, center=self.config.center_time)
        return self._encoder

    # -- lexicon -----------------------------------------------------------

    def env(self, token):
        entry = self.lexicon.get(token)
        if entry is not None:
            return entry.e
        return hrr.random_vector(token, self.seed, self.n)

    def intern_token(self, token, is_slot=False):
        token = normalize_token(token)
        entry = self.lexicon.get(token)
        if entry is None:
            entry = LexiconEntry(token, hrr.random_vector(token, self.seed, self.n), np.zeros(self.n), np.zeros(self.n))
            self.lexicon[token] = entry
        entry.count += 1
        if is_slot:
            entry.is_slot = True
        return entry

    def list_tokens(self):
        return [(tok, self.lexicon[tok].is_slot, self.lexicon[tok].count) for tok in sorted(self.lexicon)]

    def vector_count(self):
        """Vectors held by the lexicon: exactly three per unique token."""
        return 3 * len(self.lexicon)

    # -- encoding ----------------------------------------------------------

    def _encoding_noise(self, t, position):
        sd = self.config.noise_sd
        if sd <= 0:
            return 0.0
        return hrr.rng_for("encode-noise", self.seed, t, position).normal(0.0, sd / np.sqrt(self.n), self.n)

    def add_chunk(self, pairs, encode_time=True):
        """Encode a chunk of ``(slot, value)`` pairs and return it."""
        pairs = _check_pairs(pairs)
        self.counter += 1
        chunk = Chunk(pairs, self.counter)
        for s, v in pairs:
            self.intern_token(s, is_slot=True)
            self.intern_token(v)

        n = self.n
        phi_hat = np.fft.rfft(self.placeholder)
        pair_hats = [np.fft.rfft(self.env(s)) * np.fft.rfft(self.env(v)) for s, v in pairs]
        total_pairs = np.sum(pair_hats, axis=0)
        for i, (s, v) in enumerate(pairs):
            slot_probe = np.fft.rfft(self.env(s)) * phi_hat
            others = total_pairs - pair_hats[i]
            delta = np.fft.irfft(slot_probe * (1.0 + others), n)
            self.lexicon[v].m += delta + self._encoding_noise(chunk.index, i)

        if encode_time:
            update_time_memory(self, chunk, self.encoder.encode(chunk.index))
        return chunk

    def ingest_sentence(self, tokens, encode_time=False, max_distance=None):
        """Encode every left-to-right word pair of a sentence.

        Returns the number of ordered pairs encoded. ``max_distance`` limits
        pairs to words at most that many positions apart.
        """
        words = [normalize_token(w) for w in tokens]
        if not words:
            raise EmptySentenceError("sentence has no tokens")
        self.counter += 1
        for w in words:
            self.intern_token(w)

        n = self.n
        spectra = {w: np.fft.rfft(self.lexicon[w].e) for w in set(words)}
        right_spectra = {w: np.fft.rfft(hrr.permute(self.lexicon[w].e, self.right)) for w in set(words)}
        phi_hat = np.fft.rfft(self.placeholder)
        phi_right_hat = np.fft.rfft(hrr.permute(self.placeholder, self.right))

        updates = {}
        n_pairs = 0
        for i, a in enumerate(words):
            for j in range(i + 1, len(words)):
                if max_distance is not None and j - i > max_distance:
                    break
                b = words[j]
                updates[a] = updates.get(a, 0) + phi_hat * right_spectra[b]
                updates[b] = updates.get(b, 0) + spectra[a] * phi_right_hat
                n_pairs += 1
        for w in sorted(updates):
            self.lexicon[w].m += np.fft.irfft(updates[w], n)

        if encode_time and len(words) > 1:
            pairs = list(zip(words[:-1], words[1:]))
            update_time_memory(self, Chunk(tuple(pairs), self.counter), self.encoder.encode(self.counter))
        return n_pairs

    # -- retrieval ---------------------------------------------------------

    def _score_noise(self, sd, size):
        if sd <= 0:
            return 0.0
        self.noise_draws += 1
        return hrr.rng_for("retrieval-noise", self.seed, self.noise_draws).normal(0.0, sd, size)

    def probe(self, known, unknown_slot):
        n = self.n
        slot_probe = np.fft.rfft(self.lexicon[unknown_slot].e) * np.fft.rfft(self.placeholder)
        context = np.ones(n // 2 + 1, dtype=complex)
        for s, v in known:
            context = context + np.fft.rfft(self.lexicon[s].e) * np.fft.rfft(self.lexicon[v].e)
        return hrr.normalize(np.fft.irfft(slot_probe * context, n))

    def value_scores(self, cue, noise_sd=0.0):
        """Cosine of every non-slot token's memory vector with the cue probe.

        Returns ``(tokens, scores)`` in lexicographic token order, or ``None``
        when a cue token is not in the lexicon.
        """
        if len(cue.unknown) != 1:
            raise InvalidCueError(f"expected exactly one unknown slot, got {len(cue.unknown)}")
        needed = [cue.unknown[0]] + [tok for pair in cue.known for tok in pair]
        if any(tok not in self.lexicon for tok in needed):
            return None
        probe = self.probe(cue.known, cue.unknown[0])
        tokens = [tok for tok in sorted(self.lexicon) if not self.lexicon[tok].is_slot]
        if not tokens:
            return tokens, np.zeros(0)
        M = np.stack([self.lexicon[tok].m for tok in tokens])
        norms = np.linalg.norm(M, axis=1)
        dots = M @ probe
        scores = np.divide(dots, norms, out=np.zeros_like(dots), where=norms >= 1e-12)
        return tokens, scores + self._score_noise(noise_sd, len(tokens))

    def retrieve_value(self, cue, threshold=None, noise_sd=None):
        """Resolve a single unknown slot.

        Returns ``(value, score)`` or ``None`` on retrieval failure.
        """
        threshold = self.config.retrieval_threshold if threshold is None else threshold
        noise_sd = self.config.noise_sd if noise_sd is None else noise_sd
        scored = self.value_scores(cue, noise_sd)
        if scored is None:
            return None
        tokens, scores = scored
        if not tokens:
            return None
        best = int(np.argmax(scores))
        if scores[best] < threshold:
            return None
        return tokens[best], float(scores[best])

    def resolution_order(self, cue, threshold=None, noise_sd=None):
        """Unknown slots ordered by descending first-pass score, or ``None``."""
        firsts = []
        for position, u in enumerate(cue.unknown):
            found = self.retrieve_value(Cue(cue.known, (u,)), threshold, noise_sd)
            if found is None:
                return None
            firsts.append((-found[1], position, u))
        return [u for _, _, u in sorted(firsts)]

    def retrieve_multi(self, cue, threshold=None, noise_sd=None):
        """Resolve several unknowns by chaining single retrievals.

        Each resolved pair joins the known set before the next unknown is
        resolved. Returns the completed pair list (known pairs first) or
        ``None`` if any step fails.
        """
        if not cue.unknown:
            raise InvalidCueError("cue has no unknown slots")
        if len(cue.unknown) == 1:
            found = self.retrieve_value(cue, threshold, noise_sd)
            return None if found is None else list(cue.known) + [(cue.unknown[0], found[0])]
        order = self.resolution_order(cue, threshold, noise_sd)
        if order is None:
            return None
        known = list(cue.known)
        for u in order:
            found = self.retrieve_value(Cue(tuple(known), (u,)), threshold, noise_sd)
            if found is None:
                return None
            known.append((u, found[0]))
        return known

    # -- whole-chunk recall ------------------------------------------------

    def recall_chunk(self, cue_known, policy=None, **overrides):
        from .recall import recall_whole_chunk

        policy = policy if policy is not None else self.config.policy(**overrides)
        return recall_whole_chunk(self, cue_known, policy)
