"""Versioned text snapshots of a complete store.

Layout::

    HOLOMEM 1
    [config]            key=value lines
    [state]             counter, noise_draws
    [bank]              thetas, phis, then 320 selection and 320 trig rows
    [time_bases] K      K rows of n floats
    [lexicon] N         per token: token line, then e, m, mt rows
    END

Floats are written with 17 significant digits so that save, load, save
reproduces the file byte for byte.
"""

from dataclasses import fields
import json
import os
from pathlib import Path
import tempfile

import numpy as np

from .config import ModelConfig
from .errors import CorruptSnapshotError, IncompatibleSnapshotError
from .store import HDMStore, LexiconEntry
from .timecode import N_ELEMENTS, OscillatorBank

MAGIC = "HOLOMEM"
VERSION = "1"


def _floats(values):
    return " ".join(format(float(x), ".17g") for x in values)


def _config_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def dumps(store):
    cfg = store.config
    bank = store.bank
    bases = store.encoder.bases
    out = [f"{MAGIC} {VERSION}", "[config]"]
    for f in fields(ModelConfig):
        out.append(f"{f.name}={_config_value(getattr(cfg, f.name))}")
    out += ["[state]", f"counter={store.counter}", f"noise_draws={store.noise_draws}"]
    out += ["[bank]", "thetas " + _floats(bank.thetas), "phis " + _floats(bank.phis)]
    out += ["sel " + " ".join(str(int(k)) for k in row) for row in bank.selection]
    out += ["cos " + " ".join("1" if b else "0" for b in row) for row in bank.use_cos]
    out.append(f"[time_bases] {len(bases)}")
    out += [_floats(row) for row in bases]
    out.append(f"[lexicon] {len(store.lexicon)}")
    for tok in sorted(store.lexicon):
        entry = store.lexicon[tok]
        out.append(f"token {json.dumps(tok)} {int(entry.is_slot)} {entry.count}")
        out += ["e " + _floats(entry.e), "m " + _floats(entry.m), "mt " + _floats(entry.mt)]
    out.append("END")
    return "\n".join(out) + "\n"


def save(store, path):
    """Write atomically: a partial file never replaces a good one."""
    path = Path(path)
    text = dumps(store)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


class _Lines:
    def __init__(self, text):
        self.lines = text.split("\n")
        self.pos = 0

    def next(self):
        if self.pos >= len(self.lines):
            raise CorruptSnapshotError("snapshot ends unexpectedly")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def expect(self, prefix):
        line = self.next()
        if not line.startswith(prefix):
            raise CorruptSnapshotError(f"line {self.pos}: expected {prefix!r}, found {line[:40]!r}")
        return line[len(prefix):].strip()


def _vector(text, n):
    try:
        vec = np.array([float(x) for x in text.split()])
    except ValueError:
        raise CorruptSnapshotError("non-numeric vector entry") from None
    if vec.shape != (n,):
        raise CorruptSnapshotError(f"vector has {vec.shape[0]} entries, expected {n}")
    return vec


def _parse_config(items):
    kinds = {f.name: f.type for f in fields(ModelConfig)}
    kwargs = {}
    for key, raw in items.items():
        if key not in kinds:
            raise CorruptSnapshotError(f"unknown config key {key!r}")
        kind = kinds[key]
        if kind is bool:
            kwargs[key] = raw == "true"
        elif kind is int:
            kwargs[key] = int(raw)
        elif kind is float:
            kwargs[key] = float(raw)
        else:
            kwargs[key] = raw
    return ModelConfig(**kwargs)


def loads(text):
    lines = _Lines(text)
    header = lines.next().split()
    if len(header) != 2 or header[0] != MAGIC:
        raise CorruptSnapshotError("missing HOLOMEM header")
    if header[1] != VERSION:
        raise IncompatibleSnapshotError(header[1], VERSION)
    try:
        lines.expect("[config]")
        items = {}
        while not lines.lines[lines.pos].startswith("["):
            key, _, raw = lines.next().partition("=")
            items[key] = raw
        config = _parse_config(items)
        n = config.n

        lines.expect("[state]")
        counter = int(lines.expect("counter="))
        noise_draws = int(lines.expect("noise_draws="))

        lines.expect("[bank]")
        thetas = _vector(lines.expect("thetas "), 15)
        phis = _vector(lines.expect("phis "), 15)
        selection = np.array([[int(k) for k in lines.expect("sel ").split()] for _ in range(N_ELEMENTS)], dtype=np.int64)
        use_cos = np.array([[k == "1" for k in lines.expect("cos ").split()] for _ in range(N_ELEMENTS)], dtype=bool)
        bank = OscillatorBank(thetas, phis, selection, use_cos, config.S, config.sigma2, config.beta)

        n_bases = int(lines.expect("[time_bases]"))
        bases = np.stack([_vector(lines.next(), n) for _ in range(n_bases)])

        n_tokens = int(lines.expect("[lexicon]"))
        store = HDMStore(config, bank=bank, time_bases=bases)
        for _ in range(n_tokens):
            head = lines.expect("token ")
            tok_json, is_slot, count = head.rsplit(" ", 2)
            tok = json.loads(tok_json)
            e = _vector(lines.expect("e "), n)
            m = _vector(lines.expect("m "), n)
            mt = _vector(lines.expect("mt "), n)
            store.lexicon[tok] = LexiconEntry(tok, e, m, mt, is_slot == "1", int(count))
        if lines.next() != "END":
            raise CorruptSnapshotError("missing END marker")
    except CorruptSnapshotError:
        raise
    except (ValueError, IndexError, KeyError) as exc:
        raise CorruptSnapshotError(f"malformed snapshot: {exc}") from None
    store.counter = counter
    store.noise_draws = noise_draws
    return store


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
