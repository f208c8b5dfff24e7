"""Command-line interface.

Every command works on a snapshot file (``--snapshot``, else the
``HOLOMEM_SNAPSHOT`` environment variable, else ``holomem.snapshot``):
it is loaded, the command runs, and mutating commands write it back.

Exit codes: 0 success, 1 retrieval failure, 2 usage error, 3 I/O error.
"""

import argparse
import logging
import os
import re
import sys

from . import analysis, snapshot, text
from .config import RECALL_METHODS, ModelConfig, coerce
from .errors import ChunkParseError, HoloMemError, InvalidParameterError, RecallFailure, SnapshotError
from .store import Cue, HDMStore

EXIT_OK, EXIT_FAILURE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
DEFAULT_SNAPSHOT = "holomem.snapshot"
RUNTIME_PARAMS = ("noise_sd", "retrieval_threshold", "method", "p", "time_threshold")

_SIDE = re.compile(r"^[a-z0-9_-]+$")


class UsageError(HoloMemError):
    pass


def parse_chunk_spec(text_):
    """Parse ``"slot:value slot:? ..."`` into a :class:`Cue`.

    Positions in error messages are 1-based token indices.
    """
    tokens = text_.split()
    if not tokens:
        raise ChunkParseError("empty chunk specification", None, None)
    known, unknown, seen = [], [], set()
    for pos, tok in enumerate(tokens, start=1):
        slot, colon, value = tok.lower().partition(":")
        if not colon or not slot or not value:
            raise ChunkParseError(f"malformed pair {tok!r} at token {pos}", tok, pos)
        if not _SIDE.match(slot) or not (value == "?" or _SIDE.match(value)):
            raise ChunkParseError(f"invalid characters in {tok!r} at token {pos}", tok, pos)
        if slot in seen:
            raise ChunkParseError(f"duplicate slot {slot!r} at token {pos}", tok, pos)
        seen.add(slot)
        if value == "?":
            unknown.append(slot)
        else:
            known.append((slot, value))
    return Cue(tuple(known), tuple(unknown))


def _format_pairs(pairs):
    return "\n".join(f"{s}:{v}" for s, v in pairs)


def _snapshot_path(args):
    return args.snapshot or os.environ.get("HOLOMEM_SNAPSHOT") or DEFAULT_SNAPSHOT


def _load(args):
    path = _snapshot_path(args)
    if not os.path.exists(path):
        raise FileNotFoundError(f"no model at {path}; run 'holomem init' first")
    return snapshot.load(path)


def _save(args, store):
    snapshot.save(store, _snapshot_path(args))


def cmd_init(args):
    kwargs = {k: v for k, v in {
        "n": args.n, "seed": args.seed, "S": args.S, "sigma2": args.sigma2, "beta": args.beta,
        "noise_sd": args.noise_sd, "retrieval_threshold": args.retrieval_threshold,
        "method": args.method, "p": args.p, "time_threshold": args.time_threshold,
    }.items() if v is not None}
    if args.recenter:
        kwargs["recenter"] = True
    if args.literal_time:
        kwargs["center_time"] = False
    store = HDMStore(ModelConfig(**kwargs))
    _save(args, store)
    print(f"initialized n={store.n} seed={store.seed} at {_snapshot_path(args)}")
    return EXIT_OK


def cmd_params(args):
    store = _load(args)
    cfg = store.config.as_dict()
    if args.action == "get":
        names = args.items or list(cfg)
        for name in names:
            if name not in cfg:
                raise UsageError(f"unknown parameter {name!r}")
            print(f"{name}={cfg[name]}")
        return EXIT_OK
    if not args.items:
        raise UsageError("params set needs NAME=VALUE arguments")
    changes = {}
    for item in args.items:
        name, eq, raw = item.partition("=")
        if not eq:
            raise UsageError(f"expected NAME=VALUE, got {item!r}")
        if name not in RUNTIME_PARAMS:
            raise UsageError(f"{name!r} is fixed at init; settable: {', '.join(RUNTIME_PARAMS)}")
        changes[name] = coerce(name, raw)
    store.config = store.config.updated(**changes)
    _save(args, store)
    for name in changes:
        print(f"{name}={getattr(store.config, name)}")
    return EXIT_OK


def cmd_add_chunk(args):
    cue = parse_chunk_spec(args.chunk)
    if cue.unknown:
        raise UsageError("chunks cannot contain unknown values")
    store = _load(args)
    chunk = store.add_chunk(cue.known, encode_time=not args.no_time)
    _save(args, store)
    print(f"chunk {chunk.index}")
    return EXIT_OK


def cmd_retrieve(args):
    cue = parse_chunk_spec(args.cue)
    if not cue.unknown:
        raise UsageError("cue needs at least one 'slot:?'")
    store = _load(args)
    draws = store.noise_draws
    result = store.retrieve_multi(cue, threshold=args.threshold, noise_sd=args.noise_sd)
    if store.noise_draws != draws:
        _save(args, store)
    if result is None:
        print("retrieval failure", file=sys.stderr)
        return EXIT_FAILURE
    print(_format_pairs(result))
    return EXIT_OK


def cmd_recall_chunk(args):
    cue = parse_chunk_spec(args.cue)
    if cue.unknown:
        raise UsageError("whole-chunk recall takes known pairs only")
    store = _load(args)
    policy = store.config.policy(
        method=args.method, p=args.p, time_threshold=args.time_threshold,
        retrieval_threshold=args.retrieval_threshold,
    )
    draws = store.noise_draws
    try:
        pairs = store.recall_chunk(cue.known, policy=policy)
    except RecallFailure as exc:
        print(f"recall failure (stage {exc.stage}): {exc}", file=sys.stderr)
        return EXIT_FAILURE
    finally:
        if store.noise_draws != draws:
            _save(args, store)
    print(_format_pairs(pairs))
    return EXIT_OK


def cmd_dm(args):
    store = _load(args)
    for tok, is_slot, count in store.list_tokens():
        print(f"{tok}\t{'slot' if is_slot else 'value'}\t{count}")
    if args.pca:
        projection = analysis.pca_2d(analysis.lexicon_vectors(store, args.vectors), seed=store.seed)
        analysis.export_pca(projection, args.pca)
        print(f"pca: {args.pca}")
    return EXIT_OK


def cmd_preprocess(args):
    stops = text.load_stopwords(args.stopwords)
    count = text.preprocess_text(args.input, args.output, stops, drop_numerals=args.drop_numerals)
    print(f"{count} sentences written to {args.output}")
    return EXIT_OK


def cmd_ingest(args):
    store = _load(args)
    stops = text.load_stopwords(args.stopwords)
    count = text.read_corpus(store, args.path, encode_time=args.encode_time, stops=stops, max_distance=args.max_distance)
    _save(args, store)
    print(f"{count} sentences ingested; chunk counter {store.counter}; {len(store.lexicon)} tokens")
    return EXIT_OK


def cmd_export_similarity(args):
    store = _load(args)
    lag_file, matrix_file = analysis.export_self_similarity(store.bank, args.t_max, args.path)
    print(lag_file)
    print(matrix_file)
    return EXIT_OK


def cmd_export_pca(args):
    store = _load(args)
    projection = analysis.pca_2d(analysis.lexicon_vectors(store, args.vectors), seed=store.seed)
    analysis.export_pca(projection, args.path)
    print(args.path)
    return EXIT_OK


def cmd_snapshot(args):
    current = _snapshot_path(args)
    if args.action == "save":
        store = _load(args)
        snapshot.save(store, args.path)
        print(f"saved {args.path}")
    else:
        store = snapshot.load(args.path)
        snapshot.save(store, current)
        print(f"loaded {args.path}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="holomem", description="Holographic declarative memory.")
    parser.add_argument("--snapshot", help="model snapshot file (default: $HOLOMEM_SNAPSHOT or holomem.snapshot)")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("init", help="create a fresh model")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--S", type=float)
    p.add_argument("--sigma2", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--noise-sd", type=float)
    p.add_argument("--retrieval-threshold", type=float)
    p.add_argument("--method", choices=RECALL_METHODS)
    p.add_argument("--p", type=int)
    p.add_argument("--time-threshold", type=float)
    p.add_argument("--recenter", action="store_true", help="draw frequency multipliers around 1 instead of 0")
    p.add_argument("--literal-time", action="store_true", help="keep the identity term in time HRRs")
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("params", help="show or change global parameters")
    p.add_argument("action", choices=("get", "set"))
    p.add_argument("items", nargs="*")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("add-chunk", help='add a chunk, e.g. "homeowner:yes damage:severe"')
    p.add_argument("chunk")
    p.add_argument("--no-time", action="store_true", help="skip time-memory encoding for this chunk")
    p.set_defaults(func=cmd_add_chunk)

    p = sub.add_parser("retrieve", help='resolve unknowns, e.g. "homeowner:yes damage:?"')
    p.add_argument("cue")
    p.add_argument("--threshold", type=float)
    p.add_argument("--noise-sd", type=float)
    p.set_defaults(func=cmd_retrieve)

    p = sub.add_parser("recall-chunk", help="recall a whole chunk from known pairs")
    p.add_argument("cue")
    p.add_argument("--method", choices=RECALL_METHODS)
    p.add_argument("--p", type=int)
    p.add_argument("--time-threshold", type=float)
    p.add_argument("--retrieval-threshold", type=float)
    p.set_defaults(func=cmd_recall_chunk)

    p = sub.add_parser("dm", help="list stored tokens")
    p.add_argument("--pca", metavar="PATH", help="also write a 2-D PCA CSV of the vectors")
    p.add_argument("--vectors", choices=("m", "e"), default="m")
    p.set_defaults(func=cmd_dm)

    p = sub.add_parser("preprocess", help="turn raw text into a corpus file")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--stopwords", metavar="FILE")
    p.add_argument("--drop-numerals", action="store_true")
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("ingest", help="read a preprocessed corpus into memory")
    p.add_argument("path")
    p.add_argument("--encode-time", action="store_true")
    p.add_argument("--max-distance", type=int)
    p.add_argument("--stopwords", metavar="FILE")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("export-similarity", help="write time-code self-similarity CSVs")
    p.add_argument("path")
    p.add_argument("--t-max", type=int, default=30)
    p.set_defaults(func=cmd_export_similarity)

    p = sub.add_parser("export-pca", help="write a 2-D PCA CSV of lexicon vectors")
    p.add_argument("path")
    p.add_argument("--vectors", choices=("m", "e"), default="m")
    p.set_defaults(func=cmd_export_pca)

    p = sub.add_parser("snapshot", help="copy the model to or from a file")
    p.add_argument("action", choices=("save", "load"))
    p.add_argument("path")
    p.set_defaults(func=cmd_snapshot)
    return parser


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (ChunkParseError, UsageError, InvalidParameterError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, SnapshotError) as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except HoloMemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
