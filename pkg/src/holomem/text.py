"""Corpus preprocessing and sentence-by-sentence ingestion.

Preprocessed corpus format: UTF-8, one sentence per line, lowercase tokens
separated by single spaces, every line newline-terminated.
"""

from dataclasses import dataclass
from importlib import resources
import logging
import re
import unicodedata

log = logging.getLogger(__name__)

# Words ending in '.' that do not end a sentence.
ABBREVIATIONS = frozenset({
    "dr.", "mr.", "mrs.", "ms.", "prof.", "sr.", "jr.", "st.", "mt.", "ft.",
    "gen.", "gov.", "sen.", "rep.", "lt.", "col.", "capt.", "sgt.",
    "u.s.", "u.k.", "e.g.", "i.e.", "vs.", "cf.", "no.", "fig.", "approx.",
    "inc.", "ltd.", "co.", "corp.", "dept.", "est.",
    "jan.", "feb.", "mar.", "apr.", "jun.", "jul.", "aug.", "sep.", "sept.", "oct.", "nov.", "dec.",
})

_TERMINATOR = re.compile(r"[.?!]+[\"')\]”’]*")
_OPENERS = "\"'([“‘"
_PARAGRAPH = re.compile(r"\n\s*\n")
_LAST_WORD = re.compile(r"\S*$")
_NUMERAL = re.compile(r"^[\d.,:/-]*\d[\d.,:/-]*$")


@dataclass(frozen=True)
class StopwordList:
    words: frozenset
    source: str = "built-in"

    def __contains__(self, token):
        return token.lower() in self.words

    def __len__(self):
        return len(self.words)


def _parse_stopwords(text):
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


def load_stopwords(path=None):
    """The built-in list, or a user file (one token per line, '#' comments)."""
    if path is None:
        text = resources.files("holomem").joinpath("data/stopwords_en.txt").read_text(encoding="utf-8")
        return StopwordList(_parse_stopwords(text), "built-in")
    with open(path, encoding="utf-8") as fh:
        return StopwordList(_parse_stopwords(fh.read()), str(path))


def _starts_sentence(text, pos):
    """True if whitespace at ``pos`` is followed by an uppercase letter or digit."""
    i = pos
    if i >= len(text) or not text[i].isspace():
        return False
    while i < len(text) and text[i].isspace():
        i += 1
    while i < len(text) and text[i] in _OPENERS:
        i += 1
    return i < len(text) and (text[i].isupper() or text[i].isdigit())


def split_sentences(text):
    """Rule-based sentence segmentation.

    A sentence ends after '.', '?' or '!' (plus any closing quotes or
    brackets) when followed by whitespace and an uppercase letter or digit,
    unless the word ending in '.' is a known abbreviation. Blank lines also
    end sentences. Internal whitespace is collapsed to single spaces.
    """
    sentences = []
    for para in _PARAGRAPH.split(text):
        start = 0
        for match in _TERMINATOR.finditer(para):
            end = match.end()
            if not _starts_sentence(para, end):
                continue
            if match.group(0)[0] == ".":
                word = _LAST_WORD.search(para, 0, match.start() + 1).group(0).lstrip(_OPENERS).lower()
                if word in ABBREVIATIONS:
                    continue
            sentences.append(para[start:end])
            start = end
        sentences.append(para[start:])
    return [" ".join(s.split()) for s in sentences if s.strip()]


def _is_punct(ch):
    return unicodedata.category(ch).startswith("P")


def _strip_punct(word):
    i, j = 0, len(word)
    while i < j and _is_punct(word[i]):
        i += 1
    while j > i and _is_punct(word[j - 1]):
        j -= 1
    return word[i:j]


def tokenize(sentence):
    tokens = []
    for raw in sentence.lower().replace("’", "'").split():
        tok = _strip_punct(raw)
        if tok:
            tokens.append(tok)
    return tokens


def remove_stopwords(tokens, stops):
    return [t for t in tokens if t not in stops]


def preprocess_lines(text, stops=None, drop_numerals=False):
    """Token lists for every non-empty sentence of ``text``."""
    stops = load_stopwords() if stops is None else stops
    lines = []
    for sentence in split_sentences(text):
        tokens = remove_stopwords(tokenize(sentence), stops)
        if drop_numerals:
            tokens = [t for t in tokens if not _NUMERAL.match(t)]
        if tokens:
            lines.append(tokens)
    return lines


def preprocess_text(in_path, out_path, stops=None, drop_numerals=False):
    """Write the preprocessed corpus for ``in_path``; return the line count."""
    with open(in_path, encoding="utf-8") as fh:
        text = fh.read()
    lines = preprocess_lines(text, stops, drop_numerals)
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        for tokens in lines:
            fh.write(" ".join(tokens) + "\n")
    return len(lines)


def read_corpus(store, path, encode_time=False, stops=None, max_distance=None):
    """Feed a preprocessed corpus into ``store`` one sentence per line.

    Stopwords from the active list are filtered defensively. Empty lines
    are skipped and counted in a warning. Returns the number of sentences
    ingested.
    """
    stops = load_stopwords() if stops is None else stops
    ingested = skipped = 0
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            tokens = remove_stopwords(line.split(), stops)
            if not tokens:
                skipped += 1
                continue
            store.ingest_sentence(tokens, encode_time=encode_time, max_distance=max_distance)
            ingested += 1
    if skipped:
        log.warning("skipped %d empty line(s) in %s", skipped, path)
    return ingested
