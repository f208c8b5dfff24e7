import logging

import pytest

from holomem import HDMStore, ModelConfig
from holomem.text import (
    load_stopwords,
    preprocess_lines,
    preprocess_text,
    read_corpus,
    split_sentences,
    tokenize,
)


@pytest.fixture(scope="module")
def stops():
    return load_stopwords()


def test_builtin_stopwords(stops):
    assert len(stops) == 179
    assert "the" in stops and "The" in stops
    assert "flood" not in stops


def test_custom_stopwords(tmp_path):
    path = tmp_path / "stops.txt"
    path.write_text("# mine\nFlood\n\nriver\n", encoding="utf-8")
    custom = load_stopwords(path)
    assert set(custom.words) == {"flood", "river"}
    assert custom.source == str(path)


@pytest.mark.parametrize("text, expected", [
    ("Dr. Smith arrived. It rained.", ["Dr. Smith arrived.", "It rained."]),
    ("Where? Here! Fine.", ["Where?", "Here!", "Fine."]),
    ("He said \"go.\" Then left.", ["He said \"go.\"", "Then left."]),
    ("Prices rose 3.5 percent. Sales fell.", ["Prices rose 3.5 percent.", "Sales fell."]),
    ("see e.g. Fig. 2 here.", ["see e.g. Fig. 2 here."]),
    ("first part\n\nsecond part", ["first part", "second part"]),
    ("lower. case start", ["lower. case start"]),
    ("   ", []),
])
def test_split_sentences(text, expected):
    assert split_sentences(text) == expected


def test_tokenize():
    assert tokenize("The house, flooded!") == ["the", "house", "flooded"]
    assert tokenize("Don’t (stop) -- now...") == ["don't", "stop", "now"]


def test_preprocess_lines(stops):
    assert preprocess_lines("The house flooded. We left.", stops) == [["house", "flooded"], ["left"]]
    assert preprocess_lines("It is 2024. Rain fell in 2024.", stops, drop_numerals=True) == [["rain", "fell"]]


def test_preprocess_text_format(tmp_path, stops):
    src = tmp_path / "raw.txt"
    out = tmp_path / "corpus.txt"
    src.write_text("The river rose. It was the worst flood.\n\nAnd then?", encoding="utf-8")
    assert preprocess_text(src, out, stops) == 2
    assert out.read_bytes() == b"river rose\nworst flood\n"


def test_read_corpus(tmp_path, stops, caplog):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("river rose\n\nthe\nworst flood river\n", encoding="utf-8")
    store = HDMStore(ModelConfig(n=128))
    with caplog.at_level(logging.WARNING):
        assert read_corpus(store, corpus, stops=stops) == 2
    assert "skipped 2" in caplog.text
    assert store.counter == 2
    assert sorted(store.lexicon) == ["flood", "river", "rose", "worst"]
    assert store.lexicon["river"].count == 2
    assert not any(e.is_slot for e in store.lexicon.values())
