import csv

import numpy as np
import pytest

from holomem import HDMStore, ModelConfig
from holomem.analysis import export_pca, interior_maxima, export_self_similarity, lexicon_vectors, matrix_path, pca_2d
from holomem.errors import InsufficientDataError, InvalidParameterError
from holomem.timecode import lag_profile, sample_bank, self_similarity


def labelled(X):
    return [(f"t{i}", row) for i, row in enumerate(X)]


def test_pca_matches_svd():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(40, 12)) * np.linspace(5, 0.5, 12)
    proj = pca_2d(labelled(X))
    Xc = X - X.mean(axis=0)
    _, s, Vt = np.linalg.svd(Xc, full_matrices=False)
    for k, c in enumerate((proj.c1, proj.c2)):
        assert abs(abs(c @ Vt[k]) - 1) < 1e-6
        assert proj.variances[k] == pytest.approx(s[k] ** 2 / (len(X) - 1), rel=1e-6)


def test_pca_axes_orthonormal_and_signed():
    rng = np.random.default_rng(1)
    proj = pca_2d(labelled(rng.normal(size=(20, 30))))
    assert abs(np.linalg.norm(proj.c1) - 1) < 1e-9
    assert abs(np.linalg.norm(proj.c2) - 1) < 1e-9
    assert abs(proj.c1 @ proj.c2) < 1e-8
    assert proj.variances[0] >= proj.variances[1]
    for axis in range(2):
        col = proj.coords[:, axis]
        assert col[np.argmax(np.abs(col))] > 0


def test_pca_deterministic():
    X = np.random.default_rng(2).normal(size=(10, 8))
    a, b = pca_2d(labelled(X), seed=4), pca_2d(labelled(X), seed=4)
    assert np.array_equal(a.coords, b.coords)


def test_pca_needs_three_vectors():
    with pytest.raises(InsufficientDataError):
        pca_2d(labelled(np.ones((2, 4))))


def test_pca_zero_variance():
    proj = pca_2d(labelled(np.ones((5, 4))))
    assert proj.variances == (0.0, 0.0)
    assert np.all(proj.coords == 0)


def test_export_pca(tmp_path):
    store = HDMStore(ModelConfig(n=64))
    store.ingest_sentence(["river", "rose", "fast", "today"])
    path = export_pca(pca_2d(lexicon_vectors(store)), tmp_path / "pca.csv")
    raw = path.read_bytes()
    assert b"\r" not in raw
    rows = list(csv.reader(raw.decode().splitlines()))
    assert rows[0] == ["token", "x", "y"]
    assert [r[0] for r in rows[1:]] == ["fast", "river", "rose", "today"]


def test_lexicon_vectors_kind():
    with pytest.raises(InvalidParameterError):
        lexicon_vectors(HDMStore(ModelConfig(n=64)), "z")


def test_export_self_similarity(tmp_path):
    bank = sample_bank(seed=0)
    lag_file, full = export_self_similarity(bank, 30, tmp_path / "sim.csv")
    assert full == matrix_path(tmp_path / "sim.csv") == tmp_path / "sim_matrix.csv"
    lags = list(csv.reader(lag_file.read_text().splitlines()))
    assert lags[0] == ["lag", "similarity"]
    assert len(lags) == 31
    assert float(lags[1][1]) == 1.0
    expected = lag_profile(self_similarity(bank, 30))
    assert float(lags[6][1]) == pytest.approx(expected[5], abs=1e-8)
    cells = list(csv.reader(full.read_text().splitlines()))
    assert cells[0] == ["t1", "t2", "similarity"]
    assert len(cells) == 901


def test_pca_separates_clusters():
    n = 1024
    rng = np.random.default_rng(3)
    centers = rng.normal(size=(3, n))
    X = np.concatenate([c + 0.3 * rng.normal(size=(10, n)) for c in centers])
    coords = pca_2d(labelled(X)).coords
    labels = np.repeat(np.arange(3), 10)
    within, between = [], []
    for i in range(30):
        for j in range(i + 1, 30):
            d = np.linalg.norm(coords[i] - coords[j])
            (within if labels[i] == labels[j] else between).append(d)
    assert np.mean(within) < np.mean(between)


def test_pca_csv_is_deterministic(tmp_path):
    X = np.random.default_rng(5).normal(size=(12, 16))
    a = export_pca(pca_2d(labelled(X), seed=1), tmp_path / "a.csv").read_bytes()
    b = export_pca(pca_2d(labelled(X), seed=1), tmp_path / "b.csv").read_bytes()
    assert a == b


def test_exported_curve_has_bumps(tmp_path):
    lag_file, _ = export_self_similarity(sample_bank(1e-5, 1.0, 5.125, seed=0), 30, tmp_path / "sim.csv")
    curve = [float(r[1]) for r in list(csv.reader(lag_file.read_text().splitlines()))[1:]]
    assert interior_maxima(curve, start=3)
