import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holomem import kernels
from holomem.analysis import interior_maxima
from holomem.errors import InvalidParameterError, InvalidTimeError
from holomem.timecode import (
    N_ELEMENTS,
    lag_profile,
    sample_bank,
    sample_indices,
    selection_probabilities,
    self_similarity,
    time_vector,
    time_vectors,
)
from holomem.hrr import rng_for

from oracles import oscillator_element, truncated_geometric_mean

# E[j] for beta = 5.125, from the closed form in oracles.truncated_geometric_mean
EXPECTED_INDEX_MEAN = 3.7922738668342593


def test_bank_is_deterministic():
    a = sample_bank(1e-5, 1.0, 5.125, seed=11)
    b = sample_bank(1e-5, 1.0, 5.125, seed=11)
    assert a.same_as(b)
    assert not a.same_as(sample_bank(1e-5, 1.0, 5.125, seed=12))


def test_bank_shapes_and_ranges():
    bank = sample_bank(5e-6, seed=0)
    assert bank.thetas.shape == (15,)
    assert bank.selection.shape == (N_ELEMENTS, 4)
    assert bank.selection.min() >= 0 and bank.selection.max() <= 14
    assert np.all(bank.phis >= 0)
    assert np.all(bank.phis <= np.pi / np.abs(bank.thetas))


def test_frequencies_follow_geometric_scaling():
    bank = sample_bank(1e-5, 1.0, 5.125, seed=4)
    R = np.asarray(rng_for("bank", 4).normal(0.0, 1.0, 15))
    assert np.allclose(bank.thetas, 1e-5 * R * 2.0 ** np.arange(1, 16))


def test_zero_variance_bank_is_degenerate():
    bank = sample_bank(1e-5, 0.0, 5.125, seed=0)
    assert bank.degenerate
    assert np.all(bank.thetas == 0)
    assert np.all(np.isfinite(bank.phis))
    assert not sample_bank(seed=0).degenerate


@pytest.mark.parametrize("kwargs", [dict(S=0), dict(S=-1e-5), dict(beta=0), dict(sigma2=-1)])
def test_bank_rejects_bad_parameters(kwargs):
    with pytest.raises(InvalidParameterError):
        sample_bank(**kwargs)


def test_bank_is_immutable():
    bank = sample_bank(seed=0)
    with pytest.raises(ValueError):
        bank.thetas[0] = 1.0
    with pytest.raises(ValueError):
        bank.selection[0, 0] = 3
    with pytest.raises(AttributeError):
        bank.S = 2.0


# -- selection distribution -----------------------------------------------------

@given(st.floats(0.05, 100))
def test_selection_probabilities_monotone_and_normalized(beta):
    p = selection_probabilities(beta)
    assert p[0] > p[14]
    assert np.all(np.diff(p) <= 0)
    assert abs(p.sum() - 1) <= 1e-12


def test_index_mean_regression():
    assert truncated_geometric_mean(5.125) == pytest.approx(EXPECTED_INDEX_MEAN, abs=1e-12)
    assert np.arange(15) @ selection_probabilities(5.125) == pytest.approx(EXPECTED_INDEX_MEAN, abs=1e-12)


def test_sampled_frequencies_match_distribution():
    draws = sample_indices(5.125, 200_000, np.random.default_rng(0))
    freq = np.bincount(draws, minlength=15) / len(draws)
    assert np.allclose(freq, selection_probabilities(5.125), atol=0.005)
    assert abs(draws.mean() - EXPECTED_INDEX_MEAN) < 0.03


# -- time vectors ---------------------------------------------------------

def test_time_vector_matches_elementwise_oracle():
    bank = sample_bank(1e-5, seed=3)
    for t in (1, 17, 480):
        raw = np.array([
            oscillator_element(bank.thetas, bank.phis, bank.selection[i], bank.use_cos[i], t)
            for i in range(N_ELEMENTS)
        ])
        assert np.allclose(time_vector(bank, t), raw / np.linalg.norm(raw), atol=1e-12)


@pytest.mark.parametrize("t", [1, 2, 30, 500])
def test_time_vector_unit_norm_and_deterministic(t):
    bank = sample_bank(seed=0)
    v = time_vector(bank, t)
    assert abs(np.linalg.norm(v) - 1) <= 1e-12
    assert abs(v @ v - 1) <= 1e-12
    assert np.array_equal(v, time_vector(bank, t))


@pytest.mark.parametrize("t", [0, -3, 1.5, True, "2"])
def test_time_vector_rejects_bad_times(t):
    with pytest.raises(InvalidTimeError):
        time_vector(sample_bank(seed=0), t)


def test_distinct_over_500_steps():
    T = time_vectors(sample_bank(5e-6, seed=0), range(1, 501))
    assert len({row.tobytes() for row in T}) == 500


# -- self-similarity ------------------------------------------------------

def test_self_similarity_structure():
    bank = sample_bank(seed=2)
    M = self_similarity(bank, 30)
    assert M.shape == (30, 30)
    assert np.array_equal(M, M.T)
    assert np.all(np.abs(np.diag(M) - 1) <= 1e-12)
    T = time_vectors(bank, range(1, 31))
    assert M[4, 19] == pytest.approx(T[4] @ T[19], abs=1e-12)


def test_self_similarity_rejects_short_range():
    with pytest.raises(InvalidParameterError):
        self_similarity(sample_bank(seed=0), 1)


def test_decay_at_default_parameters():
    M = self_similarity(sample_bank(1e-5, 1.0, 5.125, seed=0), 30)
    profile = lag_profile(M)
    assert profile[1:6].mean() > profile[25:30].mean()


def test_single_banks_show_bumps():
    # individual banks carry local maxima at lags past 2; averaging banks
    # with independent frequencies smooths them away
    bumpy = [s for s in range(20) if interior_maxima(lag_profile(self_similarity(sample_bank(seed=s), 30)), start=3)]
    assert len(bumpy) == 13


def test_interior_maxima():
    assert interior_maxima([1, 0.5, 0.7, 0.4, 0.3]) == [2]
    assert interior_maxima([1, 0.9, 0.8], start=1) == []


# -- kernels --------------------------------------------------------------

@pytest.mark.skipif(kernels.BACKEND != "compiled", reason="compiled kernels not built")
def test_compiled_matches_fallback_oscillators():
    bank = sample_bank(5e-6, seed=9)
    ts = np.arange(1, 300, dtype=float)
    args = (bank.thetas, bank.phis, bank.selection, bank.use_cos, ts)
    a = kernels.oscillator_table(*args, backend="compiled")
    b = kernels.oscillator_table(*args, backend="python")
    assert np.allclose(a, b, atol=1e-13, rtol=0)


@pytest.mark.skipif(kernels.BACKEND != "compiled", reason="compiled kernels not built")
@settings(max_examples=10, deadline=None)
@given(st.integers(1, 6), st.integers(2, 40), st.integers(1, 9))
def test_compiled_matches_fallback_spectrum(m, n_terms, n_freq):
    rng = np.random.default_rng(m * 1000 + n_terms * 10 + n_freq)
    x = rng.normal(size=(m, n_terms))
    phases = rng.uniform(-np.pi, np.pi, size=(n_terms, n_freq))
    a = kernels.fractional_spectrum(x, phases, backend="compiled")
    b = kernels.fractional_spectrum(x, phases, backend="python")
    assert np.allclose(a, b, atol=1e-11)


def test_fallback_spectrum_oracle():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(3, 5))
    phases = rng.uniform(-np.pi, np.pi, size=(5, 4))
    expected = np.array([[sum(np.exp(1j * x[r, l] * phases[l, f]) for l in range(5)) for f in range(4)] for r in range(3)])
    assert np.allclose(kernels.fractional_spectrum(x, phases, backend="python"), expected, atol=1e-12)


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.fractional_spectrum(np.zeros((1, 1)), np.zeros((1, 1)), backend="gpu")


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, HOLOMEM_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import holomem; print(holomem.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True).stdout
    assert out.strip() == "python"
