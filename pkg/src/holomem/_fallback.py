"""Pure-numpy versions of the compiled kernels, same signatures."""

import numpy as np

_BLOCK_ELEMENTS = 1 << 22


def oscillator_table(thetas, phis, selection, use_cos, ts):
    args = phis[selection][None, :, :] + ts[:, None, None] * thetas[selection][None, :, :]
    vals = np.where(use_cos.astype(bool)[None, :, :], np.cos(args), np.sin(args))
    return vals.prod(axis=2)


def fractional_spectrum(exponents, phases):
    m, n_terms = exponents.shape
    out = np.empty((m, phases.shape[1]), dtype=complex)
    rows = max(1, _BLOCK_ELEMENTS // max(1, n_terms * phases.shape[1]))
    for start in range(0, m, rows):
        block = exponents[start:start + rows]
        out[start:start + rows] = np.exp(1j * block[:, :, None] * phases[None, :, :]).sum(axis=1)
    return out
