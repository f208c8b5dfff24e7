# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for oscillator time codes and fractional binding."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()


def oscillator_table(const double[::1] thetas, const double[::1] phis,
                     const cnp.int64_t[:, ::1] selection, const cnp.uint8_t[:, ::1] use_cos,
                     const double[::1] ts):
    cdef Py_ssize_t m = ts.shape[0]
    cdef Py_ssize_t n_elem = selection.shape[0]
    cdef Py_ssize_t n_sel = selection.shape[1]
    out = np.empty((m, n_elem), dtype=np.float64)
    cdef double[:, ::1] res = out
    cdef Py_ssize_t r, i, j
    cdef cnp.int64_t k
    cdef double prod, arg, t
    for r in range(m):
        t = ts[r]
        for i in range(n_elem):
            prod = 1.0
            for j in range(n_sel):
                k = selection[i, j]
                arg = phis[k] + t * thetas[k]
                if use_cos[i, j]:
                    prod *= cos(arg)
                else:
                    prod *= sin(arg)
            res[r, i] = prod
    return out


def fractional_spectrum(const double[:, ::1] exponents, const double[:, ::1] phases):
    cdef Py_ssize_t m = exponents.shape[0]
    cdef Py_ssize_t n_terms = exponents.shape[1]
    cdef Py_ssize_t n_freq = phases.shape[1]
    re_arr = np.zeros((m, n_freq), dtype=np.float64)
    im_arr = np.zeros((m, n_freq), dtype=np.float64)
    cdef double[:, ::1] re = re_arr
    cdef double[:, ::1] im = im_arr
    cdef Py_ssize_t r, l, f
    cdef double x, a
    for r in range(m):
        for l in range(n_terms):
            x = exponents[r, l]
            for f in range(n_freq):
                a = x * phases[l, f]
                re[r, f] += cos(a)
                im[r, f] += sin(a)
    return re_arr + 1j * im_arr
