# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled image-series kernels.

Per-sample semantics match wallfade._kernels_py exactly: ascending-m
accumulation, stop (without adding) at the first pair whose tail envelope
sqrt(kappa)^m (alpha_r + alpha_l) / (1 - sqrt(kappa)) falls below eps,
terms = -1 when m_max is exceeded.
"""

from libc.math cimport cos, hypot, pow, sin, sqrt

import numpy as np


def reflected_amplitude(const double[::1] x, const double[::1] y, double a, double b,
                        double kappa, double k, double beta, double eps,
                        long m_max):
    cdef Py_ssize_t n = x.shape[0]
    amp_arr = np.zeros(n, dtype=np.complex128)
    terms_arr = np.zeros(n, dtype=np.int64)
    cdef double complex[::1] amp = amp_arr
    cdef long[::1] terms = terms_arr
    cdef double sqk, inv_gap, d, nhb, coef, xi, yi
    cdef double c_r, c_l, d_r, d_l, a_r, a_l, signed, re, im
    cdef long m
    cdef Py_ssize_t i
    cdef int pow_mode
    if kappa == 0.0 or n == 0:
        return amp_arr, terms_arr
    sqk = sqrt(kappa)
    inv_gap = 1.0 / (1.0 - sqk)
    d = a + b
    nhb = -0.5 * beta
    # beta 2 and 4 skip libm pow, the dominant cost at the default exponent
    pow_mode = 2 if beta == 4.0 else (1 if beta == 2.0 else 0)
    for i in range(n):
        xi = x[i]
        yi = y[i]
        re = 0.0
        im = 0.0
        coef = 1.0
        m = 1
        while True:
            if m > m_max:
                terms[i] = -1
                break
            coef *= sqk
            if m & 1:
                c_r = (m - 1) * d + 2.0 * a
                c_l = (m - 1) * d + 2.0 * b
            else:
                c_r = m * d
                c_l = c_r
            d_r = hypot(c_r - xi, yi)
            d_l = hypot(c_l + xi, yi)
            if pow_mode == 2:
                a_r = 1.0 / (d_r * d_r)
                a_l = 1.0 / (d_l * d_l)
            elif pow_mode == 1:
                a_r = 1.0 / d_r
                a_l = 1.0 / d_l
            else:
                a_r = pow(d_r, nhb)
                a_l = pow(d_l, nhb)
            if coef * inv_gap * (a_r + a_l) < eps:
                break
            signed = -coef if m & 1 else coef
            re += signed * (a_r * cos(k * d_r) + a_l * cos(k * d_l))
            im += signed * (a_r * sin(k * d_r) + a_l * sin(k * d_l))
            terms[i] = m
            m += 1
        amp[i] = re + 1j * im
    return amp_arr, terms_arr


def bound_sum(const double[::1] x, const double[::1] y, double a, double b,
              double kappa, double beta, double eps, long m_max):
    cdef Py_ssize_t n = x.shape[0]
    total_arr = np.zeros(n, dtype=np.float64)
    terms_arr = np.zeros(n, dtype=np.int64)
    cdef double[::1] total = total_arr
    cdef long[::1] terms = terms_arr
    cdef double sqk, inv_gap, d, nhb, coef, xi, yi, c_r, c_l, d_r, d_l, pair, acc
    cdef long m
    cdef Py_ssize_t i
    cdef int pow_mode
    if kappa == 0.0 or n == 0:
        return total_arr, terms_arr
    sqk = sqrt(kappa)
    inv_gap = 1.0 / (1.0 - sqk)
    d = a + b
    nhb = -0.5 * beta
    pow_mode = 2 if beta == 4.0 else (1 if beta == 2.0 else 0)
    for i in range(n):
        xi = x[i]
        yi = y[i]
        acc = 0.0
        coef = 1.0
        m = 1
        while True:
            if m > m_max:
                terms[i] = -1
                break
            coef *= sqk
            if m & 1:
                c_r = (m - 1) * d + 2.0 * a
                c_l = (m - 1) * d + 2.0 * b
            else:
                c_r = m * d
                c_l = c_r
            d_r = hypot(c_r - xi, yi)
            d_l = hypot(c_l + xi, yi)
            if pow_mode == 2:
                pair = 1.0 / (d_r * d_r) + 1.0 / (d_l * d_l)
            elif pow_mode == 1:
                pair = 1.0 / d_r + 1.0 / d_l
            else:
                pair = pow(d_r, nhb) + pow(d_l, nhb)
            if coef * inv_gap * pair < eps:
                break
            acc += coef * pair
            terms[i] = m
            m += 1
        total[i] = acc
    return total_arr, terms_arr
