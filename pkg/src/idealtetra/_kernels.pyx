# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Lobachevsky function and the Milnor volume sum.

Same contract as ``_fallback``.
"""

from libc.math cimport M_PI, atan2, log, nearbyint

import numpy as np

from ._series import COEFFS

cdef enum:
    MAX_TERMS = 64

cdef double _coeffs[MAX_TERMS]
cdef int _n_terms = len(COEFFS)
if _n_terms > MAX_TERMS:
    raise ImportError("too many series coefficients")
for _i, _a in enumerate(COEFFS):
    _coeffs[_i] = _a


cdef inline double _lob(double theta) noexcept nogil:
    cdef double x = theta - M_PI * nearbyint(theta / M_PI)
    cdef double sign = 1.0
    cdef double x2, acc
    cdef int n
    if x < 0.0:
        x = -x
        sign = -1.0
    if x == 0.0:
        return 0.0
    if x > 0.5 * M_PI:
        x = 0.5 * M_PI
    x2 = x * x
    acc = 0.0
    for n in range(_n_terms - 1, -1, -1):
        acc = (acc + _coeffs[n]) * x2
    return sign * x * (1.0 - log(2.0 * x) + acc)


cdef enum:
    BLOCK = 16


cdef inline double _reduce(double theta, double* sign) noexcept nogil:
    # fold theta into [0, pi/2], recording the sign from oddness
    cdef double x = theta - M_PI * nearbyint(theta / M_PI)
    sign[0] = 1.0
    if x < 0.0:
        x = -x
        sign[0] = -1.0
    if x > 0.5 * M_PI:
        x = 0.5 * M_PI
    return x


cdef void _lob_block(const double* theta, double* out, Py_ssize_t m) noexcept nogil:
    # Horner across up to 3 * BLOCK lanes; the inner loop has no carried dependency
    cdef double x[3 * BLOCK]
    cdef double x2[3 * BLOCK]
    cdef double sg[3 * BLOCK]
    cdef double acc[3 * BLOCK]
    cdef Py_ssize_t j
    cdef int n
    cdef double c
    for j in range(m):
        x[j] = _reduce(theta[j], &sg[j])
        x2[j] = x[j] * x[j]
        acc[j] = 0.0
    for n in range(_n_terms - 1, -1, -1):
        c = _coeffs[n]
        for j in range(m):
            acc[j] = (acc[j] + c) * x2[j]
    for j in range(m):
        if x[j] == 0.0:
            out[j] = 0.0
        else:
            out[j] = sg[j] * x[j] * (1.0 - log(2.0 * x[j]) + acc[j])


cdef inline double _volume(double r, double s, double t, double k) noexcept nogil:
    cdef double r2 = r * r, s2 = s * s, t2 = t * t
    return (_lob(atan2(k, -r2 + s2 + t2))
            + _lob(atan2(k, r2 - s2 + t2))
            + _lob(atan2(k, r2 + s2 - t2)))


def lobachevsky(double theta):
    return _lob(theta)


def lobachevsky_array(theta):
    cdef double[::1] x = np.ascontiguousarray(theta, dtype=float).reshape(-1)
    out = np.empty(x.shape[0])
    cdef double[::1] o = out
    cdef Py_ssize_t i, n = x.shape[0]
    i = 0
    with nogil:
        while i < n:
            _lob_block(&x[i], &o[i], min(<Py_ssize_t>BLOCK, n - i))
            i += BLOCK
    return out.reshape(np.shape(theta))


def ideal_volume(double r, double s, double t, double k):
    return _volume(r, s, t, k)


def ideal_volume_array(r, s, t, k):
    arrays = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (r, s, t, k)))
    shape = arrays[0].shape
    cdef double[::1] rv = np.ascontiguousarray(arrays[0]).reshape(-1)
    cdef double[::1] sv = np.ascontiguousarray(arrays[1]).reshape(-1)
    cdef double[::1] tv = np.ascontiguousarray(arrays[2]).reshape(-1)
    cdef double[::1] kv = np.ascontiguousarray(arrays[3]).reshape(-1)
    cdef Py_ssize_t n = rv.shape[0]
    out = np.empty(n)
    cdef double[::1] o = out
    cdef double ang[3 * BLOCK]
    cdef double lob[3 * BLOCK]
    cdef double r2, s2, t2
    cdef Py_ssize_t i, j, m
    i = 0
    with nogil:
        while i < n:
            m = min(<Py_ssize_t>BLOCK, n - i)
            for j in range(m):
                r2 = rv[i + j] * rv[i + j]
                s2 = sv[i + j] * sv[i + j]
                t2 = tv[i + j] * tv[i + j]
                ang[3 * j] = atan2(kv[i + j], -r2 + s2 + t2)
                ang[3 * j + 1] = atan2(kv[i + j], r2 - s2 + t2)
                ang[3 * j + 2] = atan2(kv[i + j], r2 + s2 - t2)
            _lob_block(ang, lob, 3 * m)
            for j in range(m):
                o[i + j] = lob[3 * j] + lob[3 * j + 1] + lob[3 * j + 2]
            i += BLOCK
    return out.reshape(shape)
