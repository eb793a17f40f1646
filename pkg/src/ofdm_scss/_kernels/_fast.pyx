# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: batched periodic synthesis and moment accumulation.

Mirrors the contracts of ``ofdm_scss._kernels.pure``.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()

cdef double TWO_PI = 6.283185307179586476925286766559


def synth_windows(gre, gim, int K, offsets, int W):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] gre_a = np.ascontiguousarray(gre, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] gim_a = np.ascontiguousarray(gim, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] off_a = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef int n = gre_a.shape[0]
    cdef int kh = gre_a.shape[1]
    if kh != K // 2 - 1:
        raise ValueError(f"expected {K // 2 - 1} harmonics, got {kh}")
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, W), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] tc = np.empty((kh, K), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] ts = np.empty((kh, K), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] per = np.empty(K, dtype=np.float64)
    cdef Py_ssize_t i, t, k
    cdef double acc, arg
    cdef long long off

    for k in range(kh):
        for t in range(K):
            arg = TWO_PI * (k + 1) * t / K
            tc[k, t] = cos(arg)
            ts[k, t] = sin(arg)

    for i in range(n):
        for t in range(K):
            acc = 0.0
            for k in range(kh):
                acc += gre_a[i, k] * tc[k, t] - gim_a[i, k] * ts[k, t]
            per[t] = 2.0 * acc
        off = off_a[i] % K
        for t in range(W):
            out[i, t] = per[(off + t) % K]
    return out


def batch_moments(x):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] xa = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xa.shape[0]
    cdef Py_ssize_t b = xa.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] mean = np.zeros(b, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] m2 = np.zeros(b, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] m3 = np.zeros(b, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] m4 = np.zeros(b, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double d, d2

    for i in range(n):
        for j in range(b):
            mean[j] += xa[i, j]
    for j in range(b):
        mean[j] /= n
    for i in range(n):
        for j in range(b):
            d = xa[i, j] - mean[j]
            d2 = d * d
            m2[j] += d2
            m3[j] += d2 * d
            m4[j] += d2 * d2
    return n, mean, m2, m3, m4
