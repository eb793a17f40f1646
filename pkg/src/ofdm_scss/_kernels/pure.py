"""NumPy implementations of the hot kernels.

These are the reference implementations; the compiled extension in
``_fast.pyx`` mirrors them and is preferred at import time when available.
"""
from __future__ import annotations

import numpy as np


def synth_windows(gre: np.ndarray, gim: np.ndarray, K: int, offsets: np.ndarray,
                  W: int) -> np.ndarray:
    """Batched real periodic OFDM synthesis.

    gre, gim: (n, K/2-1) real/imaginary parts of the half-spectrum coefficients
    for harmonics k = 1 .. K/2-1.  Returns an (n, W) array of window samples,
    window i starting at sample offsets[i] of the K-periodic waveform
    s[t] = 2 * sum_k (gre_k cos(2 pi k t / K) - gim_k sin(2 pi k t / K)).
    """
    gre = np.ascontiguousarray(gre, dtype=np.float64)
    gim = np.ascontiguousarray(gim, dtype=np.float64)
    n, kh = gre.shape
    if kh != K // 2 - 1:
        raise ValueError(f"expected {K // 2 - 1} harmonics, got {kh}")
    k = np.arange(1, K // 2)
    t = np.arange(K)
    arg = 2.0 * np.pi * np.outer(k, t) / K
    period = 2.0 * (gre @ np.cos(arg) - gim @ np.sin(arg))  # (n, K)
    idx = (np.asarray(offsets, dtype=np.int64)[:, None] + np.arange(W)[None, :]) % K
    return np.take_along_axis(period, idx, axis=1)


def batch_moments(x: np.ndarray):
    """Per-column central moment sums of a batch.

    Returns (count, mean, M2, M3, M4) where Mq[j] = sum_i (x[i,j]-mean[j])**q.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    mean = x.mean(axis=0)
    d = x - mean
    d2 = d * d
    m2 = d2.sum(axis=0)
    m3 = (d2 * d).sum(axis=0)
    m4 = (d2 * d2).sum(axis=0)
    return n, mean, m2, m3, m4
