"""Deterministic OFDM waveform synthesis and spectral coefficient extraction.

Conventions: the forward DFT uses a negative exponent and no normalization;
synthesis uses the positive exponent; the 1/K normalization lives in
:func:`extract_coefficients`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels


@dataclass(frozen=True)
class OfdmConfig:
    """OFDM frame geometry: K subcarriers, cyclic prefix Tcp, P symbols, N samples."""

    K: int
    Tcp: int
    P: int
    N: int

    def __post_init__(self):
        if self.K < 2 or self.K % 2 != 0:
            raise ValueError(f"K must be even and >= 2, got {self.K}")
        if self.Tcp < 0:
            raise ValueError(f"Tcp must be non-negative, got {self.Tcp}")
        if self.P < 1:
            raise ValueError(f"P must be positive, got {self.P}")
        if self.N != self.P * (self.K + self.Tcp):
            raise ValueError(
                f"N={self.N} inconsistent with P*(K+Tcp)={self.P * (self.K + self.Tcp)}"
            )

    @classmethod
    def periodic(cls, K: int, N: int) -> "OfdmConfig":
        """Special case: P=1, Tcp=N-K, N a positive multiple of K."""
        if N <= 0 or N % K != 0:
            raise ValueError(f"N={N} must be a positive multiple of K={K}")
        return cls(K=K, Tcp=N - K, P=1, N=N)

    @property
    def is_periodic(self) -> bool:
        return self.P == 1 and self.Tcp == self.N - self.K and self.N % self.K == 0


@dataclass(frozen=True)
class SymbolGrid:
    """K x P complex symbol array for the general OFDM model."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=np.complex128)
        if c.ndim != 2:
            raise ValueError(f"coefficients must be 2-D (K, P), got shape {c.shape}")
        object.__setattr__(self, "coefficients", c)


@dataclass(frozen=True)
class HalfSpectrum:
    """Independent complex coefficients for harmonics k = 1 .. K/2-1.

    Indices 0 and K/2 are implicitly zero; k > K/2 follows by conjugate
    symmetry at synthesis time and is never stored.
    """

    K: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.K < 2 or self.K % 2 != 0:
            raise ValueError(f"K must be even and >= 2, got {self.K}")
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.shape != (self.K // 2 - 1,):
            raise ValueError(
                f"coeffs must have shape ({self.K // 2 - 1},), got {c.shape}"
            )
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zeros(cls, K: int) -> "HalfSpectrum":
        return cls(K=K, coeffs=np.zeros(K // 2 - 1, dtype=np.complex128))

    def full(self) -> np.ndarray:
        """Expand to the length-K conjugate-symmetric spectrum."""
        g = np.zeros(self.K, dtype=np.complex128)
        g[1 : self.K // 2] = self.coeffs
        g[self.K // 2 + 1 :] = np.conj(self.coeffs[::-1])
        return g

    def power(self) -> float:
        """Time-average power of the synthesized waveform (Parseval)."""
        return float(2.0 * np.sum(np.abs(self.coeffs) ** 2))

    def __add__(self, other: "HalfSpectrum") -> "HalfSpectrum":
        if self.K != other.K:
            raise ValueError("order mismatch")
        return HalfSpectrum(self.K, self.coeffs + other.coeffs)


def synthesize_general(config: OfdmConfig, grid: SymbolGrid) -> np.ndarray:
    """General cyclic-prefix OFDM synthesis; returns a complex series of length N.

    Each symbol body is the K-point inverse transform of its coefficient
    column (unnormalized), preceded by a copy of its last Tcp samples.
    """
    c = grid.coefficients
    if c.shape != (config.K, config.P):
        raise ValueError(
            f"grid shape {c.shape} does not match config (K={config.K}, P={config.P})"
        )
    bodies = config.K * np.fft.ifft(c, axis=0)  # (K, P): sum_k g_kp e^{j2pi kn/K}
    out = np.empty(config.N, dtype=np.complex128)
    stride = config.K + config.Tcp
    for p in range(config.P):
        body = bodies[:, p]
        out[p * stride : p * stride + config.Tcp] = body[config.K - config.Tcp :]
        out[p * stride + config.Tcp : (p + 1) * stride] = body
    return out


def synthesize_periodic_real(config: OfdmConfig, spec: HalfSpectrum) -> np.ndarray:
    """Real-valued K-periodic synthesis via 2*Re of the half-spectrum sum."""
    if not config.is_periodic:
        raise ValueError("config is not in the periodic special case")
    if spec.K != config.K:
        raise ValueError(f"spectrum order {spec.K} != config K {config.K}")
    period = _kernels.synth_windows(
        spec.coeffs.real[None, :],
        spec.coeffs.imag[None, :],
        config.K,
        np.zeros(1, dtype=np.int64),
        config.K,
    )[0]
    return np.tile(period, config.N // config.K)


def dft(x: np.ndarray) -> np.ndarray:
    """Forward DFT, X_m = sum_n x[n] exp(-j 2 pi m n / W), unnormalized."""
    x = np.asarray(x)
    if x.ndim != 1 or x.shape[0] == 0:
        raise ValueError("dft requires a non-empty 1-D series")
    return np.fft.fft(x)


def extract_coefficients(y: np.ndarray, K: int) -> np.ndarray:
    """Recover the length-K spectrum of a K-periodic real series.

    Averages the K-order DFT over all N/K periods and normalizes by 1/K,
    so a series built by :func:`synthesize_periodic_real` round-trips.
    Raises if len(y) is not divisible by K (the mismatched-FFT regime is
    probed separately, not silently tolerated here).
    """
    y = np.asarray(y)
    if y.ndim != 1:
        raise ValueError("expected a 1-D series")
    n = y.shape[0]
    if n == 0 or n % K != 0:
        raise ValueError(f"series length {n} is not a positive multiple of K={K}")
    periods = y.reshape(n // K, K)
    return np.fft.fft(periods, axis=1).mean(axis=0) / K
