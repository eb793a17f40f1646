"""The four co-channel mixture cases: symbol draws, scaling, record generation.

All randomness flows through counter-based Philox streams keyed by
(master_seed, stream_index), so record content is a pure function of
(case_id, master_seed, record_index) regardless of generation order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ofdm import HalfSpectrum, OfdmConfig, synthesize_periodic_real

K_DEFAULT = 64
N_DEFAULT = 4096
KSC_DEFAULT = 28

# Stream-index namespaces under one master seed.
_STREAM_SPEC = 0  # Case-1 index draw, fixed once per spec
_STREAM_RECORD_BASE = 1  # record i -> stream 1 + i

_SQRT3 = math.sqrt(3.0)
_SQRT5 = math.sqrt(5.0)


@dataclass(frozen=True)
class Alphabet:
    """Symbol alphabet: a finite point set or a continuous uniform interval."""

    kind: str  # "discrete" | "uniform"
    points: tuple = ()
    lo: float = 0.0
    hi: float = 0.0

    def __post_init__(self):
        if self.kind == "discrete":
            if len(set(self.points)) != len(self.points) or not self.points:
                raise ValueError("discrete points must be non-empty and distinct")
        elif self.kind == "uniform":
            if not self.lo < self.hi:
                raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        else:
            raise ValueError(f"unknown alphabet kind {self.kind!r}")

    @classmethod
    def discrete(cls, *points: float) -> "Alphabet":
        return cls(kind="discrete", points=tuple(float(p) for p in points))

    @classmethod
    def uniform(cls, lo: float, hi: float) -> "Alphabet":
        return cls(kind="uniform", lo=float(lo), hi=float(hi))

    def second_moment(self) -> float:
        if self.kind == "discrete":
            return float(np.mean(np.square(self.points)))
        return (self.hi**3 - self.lo**3) / (3.0 * (self.hi - self.lo))

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        if self.kind == "discrete":
            pts = np.asarray(self.points)
            return pts[rng.integers(0, len(pts), size=size)]
        return rng.uniform(self.lo, self.hi, size=size)


@dataclass(frozen=True)
class RngStream:
    """One independent draw stream derived from (master_seed, stream_index)."""

    master_seed: int
    stream_index: int

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_index,))
        return np.random.Generator(np.random.Philox(ss))


# SOI / interference alphabets per case.  Every SOI alphabet has unit second
# moment and every interference alphabet has second moment 16, which is what
# makes a single shared scale factor produce the 16x power ratio.
_CASE_ALPHABETS = {
    1: (Alphabet.uniform(-_SQRT3, _SQRT3), Alphabet.uniform(-4 * _SQRT3, 4 * _SQRT3)),
    2: (Alphabet.discrete(1.0, -1.0), Alphabet.discrete(4.0, -4.0)),
    3: (
        Alphabet.discrete(1.0, -1.0),
        Alphabet.discrete(12 / _SQRT5, 4 / _SQRT5, -4 / _SQRT5, -12 / _SQRT5),
    ),
    4: (
        Alphabet.discrete(3 / _SQRT5, 1 / _SQRT5, -1 / _SQRT5, -3 / _SQRT5),
        Alphabet.discrete(12 / _SQRT5, 4 / _SQRT5, -4 / _SQRT5, -12 / _SQRT5),
    ),
}


@dataclass(frozen=True)
class CaseSpec:
    """Full generative description of one mixture case."""

    case_id: int
    soi_alphabet: Alphabet
    intf_alphabet: Alphabet
    soi_indices: tuple
    intf_indices: tuple
    scale: float
    master_seed: int
    K: int = K_DEFAULT
    N: int = N_DEFAULT
    Ksc: int = KSC_DEFAULT

    @property
    def config(self) -> OfdmConfig:
        return OfdmConfig.periodic(self.K, self.N)


@dataclass(frozen=True)
class MixtureRecord:
    """One (y, s, b) triple with its post-scaling spectra and provenance."""

    y: np.ndarray
    s: np.ndarray
    b: np.ndarray
    g: HalfSpectrum
    h: HalfSpectrum
    case_id: int
    record_index: int
    master_seed: int


def case_spec(case_id: int, master_seed: int) -> CaseSpec:
    """Build the CaseSpec for one of the four cases.

    Case 1 splits {1..Ksc} into two fixed 14/14 index sets drawn once from
    the master seed; cases 2-4 are fully co-channel on {1..Ksc}.
    """
    if case_id not in _CASE_ALPHABETS:
        raise ValueError(f"unknown case_id {case_id}")
    soi_alpha, intf_alpha = _CASE_ALPHABETS[case_id]
    all_idx = tuple(range(1, KSC_DEFAULT + 1))
    if case_id == 1:
        rng = RngStream(master_seed, _STREAM_SPEC).generator()
        perm = rng.permutation(np.arange(1, KSC_DEFAULT + 1))
        half = KSC_DEFAULT // 2
        soi_idx = tuple(sorted(int(i) for i in perm[:half]))
        intf_idx = tuple(sorted(int(i) for i in perm[half:]))
    else:
        soi_idx = intf_idx = all_idx
    scale = 1.0 / math.sqrt(2 * len(soi_idx) * soi_alpha.second_moment())
    return CaseSpec(
        case_id=case_id,
        soi_alphabet=soi_alpha,
        intf_alphabet=intf_alpha,
        soi_indices=soi_idx,
        intf_indices=intf_idx,
        scale=scale,
        master_seed=master_seed,
    )


def draw_pair(spec: CaseSpec, rng: np.random.Generator):
    """Draw one scaled (g, h) half-spectrum pair for a record."""
    kh = spec.K // 2 - 1
    g = np.zeros(kh, dtype=np.complex128)
    h = np.zeros(kh, dtype=np.complex128)
    soi_idx = np.asarray(spec.soi_indices) - 1
    intf_idx = np.asarray(spec.intf_indices) - 1
    g[soi_idx] = spec.scale * spec.soi_alphabet.sample(rng, len(soi_idx))
    h[intf_idx] = spec.scale * spec.intf_alphabet.sample(rng, len(intf_idx))
    return HalfSpectrum(spec.K, g), HalfSpectrum(spec.K, h)


def record_rng(spec: CaseSpec, record_index: int) -> np.random.Generator:
    return RngStream(spec.master_seed, _STREAM_RECORD_BASE + record_index).generator()


def make_mixture(spec: CaseSpec, record_index: int) -> MixtureRecord:
    """Generate record `record_index`: a pure function of (spec, index)."""
    g, h = draw_pair(spec, record_rng(spec, record_index))
    cfg = spec.config
    s = synthesize_periodic_real(cfg, g)
    b = synthesize_periodic_real(cfg, h)
    return MixtureRecord(
        y=s + b,
        s=s,
        b=b,
        g=g,
        h=h,
        case_id=spec.case_id,
        record_index=record_index,
        master_seed=spec.master_seed,
    )


def expected_power(spec: CaseSpec, source: str) -> float:
    """Analytic ensemble-average time power of one source (Parseval)."""
    if source == "soi":
        alpha, idx = spec.soi_alphabet, spec.soi_indices
    elif source == "interference":
        alpha, idx = spec.intf_alphabet, spec.intf_indices
    else:
        raise ValueError(f"source must be 'soi' or 'interference', got {source!r}")
    return 2.0 * len(idx) * spec.scale**2 * alpha.second_moment()
