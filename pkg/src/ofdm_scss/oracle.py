"""Model-based perfect separator and scoring.

Builds the superconstellation (Minkowski sum of the two alphabets), demaps
mixture spectral coefficients to SOI symbols, reconstructs the SOI, and
scores separations in MSE-dB.  Also probes the mismatched-FFT failure mode.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .datasets import read_dataset, read_estimates
from .mixtures import Alphabet, CaseSpec, draw_pair, record_rng
from .ofdm import HalfSpectrum, extract_coefficients, synthesize_periodic_real

_COLLISION_TOL = 1e-9


class CollisionError(ValueError):
    """Two (g, h) pairs with different g sum to the same superconstellation point."""

    def __init__(self, pairs):
        self.pairs = pairs
        detail = "; ".join(
            f"{g1}+{h1} == {g2}+{h2}" for (g1, h1), (g2, h2) in pairs[:4])
        super().__init__(f"superconstellation collision: {detail}")


@dataclass(frozen=True)
class SuperMap:
    """Sorted superconstellation points with their SOI symbols and guard radius."""

    points: np.ndarray
    soi: np.ndarray
    guard: float


def build_supermap(G: Alphabet, H: Alphabet, scale: float = 1.0) -> SuperMap:
    """Enumerate all |G|*|H| sums; fails iff any point has two SOI preimages."""
    if G.kind != "discrete" or H.kind != "discrete":
        raise ValueError("superconstellation requires discrete alphabets")
    entries = []  # (point, soi_symbol, (g_raw, h_raw))
    for g in G.points:
        for h in H.points:
            entries.append((scale * (g + h), scale * g, (g, h)))
    entries.sort(key=lambda e: e[0])
    groups: list[list] = []
    for e in entries:
        if groups and abs(e[0] - groups[-1][-1][0]) <= _COLLISION_TOL:
            groups[-1].append(e)
        else:
            groups.append([e])
    collisions = []
    for grp in groups:
        first = grp[0]
        for other in grp[1:]:
            if other[1] != first[1]:
                collisions.append((first[2], other[2]))
    if collisions:
        raise CollisionError(collisions)
    pts = np.asarray([grp[0][0] for grp in groups])
    sois = [grp[0][1] for grp in groups]
    guard = float(np.min(np.diff(pts)) / 2.0) if len(pts) > 1 else math.inf
    return SuperMap(points=pts, soi=np.asarray(sois), guard=guard)


def demap_many(a: np.ndarray, smap: SuperMap):
    """Vectorized nearest-point demap of complex coefficients.

    Ties break toward the lower point (points are sorted ascending).  A demap
    is ambiguous when the real distance to the chosen point or the imaginary
    magnitude exceeds the guard radius.
    """
    a = np.asarray(a, dtype=np.complex128)
    re = a.real
    idx = np.abs(re[..., None] - smap.points).argmin(axis=-1)
    dist = np.abs(re - smap.points[idx])
    ambiguous = (dist > smap.guard) | (np.abs(a.imag) > smap.guard)
    return smap.soi[idx], ambiguous


def demap(a: complex, smap: SuperMap):
    """Scalar demap: returns (soi_symbol, ambiguous)."""
    g, amb = demap_many(np.asarray([a]), smap)
    return float(g[0]), bool(amb[0])


def supermap_for(spec: CaseSpec) -> SuperMap:
    return build_supermap(spec.soi_alphabet, spec.intf_alphabet, spec.scale)


def oracle_separate(y: np.ndarray, spec: CaseSpec,
                    smap: SuperMap | None = None):
    """Separate one mixture with full model knowledge.

    Discrete cases demap each active subcarrier against the superconstellation;
    Case 1 (continuous alphabets) falls back to frequency masking.  Returns
    (s_hat, ambiguous_count).
    """
    y = np.asarray(y, dtype=np.float64)
    if y.shape[0] != spec.N:
        raise ValueError(f"series length {y.shape[0]} != N={spec.N}")
    a_full = extract_coefficients(y, spec.K)
    soi_idx = np.asarray(spec.soi_indices)
    ghat = np.zeros(spec.K // 2 - 1, dtype=np.complex128)
    n_ambiguous = 0
    if spec.soi_alphabet.kind == "discrete":
        if smap is None:
            smap = supermap_for(spec)
        g, amb = demap_many(a_full[soi_idx], smap)
        ghat[soi_idx - 1] = g
        n_ambiguous = int(amb.sum())
    else:
        ghat[soi_idx - 1] = a_full[soi_idx]
    s_hat = synthesize_periodic_real(spec.config, HalfSpectrum(spec.K, ghat))
    return s_hat, n_ambiguous


def mse_db(s_hat: np.ndarray, s: np.ndarray) -> float:
    """10*log10 of the per-sample mean squared error; -inf for exact equality."""
    s_hat = np.asarray(s_hat)
    s = np.asarray(s)
    if s_hat.shape != s.shape:
        raise ValueError(f"shape mismatch {s_hat.shape} vs {s.shape}")
    mse = float(np.mean((s_hat - s) ** 2))
    if mse == 0.0:
        return -math.inf
    return 10.0 * math.log10(mse)


@dataclass
class SeparationReport:
    case_id: int
    count: int
    per_record_mse: list = field(repr=False)
    mse_linear: float = 0.0
    aggregate_mse_db: float = 0.0
    ambiguous: int = 0

    def to_dict(self) -> dict:
        db = self.aggregate_mse_db
        return {
            "case": self.case_id,
            "count": self.count,
            "mse_linear": self.mse_linear,
            "mse_db": "-inf" if db == -math.inf else db,
            "ambiguous": self.ambiguous,
        }


def _report(case_id: int, per_record: list, ambiguous: int) -> SeparationReport:
    agg = float(np.mean(per_record)) if per_record else 0.0
    db = -math.inf if agg == 0.0 else 10.0 * math.log10(agg)
    return SeparationReport(
        case_id=case_id,
        count=len(per_record),
        per_record_mse=per_record,
        mse_linear=agg,
        aggregate_mse_db=db,
        ambiguous=ambiguous,
    )


def evaluate_dataset(data_path, estimates_path=None) -> SeparationReport:
    """Score a dataset with the oracle, or score an external estimates file."""
    manifest, reader = read_dataset(data_path)
    spec = manifest.spec()
    per_record = []
    ambiguous = 0
    if estimates_path is not None:
        est = read_estimates(estimates_path, manifest.N, manifest.count,
                             manifest.dtype)
        for i, (_, s, _) in enumerate(reader):
            err = est[i].astype(np.float64) - s.astype(np.float64)
            per_record.append(float(np.mean(err**2)))
    else:
        smap = supermap_for(spec) if spec.soi_alphabet.kind == "discrete" else None
        for y, s, _ in reader:
            s_hat, n_amb = oracle_separate(y.astype(np.float64), spec, smap)
            ambiguous += n_amb
            per_record.append(float(np.mean((s_hat - s.astype(np.float64)) ** 2)))
    return _report(manifest.case_id, per_record, ambiguous)


@dataclass
class MismatchReport:
    case_id: int
    k_wrong: int
    n_demaps: int
    ambiguous_fraction: float
    rms_distance: float

    def to_dict(self) -> dict:
        return {
            "case": self.case_id,
            "k_wrong": self.k_wrong,
            "n_demaps": self.n_demaps,
            "ambiguous_fraction": self.ambiguous_fraction,
            "rms_distance": self.rms_distance,
        }


def mismatch_probe(spec: CaseSpec, k_wrong: int, n_records: int) -> MismatchReport:
    """Measure demap failures when analyzing with the wrong transform order.

    One window of k_wrong samples per record is transformed with the
    k_wrong-order DFT (normalized by k_wrong); the bins nearest each active
    subcarrier frequency are demapped against the correct-case supermap.
    """
    if k_wrong < 2:
        raise ValueError(f"k_wrong must be >= 2, got {k_wrong}")
    if k_wrong > spec.N:
        raise ValueError(f"k_wrong={k_wrong} exceeds N={spec.N}")
    if spec.soi_alphabet.kind != "discrete":
        raise ValueError("mismatch probe requires discrete alphabets")
    smap = supermap_for(spec)
    soi_idx = np.asarray(spec.soi_indices)
    bins = np.rint(soi_idx * k_wrong / spec.K).astype(int) % k_wrong

    gre = np.empty((n_records, spec.K // 2 - 1))
    gim = np.empty_like(gre)
    for i in range(n_records):
        g, h = draw_pair(spec, record_rng(spec, i))
        a = g.coeffs + h.coeffs
        gre[i] = a.real
        gim[i] = a.imag
    windows = _kernels.synth_windows(
        gre, gim, spec.K, np.zeros(n_records, dtype=np.int64), k_wrong)
    coeffs = np.fft.fft(windows, axis=1)[:, bins] / k_wrong
    _, amb = demap_many(coeffs, smap)
    dist = np.min(np.abs(coeffs.real[..., None] - smap.points), axis=-1)
    return MismatchReport(
        case_id=spec.case_id,
        k_wrong=k_wrong,
        n_demaps=int(amb.size),
        ambiguous_fraction=float(amb.mean()),
        rms_distance=float(np.sqrt(np.mean(dist**2))),
    )
