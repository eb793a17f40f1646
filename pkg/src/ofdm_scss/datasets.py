"""Bit-exact dataset persistence: fixed-stride binary records plus a JSON manifest.

Binary layout: 8-byte magic ``OFDMSCSS``, 4-byte little-endian format version,
then ``count`` records; each record is N values of y, N of s, and optionally
N of b, little-endian IEEE-754 of the manifest dtype, no padding.  Estimates
files share the same header and hold one series per record.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .mixtures import Alphabet, CaseSpec, case_spec, make_mixture

MAGIC = b"OFDMSCSS"
FORMAT_VERSION = 1
HEADER_SIZE = 12

_DTYPES = {"f32": np.dtype("<f4"), "f64": np.dtype("<f8")}


class DatasetFormatError(ValueError):
    """Bad magic, version, dtype, or size/manifest inconsistency."""


def _alphabet_dict(a: Alphabet) -> dict:
    if a.kind == "discrete":
        return {"kind": "discrete", "points": list(a.points)}
    return {"kind": "uniform", "lo": a.lo, "hi": a.hi}


def _alphabet_from_dict(d: dict) -> Alphabet:
    if d["kind"] == "discrete":
        return Alphabet.discrete(*d["points"])
    return Alphabet.uniform(d["lo"], d["hi"])


@dataclass
class Manifest:
    format_version: int
    case_id: int
    N: int
    K: int
    Ksc: int
    count: int
    master_seed: int
    dtype: str
    includes_interference: bool
    scale: float
    soi_alphabet: dict
    intf_alphabet: dict
    soi_indices: list
    intf_indices: list
    creation_params: dict = field(default_factory=dict)

    def spec(self) -> CaseSpec:
        """Reconstruct the generating CaseSpec from the stored fields."""
        return CaseSpec(
            case_id=self.case_id,
            soi_alphabet=_alphabet_from_dict(self.soi_alphabet),
            intf_alphabet=_alphabet_from_dict(self.intf_alphabet),
            soi_indices=tuple(self.soi_indices),
            intf_indices=tuple(self.intf_indices),
            scale=self.scale,
            master_seed=self.master_seed,
            K=self.K,
            N=self.N,
            Ksc=self.Ksc,
        )

    def record_stride(self) -> int:
        series = 3 if self.includes_interference else 2
        return series * self.N * _DTYPES[self.dtype].itemsize

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Manifest":
        return cls(**json.loads(text))


def _paths(base) -> tuple[Path, Path]:
    base = Path(base)
    if base.suffix in (".bin", ".json"):
        base = base.with_suffix("")
    return base.with_suffix(".bin"), base.with_suffix(".json")


def _render_chunk(case_id: int, master_seed: int, start: int, stop: int,
                  dtype: str, include_b: bool) -> bytes:
    spec = case_spec(case_id, master_seed)
    dt = _DTYPES[dtype]
    parts = []
    for i in range(start, stop):
        rec = make_mixture(spec, i)
        series = (rec.y, rec.s, rec.b) if include_b else (rec.y, rec.s)
        parts.append(np.concatenate(series).astype(dt).tobytes())
    return b"".join(parts)


def write_dataset(spec: CaseSpec, count: int, out_path, dtype: str = "f64",
                  include_b: bool = False, threads: int = 1) -> Manifest:
    """Generate `count` records and write the .bin/.json pair.

    Records are a pure function of (case_id, master_seed, index); chunks may
    be generated in parallel but are always written in index order, so the
    file bytes are independent of `threads`.
    """
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    if dtype not in _DTYPES:
        raise ValueError(f"dtype must be one of {sorted(_DTYPES)}, got {dtype!r}")
    bin_path, json_path = _paths(out_path)
    manifest = Manifest(
        format_version=FORMAT_VERSION,
        case_id=spec.case_id,
        N=spec.N,
        K=spec.K,
        Ksc=spec.Ksc,
        count=count,
        master_seed=spec.master_seed,
        dtype=dtype,
        includes_interference=include_b,
        scale=spec.scale,
        soi_alphabet=_alphabet_dict(spec.soi_alphabet),
        intf_alphabet=_alphabet_dict(spec.intf_alphabet),
        soi_indices=list(spec.soi_indices),
        intf_indices=list(spec.intf_indices),
        creation_params={"threads": threads},
    )
    chunk = 64
    bounds = [(i, min(i + chunk, count)) for i in range(0, count, chunk)]
    with open(bin_path, "wb") as f:
        f.write(MAGIC)
        f.write(FORMAT_VERSION.to_bytes(4, "little"))
        if threads > 1 and len(bounds) > 1:
            with ProcessPoolExecutor(max_workers=threads) as ex:
                for blob in ex.map(
                    _render_chunk,
                    *zip(*[(spec.case_id, spec.master_seed, a, b, dtype, include_b)
                           for a, b in bounds]),
                ):
                    f.write(blob)
        else:
            for a, b in bounds:
                f.write(_render_chunk(spec.case_id, spec.master_seed, a, b,
                                      dtype, include_b))
    json_path.write_text(manifest.to_json())
    return manifest


class DatasetReader:
    """Random-access reader over the fixed-stride binary record file."""

    def __init__(self, manifest: Manifest, bin_path):
        self.manifest = manifest
        self._mm = np.memmap(bin_path, dtype=_DTYPES[manifest.dtype],
                             mode="r", offset=HEADER_SIZE)
        self._series = 3 if manifest.includes_interference else 2

    def __len__(self) -> int:
        return self.manifest.count

    def record(self, i: int):
        """Return (y, s, b) for record i; b is None when not stored."""
        if not 0 <= i < self.manifest.count:
            raise IndexError(i)
        n = self.manifest.N
        base = i * self._series * n
        y = np.array(self._mm[base : base + n])
        s = np.array(self._mm[base + n : base + 2 * n])
        b = None
        if self._series == 3:
            b = np.array(self._mm[base + 2 * n : base + 3 * n])
        return y, s, b

    def __iter__(self):
        for i in range(len(self)):
            yield self.record(i)


def read_dataset(path) -> tuple[Manifest, DatasetReader]:
    """Open a dataset pair, validating magic, version, dtype, and size."""
    bin_path, json_path = _paths(path)
    if not json_path.exists():
        raise DatasetFormatError(f"missing manifest {json_path}")
    manifest = Manifest.from_json(json_path.read_text())
    if manifest.format_version != FORMAT_VERSION:
        raise DatasetFormatError(
            f"unsupported format version {manifest.format_version}")
    if manifest.dtype not in _DTYPES:
        raise DatasetFormatError(f"unknown dtype {manifest.dtype!r}")
    with open(bin_path, "rb") as f:
        head = f.read(HEADER_SIZE)
    if head[:8] != MAGIC:
        raise DatasetFormatError(f"bad magic in {bin_path}")
    if int.from_bytes(head[8:12], "little") != manifest.format_version:
        raise DatasetFormatError("file/manifest version mismatch")
    expected = HEADER_SIZE + manifest.count * manifest.record_stride()
    actual = os.path.getsize(bin_path)
    if actual != expected:
        raise DatasetFormatError(
            f"truncated or oversized file {bin_path}: expected {expected} bytes, "
            f"got {actual}")
    return manifest, DatasetReader(manifest, bin_path)


def write_estimates(path, estimates, dtype: str = "f64") -> None:
    """Write an estimates file: header plus one series per record."""
    dt = _DTYPES[dtype]
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(FORMAT_VERSION.to_bytes(4, "little"))
        for series in estimates:
            f.write(np.asarray(series).astype(dt).tobytes())


def read_estimates(path, n: int, count: int, dtype: str = "f64") -> np.ndarray:
    """Read a (count, n) estimates array, validating header and size."""
    dt = _DTYPES[dtype]
    expected = HEADER_SIZE + count * n * dt.itemsize
    actual = os.path.getsize(path)
    with open(path, "rb") as f:
        head = f.read(HEADER_SIZE)
        if head[:8] != MAGIC:
            raise DatasetFormatError(f"bad magic in {path}")
        if int.from_bytes(head[8:12], "little") != FORMAT_VERSION:
            raise DatasetFormatError("unsupported estimates file version")
        if actual != expected:
            raise DatasetFormatError(
                f"estimates file {path}: expected {expected} bytes, got {actual}")
        data = np.frombuffer(f.read(), dtype=dt)
    return data.reshape(count, n)
