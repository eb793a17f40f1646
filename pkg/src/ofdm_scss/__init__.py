"""Benchmark toolkit for single-channel separation of co-channel OFDM mixtures."""

from ._kernels import BACKEND
from .datasets import (
    DatasetFormatError,
    DatasetReader,
    Manifest,
    read_dataset,
    read_estimates,
    write_dataset,
    write_estimates,
)
from .kurtosis import (
    KurtosisSweep,
    MomentAccumulator,
    WindowKurtosis,
    export_sweep,
    kurtosis_sweep,
)
from .mixtures import (
    Alphabet,
    CaseSpec,
    MixtureRecord,
    RngStream,
    case_spec,
    draw_pair,
    expected_power,
    make_mixture,
)
from .ofdm import (
    HalfSpectrum,
    OfdmConfig,
    SymbolGrid,
    dft,
    extract_coefficients,
    synthesize_general,
    synthesize_periodic_real,
)
from .oracle import (
    CollisionError,
    MismatchReport,
    SeparationReport,
    SuperMap,
    build_supermap,
    demap,
    demap_many,
    evaluate_dataset,
    mismatch_probe,
    mse_db,
    oracle_separate,
    supermap_for,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Alphabet",
    "CaseSpec",
    "CollisionError",
    "DatasetFormatError",
    "DatasetReader",
    "HalfSpectrum",
    "KurtosisSweep",
    "Manifest",
    "MismatchReport",
    "MixtureRecord",
    "MomentAccumulator",
    "OfdmConfig",
    "RngStream",
    "SeparationReport",
    "SuperMap",
    "SymbolGrid",
    "WindowKurtosis",
    "build_supermap",
    "case_spec",
    "demap",
    "demap_many",
    "dft",
    "draw_pair",
    "evaluate_dataset",
    "expected_power",
    "export_sweep",
    "extract_coefficients",
    "kurtosis_sweep",
    "make_mixture",
    "mismatch_probe",
    "mse_db",
    "oracle_separate",
    "read_dataset",
    "read_estimates",
    "supermap_for",
    "synthesize_general",
    "synthesize_periodic_real",
    "write_dataset",
    "write_estimates",
]
