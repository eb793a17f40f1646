"""Hot-kernel backend selection.

The compiled Cython extension is used when importable; setting the
environment variable ``OFDM_SCSS_PURE=1`` forces the NumPy fallback.
"""
import os

from . import pure

if os.environ.get("OFDM_SCSS_PURE"):
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]

        BACKEND = "fast"
    except ImportError:
        _impl = pure
        BACKEND = "pure"

synth_windows = _impl.synth_windows
batch_moments = _impl.batch_moments

__all__ = ["BACKEND", "synth_windows", "batch_moments", "pure"]
