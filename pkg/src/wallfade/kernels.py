"""Kernel backend selection.

Prefers the compiled extension and falls back to the numpy implementation.
Set WALLFADE_NO_EXTENSION=1 to force the fallback (the benchmark uses this
to time both paths in one process tree).
"""

from __future__ import annotations

import os

if os.environ.get("WALLFADE_NO_EXTENSION") == "1":
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

        BACKEND = "python"

reflected_amplitude = _impl.reflected_amplitude
bound_sum = _impl.bound_sum

__all__ = ["BACKEND", "bound_sum", "reflected_amplitude"]
