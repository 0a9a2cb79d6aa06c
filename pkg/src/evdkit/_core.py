"""Backend selection for the numerical kernels.

The compiled extension is used when importable; setting the environment
variable ``EVDKIT_PURE_PYTHON=1`` forces the numpy implementation.
"""

import os

if os.environ.get("EVDKIT_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
