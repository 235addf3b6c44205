"""Select the kernel backend: compiled extension if importable, numpy otherwise.

Set ``GZKIT_PURE_PY=1`` to force the numpy fallback (used by the benchmark
and the backend-parity tests).
"""

import os

if os.environ.get("GZKIT_PURE_PY"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

COMPILED = bool(getattr(kernels, "COMPILED", False))

charpoly_kernel = kernels.charpoly
aberth_kernel = kernels.aberth
charpoly_ext_kernel = kernels.charpoly_ext
newton_polish_ext_kernel = kernels.newton_polish_ext
