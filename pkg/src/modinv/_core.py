"""Kernel selection: the Cython extension if importable, else ``_fallback``."""

import os

from . import _fallback

if os.environ.get("MODINV_PURE") == "1":
    _impl = _fallback
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _fallback

BACKEND = "cython" if _impl is not _fallback else "python"

mul_packed = _impl.mul_packed
closure_order = _impl.closure_order
rank_mod_p = _impl.rank_mod_p
