"""Kernel backend selection.

The compiled extension is preferred when present; the pure-Python twin is
the fallback.  Both expose the same three kernels with identical results,
so selection only affects speed.  Set ZETAFLAT_BACKEND=pure or
ZETAFLAT_BACKEND=compiled to force a choice (forcing the compiled backend
fails loudly when the extension is not built).
"""

import os

from . import _kernels as _pure

_forced = os.environ.get("ZETAFLAT_BACKEND", "").strip().lower()
if _forced not in ("", "auto", "pure", "compiled"):
    raise ImportError(
        f"ZETAFLAT_BACKEND must be 'pure' or 'compiled', not {_forced!r}")

if _forced == "pure":
    _impl = _pure
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        if _forced == "compiled":
            raise
        _impl = _pure

BACKEND = "compiled" if _impl is not _pure else "pure"

enum_sum = _impl.enum_sum
dp_sum = _impl.dp_sum
dp_sum_mod = _impl.dp_sum_mod


def active_backend() -> str:
    """Name of the kernel set in use: 'compiled' or 'pure'."""
    return BACKEND
