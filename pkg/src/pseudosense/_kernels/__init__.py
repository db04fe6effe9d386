"""Selection kernels with a compiled fast path.

Importing this package binds ``topk_select`` and ``argmax_select`` to the
Cython extension when it has been built, and to the NumPy fallback
otherwise.  Set ``PSEUDOSENSE_KERNELS=python`` to force the fallback (used
by the benchmark and the cross-backend tests).

Both backends produce bit-identical output; only throughput differs.
"""

import os

from . import fallback

if os.environ.get("PSEUDOSENSE_KERNELS", "").lower() == "python":
    _impl = fallback
    BACKEND = "python"
else:
    try:
        from . import _simcore as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = fallback
        BACKEND = "python"

topk_select = _impl.topk_select
argmax_select = _impl.argmax_select

__all__ = ["topk_select", "argmax_select", "BACKEND", "fallback"]
