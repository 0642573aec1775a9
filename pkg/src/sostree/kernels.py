"""Backend selection for the enumeration kernel.

The compiled extension is used when it was built; setting ``SOSTREE_PURE=1``
forces the numpy fallback.
"""
import os

from . import _pykernels

if os.environ.get("SOSTREE_PURE", "") not in ("", "0"):
    _ckernels = None
else:
    try:
        from . import _ckernels
    except ImportError:
        _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

ball_weights = (_ckernels or _pykernels).ball_weights
python_ball_weights = _pykernels.ball_weights
compiled_ball_weights = _ckernels.ball_weights if _ckernels is not None else None
