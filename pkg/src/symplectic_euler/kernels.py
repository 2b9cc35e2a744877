"""Kernel backend selection.

The compiled extension is used when it imports; setting
SYMPLECTIC_EULER_KERNEL=python forces the numpy fallback.
"""

import os

if os.environ.get("SYMPLECTIC_EULER_KERNEL", "").lower() == "python":
    from ._pykernels import *  # noqa: F401,F403
    from ._pykernels import BACKEND
else:
    try:
        from ._ckernels import *  # noqa: F401,F403
        from ._ckernels import BACKEND
    except ImportError:
        from ._pykernels import *  # noqa: F401,F403
        from ._pykernels import BACKEND

from . import _pykernels as python_backend


def compiled_backend():
    """The compiled module, or None when it was not built."""
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


__all__ = [
    "BACKEND",
    "batch_matmul",
    "vec_codes",
    "point_images",
    "fixed_subspaces",
    "irreducible_flags",
    "x_pow_is_one",
    "python_backend",
    "compiled_backend",
]
