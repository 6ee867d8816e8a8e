"""Kernel selection: compiled extension when built, pure Python otherwise.

All kernels take C-contiguous ``uint8`` codings and ``int64`` offset arrays.
"""

try:
    from ._ckernels import contingency, paint, word_hits

    BACKEND = "cython"
except ImportError:  # extension not built
    from ._pykernels import contingency, paint, word_hits

    BACKEND = "python"

__all__ = ["BACKEND", "contingency", "paint", "word_hits"]
