"""Kernel selection: compiled extension if importable, else pure Python.

Set ``QCSP_PURE=1`` to force the pure-Python kernels.
"""

import os

from . import _pykernels

BACKEND = "python"
kernels = _pykernels

if os.environ.get("QCSP_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as kernels  # noqa: F811

        BACKEND = "cython"
    except ImportError:
        pass


def get_kernels(name: str | None = None):
    """Return the kernel module ``name`` ('cython' or 'python'), or the active one."""
    if name is None:
        return kernels
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown backend {name!r}")
