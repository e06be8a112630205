"""Backend selection: compiled kernel when available, pure Python otherwise.

Set KLUCB_TRANSFER_BACKEND=python|cython to force a choice; forcing cython
without the compiled extension raises at import time.
"""

from __future__ import annotations

import os

from . import _kernel_py

try:
    from . import _kernel
except ImportError:
    _kernel = None


def get_backend(name: str | None = None):
    if name is None:
        name = os.environ.get("KLUCB_TRANSFER_BACKEND")
    if name is None:
        return _kernel if _kernel is not None else _kernel_py
    if name == "python":
        return _kernel_py
    if name == "cython":
        if _kernel is None:
            raise ImportError("compiled kernel requested but not built")
        return _kernel
    raise ValueError(f"unknown backend {name!r}")


def available_backends() -> list[str]:
    names = ["python"]
    if _kernel is not None:
        names.append("cython")
    return names
