"""Kernel backend selection.

The compiled Cython kernel is used when available; the pure-numpy one is
the fallback. ``SPINCHAIN_BACKEND=python`` or ``=compiled`` forces a
choice (forcing ``compiled`` raises if the extension is missing).
"""

from __future__ import annotations

import os

from . import _kernels_py

_FORCED = os.environ.get("SPINCHAIN_BACKEND", "").strip().lower()

if _FORCED == "python":
    _impl = _kernels_py
elif _FORCED in ("", "compiled"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        if _FORCED == "compiled":
            raise
        _impl = _kernels_py
else:
    raise RuntimeError(
        f"unknown SPINCHAIN_BACKEND {_FORCED!r}; expected 'python' or 'compiled'"
    )

BACKEND = _impl.BACKEND_NAME
rk4_propagate = _impl.rk4_propagate


def available_backends() -> dict:
    """Importable backend modules keyed by name."""
    found = {_kernels_py.BACKEND_NAME: _kernels_py}
    try:
        from . import _kernels

        found[_kernels.BACKEND_NAME] = _kernels
    except ImportError:
        pass
    return found


def get_backend(name: str | None = None):
    """Backend module by name, or the selected default."""
    if name is None:
        return _impl
    backends = available_backends()
    if name not in backends:
        raise KeyError(f"backend {name!r} not available; have {sorted(backends)}")
    return backends[name]
