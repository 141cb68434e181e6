"""Kernel backend selection.

The hot scanning loops exist twice: a compiled extension
(``dyckstream._speedups``, built from Cython at install time) and a
pure-Python mirror (``dyckstream._fallback``).  ``load`` resolves a
backend by name and ``pick`` chooses one for a concrete run, falling
back to Python when the run needs features the compiled kernels do not
have (event tracing, moduli at or above ``KERNEL_P_MAX``).

The default can be forced with the ``DYCKSTREAM_BACKEND`` environment
variable (``auto``, ``python`` or ``cython``).
"""

from __future__ import annotations

import os

from .fingerprint import KERNEL_P_MAX

_NAMES = ("auto", "python", "cython")


def load(name: str | None = None):
    """Return ``(label, module)`` for the requested kernel backend."""
    if name is None:
        name = os.environ.get("DYCKSTREAM_BACKEND") or "auto"
    if name not in _NAMES:
        raise ValueError(f"unknown backend {name!r}; expected one of {_NAMES}")
    if name == "python":
        from . import _fallback

        return "python", _fallback
    try:
        from . import _speedups

        return "cython", _speedups
    except ImportError:
        if name == "cython":
            raise ImportError(
                "the compiled kernels are not available; reinstall with a C "
                "compiler present, or use backend='python'"
            ) from None
        from . import _fallback

        return "python", _fallback


def pick(backend: str | None, p: int, tracer=None):
    """Choose the backend for one checker run.

    An explicit ``backend`` wins; incompatible explicit choices raise.
    Otherwise the compiled kernels are preferred when importable, except
    that tracing and oversized moduli route to the pure backend.
    """
    if tracer is not None:
        if backend == "cython":
            raise ValueError("event tracing requires the python backend")
        return load("python")
    if p >= KERNEL_P_MAX:
        if backend == "cython":
            raise ValueError(
                f"modulus {p} is too large for the compiled kernels "
                f"(limit {KERNEL_P_MAX})"
            )
        return load("python")
    return load(backend)
