"""Sweep-kernel selection: compiled extension if present, pure Python twin
otherwise. Both implement the same labeled_sweep contract; COMPILED reports
which one is active and force_pure() lets benchmarks and tests pin the pure
implementation."""

from __future__ import annotations

from . import _kernel_py

try:
    from . import _kernel as _impl

    COMPILED = True
except ImportError:
    _impl = _kernel_py
    COMPILED = False

labeled_sweep = _impl.labeled_sweep


def force_pure():
    """Switch this process to the pure-Python kernel. Returns the previous
    implementation so callers can restore it."""
    global labeled_sweep, _impl, COMPILED
    prev = (_impl, COMPILED)
    _impl = _kernel_py
    COMPILED = False
    labeled_sweep = _kernel_py.labeled_sweep
    return prev


def restore(prev):
    global labeled_sweep, _impl, COMPILED
    _impl, COMPILED = prev
    labeled_sweep = _impl.labeled_sweep
