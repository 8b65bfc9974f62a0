"""Backend dispatch for the hot numeric kernels.

Two interchangeable implementations exist:

* ``numba_backend`` — explicit loops compiled with ``@njit`` (default
  when numba imports cleanly).
* ``numpy_backend`` — pure-numpy fallback built on strided views and
  per-kernel-position slicing.

Selection is controlled by the ``FOODNET_BACKEND`` environment variable:
``auto`` (default), ``numba``, or ``numpy``. Both backends expose the
same function surface and agree within float tolerance; ``foodnet bench``
can time them side by side.
"""

from __future__ import annotations

import contextlib
import os

from foodnet.kernels import numpy_backend

_ENV_VAR = "FOODNET_BACKEND"

_active = None
_active_name = None


def _resolve(name: str):
    if name == "numpy":
        return numpy_backend, "numpy"
    if name == "numba":
        from foodnet.kernels import numba_backend

        return numba_backend, "numba"
    if name == "auto":
        try:
            from foodnet.kernels import numba_backend

            return numba_backend, "numba"
        except ImportError:
            return numpy_backend, "numpy"
    raise ValueError(f"unknown kernel backend {name!r} (expected auto|numba|numpy)")


def _init():
    global _active, _active_name
    if _active is None:
        _active, _active_name = _resolve(os.environ.get(_ENV_VAR, "auto").lower())


def get(name: str | None = None):
    """Return a backend module: the active one, or an explicit one by name."""
    if name is not None:
        return _resolve(name)[0]
    _init()
    return _active


def active_name() -> str:
    _init()
    return _active_name


def available_names() -> list[str]:
    names = ["numpy"]
    try:
        _resolve("numba")
        names.insert(0, "numba")
    except ImportError:
        pass
    return names


@contextlib.contextmanager
def use(name: str):
    """Temporarily force a backend (used by benchmarks and tests)."""
    global _active, _active_name
    _init()
    prev = (_active, _active_name)
    _active, _active_name = _resolve(name)
    try:
        yield _active
    finally:
        _active, _active_name = prev
