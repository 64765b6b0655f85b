"""Backend selection for the numeric kernels.

The compiled extension is preferred when importable; setting the environment
variable RAINBOWDP_PURE_PYTHON (to any non-empty value) before import forces
the pure-Python fallback. `use()` switches at runtime, which the benchmark and
the backend-equivalence tests rely on.
"""

from __future__ import annotations

import os

from . import _fast_py

_BACKENDS = {"python": _fast_py}

try:
    from . import _fast

    _BACKENDS["compiled"] = _fast
except ImportError:
    _fast = None

if os.environ.get("RAINBOWDP_PURE_PYTHON"):
    _active = _fast_py
else:
    _active = _BACKENDS.get("compiled", _fast_py)


def available() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def active_backend() -> str:
    return "compiled" if _active is _fast else "python"


def use(name: str) -> None:
    global _active
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; available: {available()}") from None


def relax_rank(indptr, indices, fixed, values, residual, e_eps, tol, max_sweeps):
    return _active.relax_rank(indptr, indices, fixed, values, residual, e_eps, tol, max_sweeps)


def dp_scan(edge_u, edge_v, probs, e_eps, tol):
    return _active.dp_scan(edge_u, edge_v, probs, e_eps, tol)
