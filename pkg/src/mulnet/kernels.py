"""Backend selection for the hot kernels.

The compiled module is used when it was built; otherwise the pure-Python
implementation is used. Both expose ``canonical_form``, ``refine`` and
``rooted_dags`` with identical results.
"""

from __future__ import annotations

from types import ModuleType

from mulnet import _pykernels

try:
    from mulnet import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_active: ModuleType = _ckernels if _ckernels is not None else _pykernels


def available_backends() -> list[str]:
    names = ["python"]
    if _ckernels is not None:
        names.insert(0, "cython")
    return names


def get_backend(name: str | None = None) -> ModuleType:
    if name is None:
        return _active
    if name == "python":
        return _pykernels
    if name == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def set_backend(name: str) -> None:
    global _active
    _active = get_backend(name)


def backend_name() -> str:
    return _active.BACKEND


def canonical_form(n, children, colors):
    return _active.canonical_form(n, children, colors)


def rooted_dags(n, max_leaves=0, leaf_indegree_one=False, trees_only=False):
    return _active.rooted_dags(n, max_leaves, leaf_indegree_one, trees_only)
