"""Hot loops with a compiled implementation chosen at import when available."""
from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def available_backends():
    return ["python"] + (["cython"] if _compiled is not None else [])


def _impl(backend):
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    if backend == "python":
        return _kernels_py
    raise ValueError(f"unknown backend {backend!r}")


def scan_gl3(q, T, lo, hi, backend=None):
    return _impl(backend).scan_gl3(q, T, lo, hi)


def count_cosets(p, K, vals, backend=None):
    return _impl(backend).count_cosets(p, K, list(vals))
