"""Kernel backend selection.

The compiled extension is used when it imported and the scaled values fit
in int64; otherwise the pure-Python module (arbitrary precision) runs.
Set ``PARETOPRUNE_BACKEND=python`` to force the fallback.
"""

import os

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

# headroom for sums of a few entries inside the kernels
INT64_SAFE = 2**61


def available_backends():
    return ["cython", "python"] if _compiled is not None else ["python"]


def default_backend():
    forced = os.environ.get("PARETOPRUNE_BACKEND", "").strip().lower()
    if forced in ("python", "py"):
        return "python"
    return "cython" if _compiled is not None else "python"


def module_for(name):
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return _compiled
    if name == "python":
        return _kernels_py
    raise ValueError(f"unknown kernel backend {name!r}")


def fits_int64(values) -> bool:
    return all(-INT64_SAFE < v < INT64_SAFE for v in values)


class Kernels:
    """A distance matrix bound to one backend.

    ``D`` is a square list of Python ints. The compiled backend gets an int64
    copy; if any entry is too large the Python backend is used instead.
    """

    def __init__(self, D, backend=None):
        name = backend or default_backend()
        if name == "cython" and not fits_int64(v for row in D for v in row):
            name = "python"
        self.backend = name
        self.mod = module_for(name)
        self.D = D
        self.M = np.array(D, dtype=np.int64).reshape(len(D), len(D)) if name == "cython" else D

    def brute_force(self, k, mode):
        return self.mod.brute_force(self.M, k, mode)

    def cover_decide(self, tau, uncovered, cand, r, budget):
        return self.mod.cover_decide(self.M, tau, uncovered, cand, r, budget)

    def indep_decide(self, tau, cand, r, budget):
        return self.mod.indep_decide(self.M, tau, cand, r, budget)


def dp_module(values, backend=None):
    """Backend for the 2-D dynamic programs, given all coordinates involved."""
    name = backend or default_backend()
    values = list(values)
    if name == "cython" and not fits_int64(values):
        name = "python"
    return module_for(name), name


def as_array(values, backend_name):
    if backend_name == "cython":
        return np.array(values, dtype=np.int64)
    return list(values)
