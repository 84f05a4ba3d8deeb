"""Kernel backend selection.

The hot kernels (series convolution, echelon reduction, coefficient-window
extraction over F_{p^k}) come in two interchangeable implementations:

* ``_kernels_numba`` -- @njit versions, the default;
* ``_kernels_numpy`` -- a pure-numpy fallback.

Set ``RAYCERT_BACKEND=numpy`` to force the fallback, ``RAYCERT_BACKEND=numba``
to require the jitted path (import error if numba is missing).  The default
``auto`` prefers numba when importable.  ``benchmarks/bench_kernels.py``
compares the two.
"""

import os

import numpy as np

MAX_KERNEL_PRIME = 1 << 20  # accumulator overflow bound; see _kernels_numba
MAX_KERNEL_LEN = 1 << 18


def _load():
    choice = os.environ.get("RAYCERT_BACKEND", "auto").lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"RAYCERT_BACKEND must be auto|numba|numpy, got {choice!r}")
    if choice in ("auto", "numba"):
        try:
            from . import _kernels_numba as K
            return K, "numba"
        except ImportError:
            if choice == "numba":
                raise
    from . import _kernels_numpy as K
    return K, "numpy"


_K, BACKEND = _load()


def _arr(a):
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.shape[0] > MAX_KERNEL_LEN:
        raise ValueError("kernel operand too long")
    return a


def conv_mod(a, b, p, red):
    if p > MAX_KERNEL_PRIME:
        raise ValueError("kernel arithmetic requires p <= 2**20")
    return _K.conv_mod(_arr(a), _arr(b), p, red)


def series_inv(a, p, red, order):
    return _K.series_inv(_arr(a), p, red, order)


def rref(mat, p, red, order):
    """In-place RREF; returns (rank, pivot-column indicator array)."""
    return _K.rref(mat, p, red, order)


def window_coeffs(A, avals, B, bval, t0, nt, p, red):
    return _K.window_coeffs(
        np.ascontiguousarray(A, dtype=np.int64),
        np.ascontiguousarray(avals, dtype=np.int64),
        _arr(B), bval, t0, nt, p, red,
    )


def nullspace(mat, p, red, order):
    """Kernel basis of mat (rows = conditions, cols = unknowns) over F_{p^k}.

    Returns (basis, rank): basis has shape (nullity, C, k) and is in the
    canonical RREF-complement form, deterministic for a fixed column order.
    """
    mat = np.ascontiguousarray(mat, dtype=np.int64)
    R, C, k = mat.shape
    if R == 0:
        basis = np.zeros((C, C, k), np.int64)
        for j in range(C):
            basis[j, j, 0] = 1 % p
        return basis, 0
    rank, piv = rref(mat, p, red, order)
    free = [c for c in range(C) if not piv[c]]
    pivcols = [c for c in range(C) if piv[c]]
    basis = np.zeros((len(free), C, k), np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc, 0] = 1 % p
        for ri, pc in enumerate(pivcols):
            basis[bi, pc] = (p - mat[ri, fc]) % p
    return basis, rank
