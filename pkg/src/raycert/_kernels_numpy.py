"""Pure-numpy fallback kernels, semantically identical to ``_kernels_numba``.

Selected by setting RAYCERT_BACKEND=numpy (or automatically when numba is
unavailable).  Correctness-first: the big eliminations are looped in Python
with vectorized row operations, so the fallback is slow on the largest
parameter sets but produces bit-identical results.
"""

import numpy as np


def _fold(wide, p, red):
    """Reduce a (..., 2k-1) wide product array to (..., k) mod the modulus."""
    k = red.shape[1] if red.size else wide.shape[-1]
    if wide.shape[-1] == 1:  # k == 1
        return wide % p
    k = (wide.shape[-1] + 1) // 2
    wide = wide % p
    out = wide[..., :k].copy()
    for t in range(k - 1):
        c = wide[..., k + t]
        out = (out + c[..., None] * red[t]) % p
    return out


def _emul_pair(a, b, p, red):
    """Elementwise field product of two (..., k) arrays (broadcasting)."""
    k = a.shape[-1]
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
    wide = np.zeros(shape + (2 * k - 1,), np.int64)
    for u in range(k):
        for v in range(k):
            wide[..., u + v] += a[..., u] * b[..., v]
    return _fold(wide, p, red)


def _elem_pow(a, n, p, red):
    k = a.shape[0]
    acc = np.zeros(k, np.int64)
    acc[0] = 1 % p
    base = a.copy()
    while n > 0:
        if n & 1:
            acc = _emul_pair(acc, base, p, red)
        base = _emul_pair(base, base, p, red)
        n >>= 1
    return acc


def conv_mod(a, b, p, red):
    La, k = a.shape
    Lb = b.shape[0]
    wide = np.zeros((La + Lb - 1, 2 * k - 1), np.int64)
    for u in range(k):
        for v in range(k):
            wide[:, u + v] += np.convolve(a[:, u], b[:, v])
    return _fold(wide, p, red)


def series_inv(a, p, red, order):
    L, k = a.shape
    inv0 = _elem_pow(a[0], order - 2, p, red)
    b = np.zeros((L, k), np.int64)
    b[0] = inv0
    for t in range(1, L):
        head = a[1:t + 1]
        tail = b[t - 1::-1][:t]
        wide = np.zeros(2 * k - 1, np.int64)
        for u in range(k):
            for v in range(k):
                wide[u + v] += int(head[:, u] @ tail[:, v])
        acc = _fold(wide, p, red)
        b[t] = _emul_pair((p - acc) % p, inv0, p, red)
    return b


def rref(mat, p, red, order):
    R, C, k = mat.shape
    piv = np.zeros(C, np.int64)
    r = 0
    for c in range(C):
        if r >= R:
            break
        nz = np.nonzero(mat[r:, c].any(axis=1))[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            mat[[r, pr], c:] = mat[[pr, r], c:]
        inv = _elem_pow(mat[r, c].copy(), order - 2, p, red)
        mat[r, c:] = _emul_pair(mat[r, c:], np.broadcast_to(inv, (C - c, k)), p, red)
        rows = np.nonzero(mat[:, c].any(axis=1))[0]
        rows = rows[rows != r]
        if rows.size:
            fac = mat[rows, c]  # (nr, k)
            prod = _emul_pair(fac[:, None, :], mat[r, c:][None, :, :], p, red)
            mat[rows, c:] = (mat[rows, c:] - prod) % p
        piv[c] = 1
        r += 1
    return r, piv


def window_coeffs(A, avals, B, bval, t0, nt, p, red):
    nm, La, k = A.shape
    Lb = B.shape[0]
    out = np.zeros((nm, nt, k), np.int64)
    Bpad = np.concatenate([B, np.zeros((1, k), np.int64)])
    vs = np.arange(La)
    for m in range(nm):
        base = t0 - int(avals[m]) - bval
        tgt = base + np.arange(nt)
        idx = tgt[:, None] - vs[None, :]  # (nt, La) indices into B
        bad = (idx < 0) | (idx >= Lb)
        idx = np.where(bad, Lb, idx)
        Bg = Bpad[idx]  # (nt, La, k)
        wide = np.zeros((nt, 2 * k - 1), np.int64)
        for u in range(k):
            for v in range(k):
                wide[:, u + v] += Bg[:, :, v] @ A[m, :, u]
        out[m] = _fold(wide, p, red)
    return out
