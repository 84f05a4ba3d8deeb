"""Numba-jitted hot kernels for arithmetic over F_{p^k}.

Shared data layout (same as the numpy fallback in ``_kernels_numpy``):

* a field element is a little-endian length-k int64 vector of residues mod p;
* ``red`` has shape (k-1, k); row t holds the coefficients of T^(k+t)
  reduced modulo the field modulus;
* ``order`` is p**k, used for inversion via a^(order-2).

Accumulators stay below 2**63 provided p <= 2**20 and operand lengths
stay below 2**18; the backend wrapper enforces both.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _elem_mul(a, b, p, red):
    k = a.shape[0]
    wide = np.zeros(2 * k - 1, np.int64)
    for s in range(k):
        av = a[s]
        if av == 0:
            continue
        for t in range(k):
            bv = b[t]
            if bv:
                wide[s + t] += av * bv
    out = np.empty(k, np.int64)
    for s in range(k):
        out[s] = wide[s] % p
    for t in range(k - 1):
        c = wide[k + t] % p
        if c:
            for s in range(k):
                out[s] = (out[s] + c * red[t, s]) % p
    return out


@njit(cache=True)
def _elem_pow(a, n, p, red):
    k = a.shape[0]
    acc = np.zeros(k, np.int64)
    acc[0] = 1 % p
    base = a.copy()
    while n > 0:
        if n & 1:
            acc = _elem_mul(acc, base, p, red)
        base = _elem_mul(base, base, p, red)
        n >>= 1
    return acc


@njit(cache=True)
def conv_mod(a, b, p, red):
    """Full convolution of two coefficient arrays (La,k) * (Lb,k) -> (La+Lb-1,k)."""
    La, k = a.shape
    Lb = b.shape[0]
    Lo = La + Lb - 1
    wide = np.zeros((Lo, 2 * k - 1), np.int64)
    for i in range(La):
        for s in range(k):
            av = a[i, s]
            if av == 0:
                continue
            for j in range(Lb):
                for t in range(k):
                    bv = b[j, t]
                    if bv:
                        wide[i + j, s + t] += av * bv
    out = np.zeros((Lo, k), np.int64)
    for i in range(Lo):
        for s in range(k):
            out[i, s] = wide[i, s] % p
        for t in range(k - 1):
            c = wide[i, k + t] % p
            if c:
                for s in range(k):
                    out[i, s] = (out[i, s] + c * red[t, s]) % p
    return out


@njit(cache=True)
def series_inv(a, p, red, order):
    """Multiplicative inverse of a unit power series, truncated to len(a) terms."""
    L, k = a.shape
    inv0 = _elem_pow(a[0], order - 2, p, red)
    b = np.zeros((L, k), np.int64)
    b[0] = inv0
    wide = np.zeros(2 * k - 1, np.int64)
    tmp = np.empty(k, np.int64)
    for t in range(1, L):
        for u in range(2 * k - 1):
            wide[u] = 0
        for s in range(1, t + 1):
            for u in range(k):
                av = a[s, u]
                if av == 0:
                    continue
                for v in range(k):
                    bv = b[t - s, v]
                    if bv:
                        wide[u + v] += av * bv
        for u in range(k):
            tmp[u] = wide[u] % p
        for u in range(k - 1):
            c = wide[k + u] % p
            if c:
                for v in range(k):
                    tmp[v] = (tmp[v] + c * red[u, v]) % p
        for u in range(k):
            tmp[u] = (p - tmp[u]) % p
        b[t] = _elem_mul(tmp, inv0, p, red)
    return b


@njit(cache=True)
def rref(mat, p, red, order):
    """In-place reduced row echelon form over F_{p^k}.

    Pivots scan columns left to right and take the first nonzero row;
    returns (rank, piv) where piv[c] == 1 marks pivot columns.
    """
    R, C, k = mat.shape
    piv = np.zeros(C, np.int64)
    wide = np.empty(2 * k - 1, np.int64)
    tmp = np.empty(k, np.int64)
    fac = np.empty(k, np.int64)
    r = 0
    for c in range(C):
        if r >= R:
            break
        pr = -1
        for i in range(r, R):
            for s in range(k):
                if mat[i, c, s] != 0:
                    pr = i
                    break
            if pr >= 0:
                break
        if pr < 0:
            continue
        if pr != r:
            for cc in range(c, C):
                for s in range(k):
                    t = mat[r, cc, s]
                    mat[r, cc, s] = mat[pr, cc, s]
                    mat[pr, cc, s] = t
        inv = _elem_pow(mat[r, c].copy(), order - 2, p, red)
        for cc in range(c, C):
            for u in range(2 * k - 1):
                wide[u] = 0
            for u in range(k):
                av = mat[r, cc, u]
                if av == 0:
                    continue
                for v in range(k):
                    bv = inv[v]
                    if bv:
                        wide[u + v] += av * bv
            for u in range(k):
                mat[r, cc, u] = wide[u] % p
            for u in range(k - 1):
                cf = wide[k + u] % p
                if cf:
                    for v in range(k):
                        mat[r, cc, v] = (mat[r, cc, v] + cf * red[u, v]) % p
        for i in range(R):
            if i == r:
                continue
            nz = False
            for s in range(k):
                if mat[i, c, s] != 0:
                    nz = True
                    break
            if not nz:
                continue
            for s in range(k):
                fac[s] = mat[i, c, s]
            for cc in range(c, C):
                for u in range(2 * k - 1):
                    wide[u] = 0
                for u in range(k):
                    av = fac[u]
                    if av == 0:
                        continue
                    for v in range(k):
                        bv = mat[r, cc, v]
                        if bv:
                            wide[u + v] += av * bv
                for u in range(k):
                    tmp[u] = wide[u] % p
                for u in range(k - 1):
                    cf = wide[k + u] % p
                    if cf:
                        for v in range(k):
                            tmp[v] = (tmp[v] + cf * red[u, v]) % p
                for u in range(k):
                    mat[i, cc, u] = (mat[i, cc, u] - tmp[u]) % p
        piv[c] = 1
        r += 1
    return r, piv


@njit(cache=True)
def window_coeffs(A, avals, B, bval, t0, nt, p, red):
    """Coefficients of A[m]*B at exponents t0..t0+nt-1 for each row batch m.

    A[m] starts at exponent avals[m]; B starts at exponent bval.
    Returns (nm, nt, k).
    """
    nm, La, k = A.shape
    Lb = B.shape[0]
    out = np.zeros((nm, nt, k), np.int64)
    wide = np.empty(2 * k - 1, np.int64)
    for m in range(nm):
        base = t0 - avals[m] - bval
        for ti in range(nt):
            tgt = base + ti
            vlo = tgt - (Lb - 1)
            if vlo < 0:
                vlo = 0
            vhi = tgt
            if vhi > La - 1:
                vhi = La - 1
            if vhi < vlo:
                continue
            for u in range(2 * k - 1):
                wide[u] = 0
            for v in range(vlo, vhi + 1):
                jb = tgt - v
                for u in range(k):
                    av = A[m, v, u]
                    if av == 0:
                        continue
                    for w in range(k):
                        bv = B[jb, w]
                        if bv:
                            wide[u + w] += av * bv
            for u in range(k):
                out[m, ti, u] = wide[u] % p
            for u in range(k - 1):
                cf = wide[k + u] % p
                if cf:
                    for v in range(k):
                        out[m, ti, v] = (out[m, ti, v] + cf * red[u, v]) % p
    return out
