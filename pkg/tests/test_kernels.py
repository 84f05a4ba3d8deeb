"""Backend agreement: the numba kernels and the numpy fallback must match."""

import numpy as np
import pytest

from raycert import _kernels_numpy as KNP
from raycert.ff import make_field

try:
    from raycert import _kernels_numba as KNB
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

pytestmark = pytest.mark.skipif(not HAVE_NUMBA, reason="numba unavailable")

FIELDS = [(2, 1), (2, 2), (3, 1), (3, 3), (5, 2)]


def _rand(rng, shape, p):
    return rng.integers(0, p, size=shape, dtype=np.int64)


@pytest.mark.parametrize("p,k", FIELDS)
def test_conv_mod_agree(p, k):
    field = make_field(p, k)
    rng = np.random.default_rng(1)
    a = _rand(rng, (37, k), p)
    b = _rand(rng, (23, k), p)
    got = KNB.conv_mod(a, b, p, field.red)
    want = KNP.conv_mod(a, b, p, field.red)
    assert np.array_equal(got, want)


@pytest.mark.parametrize("p,k", FIELDS)
def test_conv_mod_matches_scalar_field(p, k):
    # independent check against FieldElem arithmetic on a tiny instance
    field = make_field(p, k)
    rng = np.random.default_rng(5)
    a = _rand(rng, (4, k), p)
    b = _rand(rng, (3, k), p)
    out = KNP.conv_mod(a, b, p, field.red)
    for t in range(out.shape[0]):
        acc = field.zero()
        for i in range(4):
            j = t - i
            if 0 <= j < 3:
                acc = acc + field.elem(list(a[i])) * field.elem(list(b[j]))
        assert list(out[t]) == list(acc.co)


@pytest.mark.parametrize("p,k", FIELDS)
def test_series_inv_agree_and_correct(p, k):
    field = make_field(p, k)
    rng = np.random.default_rng(2)
    a = _rand(rng, (40, k), p)
    a[0] = 0
    a[0, 0] = 1  # unit constant term
    got = KNB.series_inv(a, p, field.red, field.order)
    want = KNP.series_inv(a, p, field.red, field.order)
    assert np.array_equal(got, want)
    prod = KNP.conv_mod(a, want, p, field.red)[:40]
    expect = np.zeros_like(prod)
    expect[0, 0] = 1
    assert np.array_equal(prod, expect)


@pytest.mark.parametrize("p,k", FIELDS)
def test_rref_and_nullspace(p, k):
    field = make_field(p, k)
    rng = np.random.default_rng(3)
    mat = _rand(rng, (12, 18, k), p)
    m1, m2 = mat.copy(), mat.copy()
    r1, piv1 = KNB.rref(m1, p, field.red, field.order)
    r2, piv2 = KNP.rref(m2, p, field.red, field.order)
    assert r1 == r2
    assert np.array_equal(piv1, piv2)
    assert np.array_equal(m1, m2)
    # every nullspace vector really annihilates the original matrix
    from raycert.backend import nullspace
    basis, rank = nullspace(mat.copy(), p, field.red, field.order)
    assert rank == r1
    assert basis.shape[0] == 18 - rank
    for vec in basis:
        for row in mat:
            acc = field.zero()
            for c in range(18):
                acc = acc + field.elem(list(row[c])) * field.elem(list(vec[c]))
            assert not acc


@pytest.mark.parametrize("p,k", FIELDS)
def test_window_coeffs_agree(p, k):
    field = make_field(p, k)
    rng = np.random.default_rng(4)
    A = _rand(rng, (6, 25, k), p)
    avals = rng.integers(-30, 5, size=6, dtype=np.int64)
    B = _rand(rng, (31, k), p)
    bval = -7
    got = KNB.window_coeffs(A, avals, B, bval, -40, 50, p, field.red)
    want = KNP.window_coeffs(A, avals, B, bval, -40, 50, p, field.red)
    assert np.array_equal(got, want)
    # spot-check one coefficient against the full convolution
    m = 3
    full = KNP.conv_mod(A[m], B, p, field.red)
    t = -40 + 20
    idx = t - int(avals[m]) - bval
    if 0 <= idx < full.shape[0]:
        assert np.array_equal(want[m, 20], full[idx])
