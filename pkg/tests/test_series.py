import numpy as np
import pytest

from raycert.errors import PrecisionTooLow
from raycert.ff import make_field
from raycert.series import (EXACT, Series, expand_basics, precision_floor,
                            translation_residual,
                            verify_differential_identities)


@pytest.fixture(scope="module")
def basics213():
    return expand_basics(2, 1, 3)


@pytest.fixture(scope="module")
def basics314():
    return expand_basics(3, 1, 4)


def test_x_first_terms_213(basics213):
    # one fixed-point step: correction term y*(y^6)^5 = y^31
    x = basics213.x
    assert x.valuation() == 6
    assert int(x.coef(6)[0]) == 1
    assert int(x.coef(31)[0]) == 1
    for t in range(7, 31):
        assert not x.coef(t).any()


def test_valuations_213(basics213):
    assert basics213.z.valuation() == -6
    assert basics213.y1.valuation() == -5
    assert basics213.gamma.valuation() == 1


@pytest.mark.parametrize("pne", [(2, 1, 3), (3, 1, 4)])
def test_gamma_local_parameter(pne):
    b = expand_basics(*pne)
    assert b.gamma.valuation() == 1
    assert b.gamma.coef(1).any()


def test_series_inverse_roundtrip(basics213):
    b = basics213
    one = b.z * b.x
    assert one.coef(0)[0] == 1
    assert (one - Series.mono(b.field, 0, 1, one.cutoff)).is_zero()
    y = b.y1 * b.x
    assert (y - Series.mono(b.field, 1, 1, y.cutoff)).is_zero()


@pytest.mark.parametrize("pne", [(2, 1, 3), (3, 1, 4)])
def test_differential_identities(pne):
    rep = verify_differential_identities(expand_basics(*pne))
    assert rep.chain_rule.ok
    assert rep.translation.ok
    assert rep.ok


def test_translation_mutation_detected(basics213):
    e, qe = basics213.e, basics213.qe
    res = translation_residual(basics213, alpha_exponent=e * (qe - 3) + 1)
    assert not res.is_zero()
    # the residual starts where the correct gamma term goes missing
    assert res.val == basics213.q * e * (qe - 3) + 1


def test_precision_too_low():
    with pytest.raises(PrecisionTooLow):
        expand_basics(2, 1, 3, precision=10)


def test_precision_floor_values():
    assert precision_floor(2, 1, 3) == 2 * 6 * 3 + 12 + 50


def test_expansion_consistent_across_precisions():
    lo = expand_basics(2, 1, 3)
    hi = expand_basics(2, 1, 3, precision=precision_floor(2, 1, 3) + 40)
    d = lo.x - hi.x
    assert d.is_zero() and d.cutoff == lo.x.cutoff


def test_coef_beyond_cutoff_raises(basics213):
    with pytest.raises(PrecisionTooLow):
        basics213.x.coef(basics213.x.cutoff)


def test_zero_series_valuation_raises():
    f = make_field(2, 1)
    z = Series.zero(f, 50)
    with pytest.raises(PrecisionTooLow):
        z.valuation()


def test_mul_cutoff_tracking():
    f = make_field(2, 1)
    a = Series(f, 2, np.ones((3, 1), np.int64), 10)   # known below 10
    b = Series(f, -1, np.ones((2, 1), np.int64), 4)   # known below 4
    c = a * b
    assert c.val == 1
    assert c.cutoff == min(2 + 4, -1 + 10)


def test_exact_monomial_ops():
    f = make_field(3, 1)
    m = Series.mono(f, -4, 2)
    inv = m.inverse()
    assert inv.val == 4 and inv.cutoff == EXACT
    prod = m * inv
    assert prod.val == 0 and int(prod.coef(0)[0]) == 1


def test_deriv_char_p():
    f = make_field(2, 1)
    s = Series(f, 2, np.array([[1], [1], [1]], np.int64), 20)  # y^2+y^3+y^4
    d = s.deriv()
    assert d.valuation() == 2  # only the y^3 term survives in char 2
    assert d.cutoff == 19
