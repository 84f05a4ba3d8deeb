import pytest

from raycert.bundle import (bundle_invariants, det_valuation, degree, dual,
                            line_from_frames, make_E, make_line_bundle,
                            make_sym_quotient, mat_identity_check, sym_E,
                            tensor_twist)
from raycert.curve import curve_init, div_inf
from raycert.errors import RankOutOfRange


@pytest.fixture(scope="session")
def ctx213():
    return curve_init(2, 1, 3)


@pytest.fixture(scope="session")
def ctx314():
    return curve_init(3, 1, 4)


def test_E_transition_213(ctx213):
    E = make_E(ctx213)
    # [[1, y^-3], [0, y^9]]
    assert E.trans[0][0] == {0: 1}
    assert E.trans[0][1] == {-3: 1}
    assert E.trans[1][0] == {}
    assert E.trans[1][1] == {9: 1}
    assert det_valuation(E) == 9 == ctx213.e * (ctx213.qe - 3)


def test_E_transition_314(ctx314):
    E = make_E(ctx314)
    assert E.trans[0][1] == {-4: 1}
    assert E.trans[1][1] == {36: 1}


def test_deg_E_equals_deg_L(ctx213, ctx314):
    for ctx in (ctx213, ctx314):
        assert degree(make_E(ctx)) == degree(line_from_frames(ctx, 1))


def test_line_bundle_degrees(ctx213):
    L = line_from_frames(ctx213, 1)
    assert degree(L) == 9
    omega = make_line_bundle(ctx213, div_inf(18))
    assert degree(omega) == 18 == 2 * ctx213.g - 2


def test_sym_quotient_q2(ctx213):
    # q = 2: S^0 has rank 1 and equals L^2 (single label j = 0)
    s0 = make_sym_quotient(ctx213, 0)
    assert s0.rank == 1 and s0.labels == (0,)
    assert s0.trans[0][0] == {18: 1}  # alpha^2
    s1 = make_sym_quotient(ctx213, 1)
    assert s1.rank == 0


def test_sym_quotient_q3(ctx314):
    # q = 3, r = 1: rank 1, top graded piece L^3
    s1 = make_sym_quotient(ctx314, 1)
    assert s1.rank == 1 and s1.labels == (1,)
    assert s1.trans[0][0] == {3 * 36: 1}  # alpha^3


def test_sym_quotient_binomial_kill():
    # q = 4: C(2,1) = 2 = 0 mod 2 kills the middle off-diagonal entry
    ctx = curve_init(2, 2, 5)
    s0 = make_sym_quotient(ctx, 0)
    assert s0.rank == 3 and s0.labels == (0, 1, 2)
    assert s0.trans[1][2] == {}  # C(2,1) mod 2
    assert s0.trans[0][1] != {} and s0.trans[0][2] != {}


def test_sym_quotient_range(ctx314):
    with pytest.raises(RankOutOfRange):
        make_sym_quotient(ctx314, -1)
    with pytest.raises(RankOutOfRange):
        make_sym_quotient(ctx314, ctx314.q)


def test_degree_additivity_exact_sequence(ctx314):
    # deg S^r = deg L^(r+2) + deg S^(r+1) over the quotient exact sequence
    q = ctx314.q
    for m in (1, 2, 3):
        ell = ctx314.e * (ctx314.qe - 3) // (q + 1)
        tw = div_inf(-(ell + 1 - m))
        for r in range(q - 1):
            d_r = degree(make_sym_quotient(ctx314, r, tw))
            d_r1 = degree(make_sym_quotient(ctx314, r + 1, tw))
            d_line = degree(line_from_frames(ctx314, r + 2, tw))
            assert d_r == d_line + d_r1


def test_degree_spot_314(ctx314):
    # S^1 E tensor L^2 twisted by -9*inf: 36 + 2*72 - 2*9 = 162
    b = sym_E(ctx314, 1, alpha_pow=2, twist=div_inf(-9))
    assert degree(b) == 162
    inv = bundle_invariants(b)
    assert inv.det_valuation == 36 + 2 * 72
    assert sum(inv.graded_degrees) == 162
    assert inv.graded_degrees == (72 - 9, 108 - 9)


def test_dual_involution(ctx314):
    for b in (make_E(ctx314), sym_E(ctx314, 2, alpha_pow=1, twist=div_inf(5)),
              make_sym_quotient(ctx314, 0, div_inf(-9))):
        dd = dual(dual(b))
        assert dd == b
        assert degree(dual(b)) == -degree(b)


def test_inverse_transition_exact(ctx314):
    for b in (make_E(ctx314), sym_E(ctx314, 2), make_sym_quotient(ctx314, 0)):
        assert mat_identity_check(b.trans, b.inverse_transition(), b.p)


def test_transition_diagonal_unit_monomials(ctx314):
    for t in range(0, 3):
        b = sym_E(ctx314, t, alpha_pow=1)
        for i in range(b.rank):
            assert len(b.trans[i][i]) == 1


def test_tensor_twist_degree(ctx213):
    E = make_E(ctx213)
    b = tensor_twist(E, div_inf(5))
    assert degree(b) == degree(E) + 2 * 5
