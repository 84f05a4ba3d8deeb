import pytest

from raycert.bundle import (dual, line_from_frames, make_E, make_line_bundle,
                            make_sym_quotient, sym_E, tensor_twist)
from raycert.cohomology import (chi, cocycle_regularity, ell_invariant,
                                h0_basis, h0_dim, h1_dim, phi_report)
from raycert.curve import (curve_init, div_inf, div_point, h0_inf_count,
                           iter_admissible_points)
from raycert.errors import (NotAGlobalSection, RankOutOfRange,
                            UnsupportedDivisor)


@pytest.fixture(scope="session")
def ctx213():
    return curve_init(2, 1, 3)


@pytest.fixture(scope="session")
def ctx314():
    return curve_init(3, 1, 4)


def test_trivial_bundle(ctx213):
    basis = h0_basis(ctx213, make_line_bundle(ctx213, div_inf(0)))
    assert basis.dim == 1
    (sec,) = basis.sections
    assert sec.coords[0] == {(0, 0): ctx213.prime_field.one()}


def test_line_bundles_match_semigroup(ctx213, ctx314):
    for ctx in (ctx213, ctx314):
        for M in range(-4, 3 * ctx.g, max(ctx.g // 4, 1)):
            b = make_line_bundle(ctx, div_inf(M))
            assert h0_basis(ctx, b).dim == h0_inf_count(ctx, M)


def test_spot_values_213(ctx213):
    assert h0_dim(ctx213, make_line_bundle(ctx213, div_inf(15))) == 7
    assert h0_dim(ctx213, make_line_bundle(ctx213, div_inf(18))) == 10


def test_frame_L_matches_twist_L(ctx213, ctx314):
    # the eta-frame model of L^s and O(s*e(qe-3)*inf) agree on ten twists
    for ctx in (ctx213, ctx314):
        deg_l = ctx.e * (ctx.qe - 3)
        for s, extra in [(1, 0), (1, -3), (1, 5), (2, 0), (2, -7), (2, 2),
                         (3, -9), (1, -deg_l), (2, 1), (1, 7)]:
            via_frames = line_from_frames(ctx, s, div_inf(extra))
            via_twist = make_line_bundle(ctx, div_inf(s * deg_l + extra))
            assert h0_basis(ctx, via_frames).dim == h0_basis(ctx, via_twist).dim


def test_h1_spot_values(ctx213):
    assert h1_dim(ctx213, make_line_bundle(ctx213, div_inf(15))) == 1
    om = make_line_bundle(ctx213, div_inf(18))
    assert h1_dim(ctx213, om) == 1
    assert h0_dim(ctx213, om) - h1_dim(ctx213, om) == 18 + 1 - 10


def test_genus_from_omega(ctx213, ctx314):
    for ctx in (ctx213, ctx314):
        om = make_line_bundle(ctx, div_inf(2 * ctx.g - 2))
        assert h0_dim(ctx, om) == ctx.g


def test_l2_with_point_213(ctx213):
    # h1 vanishes since constants do not vanish at Q: dim stays 7
    Q = next(iter_admissible_points(ctx213, kmax=4, limit=1))
    b = line_from_frames(ctx213, 2, div_inf(-3) + div_point(Q, 1))
    assert h0_basis(ctx213, b).dim == 7
    b0 = line_from_frames(ctx213, 2, div_inf(-3))
    assert h0_basis(ctx213, b0).dim == 7


def test_minus_point_conditions(ctx213):
    # O(3inf - Q): only constants have pole order <= 3 and they cannot vanish at Q
    Q = next(iter_admissible_points(ctx213, kmax=4, limit=1))
    b = make_line_bundle(ctx213, div_inf(3) + div_point(Q, -1))
    assert h0_basis(ctx213, b).dim == 0
    b6 = make_line_bundle(ctx213, div_inf(6) + div_point(Q, -1))
    assert h0_basis(ctx213, b6).dim == h0_inf_count(ctx213, 6) - 1


def test_mixed_twist_rejected(ctx213):
    pts = list(iter_admissible_points(ctx213, kmax=3, limit=2))
    pair = [p for p in pts if p.z_val == pts[0].z_val]
    if len(pair) >= 2:
        d = div_point(pair[0], 1) + div_point(pair[1], -1)
        with pytest.raises(UnsupportedDivisor):
            h0_basis(ctx213, make_line_bundle(ctx213, d))


def test_riemann_roch_rank2(ctx314):
    for b in (make_E(ctx314),
              sym_E(ctx314, 2, alpha_pow=1),
              sym_E(ctx314, 1, alpha_pow=2, twist=div_inf(-9)),
              make_sym_quotient(ctx314, 0, div_inf(-9))):
        assert h0_dim(ctx314, b) - h1_dim(ctx314, b) == chi(ctx314, b)


def test_chi_spot_314(ctx314):
    b = sym_E(ctx314, 1, alpha_pow=2, twist=div_inf(-9))
    assert chi(ctx314, b) == 54


def test_multiplication_injectivity_bound(ctx314):
    Q = next(iter_admissible_points(ctx314, kmax=2, limit=1))
    for b in (make_line_bundle(ctx314, div_inf(40)),
              sym_E(ctx314, 1, alpha_pow=2, twist=div_inf(-9))):
        bq = tensor_twist(b, div_point(Q, 1), name="withQ")
        d0, d1 = h0_dim(ctx314, b), h0_dim(ctx314, bq)
        assert d0 <= d1 <= d0 + b.rank


def test_twist_isomorphism_property(ctx314):
    ell = ell_invariant(ctx314)
    deg_l = ctx314.e * (ctx314.qe - 3)
    for Q in iter_admissible_points(ctx314, kmax=2, limit=4):
        for m in (1, ctx314.q):
            N = ell + 1 - m
            for i in range(ctx314.q + 1):
                b0 = make_line_bundle(ctx314, div_inf(i * deg_l - N))
                b1 = make_line_bundle(ctx314, div_inf(i * deg_l - N) + div_point(Q, 1))
                assert h0_basis(ctx314, b0).dim == h0_basis(ctx314, b1).dim


def test_phi_boundary_q2(ctx213):
    rep = phi_report(ctx213, 0, 1)
    assert rep.dims == (7, 0, 7, 1)
    assert rep.phi_rank == 0
    assert not rep.surjective and rep.W_codim == 1
    with pytest.raises(RankOutOfRange):
        phi_report(ctx213, 1, 1)


def test_phi_not_surjective_314(ctx314):
    for m in range(1, ctx314.q + 1):
        for r in range(ctx314.q - 1):
            rep = phi_report(ctx314, r, m)
            assert not rep.surjective
            assert rep.W_codim >= 1
            # exactness bookkeeping: rank is between 0 and min dims
            assert 0 <= rep.phi_rank <= rep.dims[1]


def test_phi_rank_out_of_range(ctx314):
    with pytest.raises(RankOutOfRange):
        phi_report(ctx314, -1, 1)
    with pytest.raises(RankOutOfRange):
        phi_report(ctx314, ctx314.q - 1, 1)


def test_phi_dims_regression_314(ctx314):
    # frozen after validation: the line dims equal semigroup counts
    # (h0(O(63inf)) = 21, dual h0(O(45inf)) = 12), S^1(-D) = L^3(-9inf) =
    # O(99inf) = 46, and the rank-2 dim 57 closes Riemann-Roch: 57 - 3 = 54
    rep = phi_report(ctx314, 0, 1)
    assert rep.dims == (57, 46, 21, 12)
    assert rep.phi_rank == 10 and rep.W_codim == 2


def test_cocycle_values_314(ctx314):
    # r = 0, m = 1: every basis section passes with valuation >= N - e(q-2) = 5
    ell = ell_invariant(ctx314)
    N = ell + 1 - 1
    basis = h0_basis(ctx314, make_sym_quotient(ctx314, 1, div_inf(-N)))
    assert basis.dim == 46
    worst = None
    for s in basis.sections:
        rep = cocycle_regularity(ctx314, 0, 1, s)
        assert rep.passed and rep.sharp_ok
        if rep.min_valuation is not None:
            worst = rep.min_valuation if worst is None else min(worst, rep.min_valuation)
    assert rep.sharp_bound == 5
    assert worst is not None and worst >= 5


def test_cocycle_zero_section(ctx314):
    from raycert.cohomology import SectionRec
    ell = ell_invariant(ctx314)
    b = make_sym_quotient(ctx314, 1, div_inf(-(ell)))
    s = SectionRec(bundle=b, field=ctx314.prime_field, denom_c=None,
                   coords=({},))
    rep = cocycle_regularity(ctx314, 0, 1, s)
    assert rep.passed and rep.min_valuation is None


def test_cocycle_wrong_N_rejected(ctx314):
    ell = ell_invariant(ctx314)
    basis = h0_basis(ctx314, make_sym_quotient(ctx314, 1, div_inf(-(ell + 1 - 1))))
    with pytest.raises(NotAGlobalSection):
        cocycle_regularity(ctx314, 0, 2, basis.sections[0])  # N mismatch


def test_cocycle_mutated_section_rejected(ctx314):
    # multiply one coordinate by z: the infinity bound breaks
    ell = ell_invariant(ctx314)
    basis = h0_basis(ctx314, make_sym_quotient(ctx314, 1, div_inf(-(ell))))
    sec = next(s for s in basis.sections if not s.is_zero())
    bad_coords = []
    for d in sec.coords:
        bad_coords.append({(a + 1, b): c for (a, b), c in d.items()})
    from raycert.cohomology import SectionRec
    bad = SectionRec(bundle=sec.bundle, field=sec.field, denom_c=None,
                     coords=tuple(bad_coords))
    with pytest.raises(NotAGlobalSection):
        cocycle_regularity(ctx314, 0, ctx314.q, bad)


def test_determinism(ctx314):
    b = sym_E(ctx314, 1, alpha_pow=2, twist=div_inf(-9))
    r1 = h0_basis(ctx314, b)
    r2 = h0_basis(ctx314, b)
    assert r1.fingerprint == r2.fingerprint
    assert [s.coords for s in r1.sections] == [s.coords for s in r2.sections]


def test_dual_twist_roundtrip_dims(ctx314):
    # h1(h1-dual) symmetry: h1(b) = h0(omega (x) dual(b)) twice gives back h0(b)
    b = make_line_bundle(ctx314, div_inf(40))
    om_dual = tensor_twist(dual(b), div_inf(2 * ctx314.g - 2))
    assert h1_dim(ctx314, om_dual) == h0_dim(ctx314, b)
