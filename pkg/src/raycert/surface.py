"""Surface layer: gates, intersection numbers, adjoint decomposition, certificates.

The ruled surface P(E) carries the section Sigma_1 and the purely inseparable
divisor Sigma_2; the degree-(q+1) cyclic cover S branched along their union
carries Gamma_i with pullback (q+1)Gamma_i.  All intersection numbers reduce
to the pairings H^2 = deg L, H.f = 1, f^2 = 0 upstairs and their pullbacks
downstairs, in exact rational arithmetic.

The adjoint bundle of K_S + m*A pushes down to curve-level summands
S^t(E) (x) L^(2+i) twisted by ((m-1)-(1+i)l) inf + Q; only the i = 0 summand
contributes values along Gamma_2, so the base-point verdict is: total h^0
positive, multiplication by s_Q an isomorphism on the first summand, and
every first-summand section evaluating to zero at the Sigma_2 point over Q.
The degree-one divisor class R_Q with m*R_Q ~ (m-1)inf + Q is never
constructed; only its linear-equivalence class enters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bundle import BundleRec, sym_E
from .cohomology import BasisRec, chi, h0_basis, h1_dim
from .curve import CurveCtx, PointRec, div_inf, div_point, iter_admissible_points
from .errors import GateFailure, InadmissiblePoint, MixedSurfaces
from .ff import FieldElem, is_prime, qth_root


@dataclass(frozen=True)
class ParamsRec:
    p: int
    n: int
    e: int
    m: int
    q: int
    ell: int
    N: int


@dataclass(frozen=True)
class GateReport:
    ok: bool
    params: ParamsRec | None
    failures: tuple[str, ...]
    details: tuple[tuple[str, str], ...]


def check_gates(p: int, n: int, e: int, m: int) -> GateReport:
    """Both parameter gates plus m <= q; failures are data, not errors."""
    failures = []
    details = []
    if not is_prime(p):
        return GateReport(False, None, (f"p = {p} is not prime",), ())
    if n < 1 or e < 1 or m < 1:
        return GateReport(False, None, ("n, e, m must all be >= 1",), ())
    q = p ** n
    qe = q * e
    details.append(("q", str(q)))
    if qe < 4:
        failures.append(f"qe = {qe} < 4 (degenerate curve)")
    two_g_minus_2 = qe * (qe - 3)
    sq_ok = two_g_minus_2 % (q + 1) == 0
    details.append(("divisibility (q+1) | qe(qe-3)",
                    f"{q + 1} | {two_g_minus_2}: {'pass' if sq_ok else 'fail'}"))
    if not sq_ok:
        failures.append(f"(square) divisibility violated: {q + 1} does not divide {two_g_minus_2}")
        return GateReport(False, None, tuple(failures), tuple(details))
    ell = e * (qe - 3) // (q + 1)
    details.append(("l", str(ell)))
    star_lhs = ell - q - 1
    star_rhs = e * (q - 2)
    star_ok = star_lhs >= star_rhs
    details.append(("star l-q-1 >= e(q-2)",
                    f"{star_lhs} >= {star_rhs}: {'pass' if star_ok else 'fail'}"))
    if not star_ok:
        failures.append(f"(star) violated: l-q-1 = {star_lhs} < e(q-2) = {star_rhs}")
    if m > q:
        failures.append(f"m = {m} exceeds q = {q}")
    N = ell + 1 - m
    # the weaker chain the argument actually consumes, reported separately
    weak_ok = N >= ell + 1 - q >= star_rhs
    details.append(("weak chain N >= l+1-q >= e(q-2)",
                    f"{N} >= {ell + 1 - q} >= {star_rhs}: {'pass' if weak_ok else 'fail'}"))
    if failures:
        return GateReport(False, None, tuple(failures), tuple(details))
    return GateReport(True, ParamsRec(p=p, n=n, e=e, m=m, q=q, ell=ell, N=N),
                      (), tuple(details))


def require_params(p: int, n: int, e: int, m: int) -> ParamsRec:
    rep = check_gates(p, n, e, m)
    if not rep.ok:
        raise GateFailure("; ".join(rep.failures))
    return rep.params


# -- intersection theory --

@dataclass(frozen=True)
class ClassP:
    """a*H + b*f on the ruled surface (H the O(1)-class, f the fiber)."""
    h: Fraction
    f: Fraction


@dataclass(frozen=True)
class ClassS:
    """Rational combination x*Gamma_1 + y*Gamma_2 + z*(fiber) on the cover."""
    g1: Fraction
    g2: Fraction
    fib: Fraction


def sigma1() -> ClassP:
    return ClassP(Fraction(1), Fraction(0))


def sigma2(params: ParamsRec) -> ClassP:
    # |O(q) (x) rho^* omega^(-1)|: q*H - (2g-2)*f
    qe = params.q * params.e
    return ClassP(Fraction(params.q), Fraction(-qe * (qe - 3)))


def fiber_class_p() -> ClassP:
    return ClassP(Fraction(0), Fraction(1))


def gamma1() -> ClassS:
    return ClassS(Fraction(1), Fraction(0), Fraction(0))


def gamma2() -> ClassS:
    return ClassS(Fraction(0), Fraction(1), Fraction(0))


def fiber_class_s() -> ClassS:
    return ClassS(Fraction(0), Fraction(0), Fraction(1))


def pullback(params: ParamsRec, c: ClassP) -> ClassS:
    """pi^* : a*H + b*f -> a(q+1)*Gamma_1 + b*(fiber)."""
    return ClassS(c.h * (params.q + 1), Fraction(0), c.f)


def canonical_class_s(params: ParamsRec) -> ClassS:
    # omega_S = pi^*(O(q-2) (x) rho^*(L (x) N)), deg(L (x) N) = (2q+1) l
    q, ell = params.q, params.ell
    return ClassS(Fraction((q - 2) * (q + 1)), Fraction(0), Fraction((2 * q + 1) * ell))


def ample_class(params: ParamsRec, deg_r: int = 1) -> ClassS:
    return ClassS(Fraction(1), Fraction(0), Fraction(deg_r))


def intersect(params: ParamsRec, c1, c2) -> Fraction:
    if isinstance(c1, ClassP) != isinstance(c2, ClassP):
        raise MixedSurfaces("classes live on different surfaces")
    if isinstance(c1, ClassP):
        deg_l = (params.q + 1) * params.ell  # e(qe-3)
        return c1.h * c2.h * deg_l + c1.h * c2.f + c1.f * c2.h
    q, ell = params.q, params.ell
    # pairing matrix on (Gamma_1, Gamma_2, fiber)
    g = ((Fraction(ell), Fraction(0), Fraction(1)),
         (Fraction(0), Fraction(-q * q * ell), Fraction(q)),
         (Fraction(1), Fraction(q), Fraction(0)))
    v1 = (c1.g1, c1.g2, c1.fib)
    v2 = (c2.g1, c2.g2, c2.fib)
    return sum(v1[i] * g[i][j] * v2[j] for i in range(3) for j in range(3))


def intersection_report(params: ParamsRec, deg_r: int = 1) -> dict:
    """Numeric sanity table: the anchored pairings and ampleness positivity."""
    qe = params.q * params.e
    a = ample_class(params, deg_r)
    rep = {
        "sigma1^2": intersect(params, sigma1(), sigma1()),
        "sigma1.sigma2": intersect(params, sigma1(), sigma2(params)),
        "gamma1^2": intersect(params, gamma1(), gamma1()),
        "gamma1.gamma2": intersect(params, gamma1(), gamma2()),
        "A^2": intersect(params, a, a),
        "A.gamma1": intersect(params, a, gamma1()),
        "A.gamma2": intersect(params, a, gamma2()),
        "A.fiber": intersect(params, a, fiber_class_s()),
    }
    rep["sigma1^2 == degL == (2g-2)/q"] = (
        rep["sigma1^2"] == (params.q + 1) * params.ell == Fraction(qe * (qe - 3), params.q))
    rep["pullback consistent"] = (
        intersect(params, pullback(params, sigma1()), pullback(params, sigma2(params)))
        == (params.q + 1) * rep["sigma1.sigma2"])
    rep["ample positive"] = (rep["A^2"] > 0 and rep["A.gamma1"] > 0
                             and rep["A.fiber"] > 0 and rep["A.gamma2"] >= 0)
    return rep


# -- adjoint decomposition --

@dataclass(frozen=True)
class Summand:
    i: int
    sym_power: int
    first: bool
    bundle: BundleRec | None  # None for the zero summands


def _summand_indices(q: int, m: int, s_base: int, gamma_mult: int) -> list[tuple[int, int]]:
    """(i, sym_power) pairs for pi_*(pi^* [O(s_base) (x) ...](gamma_mult * Gamma_1)).

    Normalizes gamma_mult into the 0 > -r >= -q range by peeling off copies of
    pi^* Sigma_1 = (q+1) Gamma_1, each shifting s_base by one.
    """
    while gamma_mult > 0:
        gamma_mult -= q + 1
        s_base += 1
    r = -gamma_mult
    assert 0 <= r < q + 1
    out = []
    for i in range(q + 1):
        sym = s_base - 1 - i if i < r else s_base - i
        out.append((i, sym))
    return out


def adjoint_summands(params: ParamsRec, Q: PointRec, ctx: CurveCtx) -> list[Summand]:
    """Curve-level pushforward summands of O_S(K_S + m A_{R_Q}).

    Summand i is S^t(E) (x) L^(2+i) twisted by ((m-1)-(1+i)l) inf + Q with
    t = q-2-i for i < q+1-m and t = q-1-i beyond; m R_Q ~ (m-1) inf + Q is
    used as the twist class.  The i = 0 summand is the only one contributing
    values along Gamma_2.
    """
    _require_admissible(Q)
    q, m, ell = params.q, params.m, params.ell
    idx = _summand_indices(q, m, q - 1, -(q + 1 - m))
    alt = _summand_indices(q, m, q - 2, m)
    assert idx == alt, "the two adjoint presentations disagree"
    out = []
    for i, sym in idx:
        if sym < 0:
            out.append(Summand(i=i, sym_power=sym, first=(i == 0), bundle=None))
            continue
        tw = div_inf((m - 1) - (1 + i) * ell) + div_point(Q, 1)
        b = sym_E(ctx, sym, alpha_pow=2 + i, twist=tw,
                  name=f"adj(i={i}): S^{sym}E.L^{2 + i}")
        out.append(Summand(i=i, sym_power=sym, first=(i == 0), bundle=b))
    return out


def _require_admissible(Q: PointRec):
    if Q.marker != "affine":
        raise InadmissiblePoint("Q must be an affine point (Q != infinity)")
    if not Q.z_val:
        raise InadmissiblePoint("the fiber z = 0 is excluded")


@dataclass(frozen=True)
class PropMainRec:
    Q: PointRec
    h0_noQ: int
    h0_withQ: int
    iso: bool
    fingerprint_noQ: str
    fingerprint_withQ: str


def verify_prop_main(params: ParamsRec, Q: PointRec, ctx: CurveCtx,
                     check_bounds: bool = True) -> PropMainRec:
    """Multiplication by s_Q on H^0(S^(q-2)E (x) L^2(-Delta)) is an isomorphism.

    Injectivity is automatic, so equality of the two dimensions decides.
    """
    _require_admissible(Q)
    q, N = params.q, params.N
    b0 = sym_E(ctx, q - 2, alpha_pow=2, twist=div_inf(-N), name="Sq-2E.L2(-D)")
    bq = sym_E(ctx, q - 2, alpha_pow=2, twist=div_inf(-N) + div_point(Q, 1),
               name="Sq-2E.L2(-D+Q)")
    r0 = h0_basis(ctx, b0, check_bounds)
    r1 = h0_basis(ctx, bq, check_bounds)
    return PropMainRec(Q=Q, h0_noQ=r0.dim, h0_withQ=r1.dim, iso=(r0.dim == r1.dim),
                       fingerprint_noQ=r0.fingerprint, fingerprint_withQ=r1.fingerprint)


@dataclass(frozen=True)
class SectionResidual:
    value: tuple            # V(s) = sum_j P_j(Q) w^j, as coefficient tuple
    coord_values: tuple     # per-coordinate P_j(Q)
    is_zero: bool


@dataclass(frozen=True)
class PointCertificate:
    Q: PointRec
    w: FieldElem
    prop_main: PropMainRec
    summand_dims: tuple[int, ...]
    h0_total: int
    residuals: tuple[SectionResidual, ...]
    all_zero: bool
    verdict: str


def certify_point(params: ParamsRec, Q: PointRec, ctx: CurveCtx,
                  check_bounds: bool = True,
                  collect_tables: bool = False):
    """Evaluate the base-point conditions at the Sigma_2 point over Q.

    Verdict BasePointCertified requires h0_total > 0, the multiplication map
    an isomorphism, and every first-summand basis section to evaluate to zero
    (the non-first summands vanish along Gamma_2 structurally: they are
    multiples of the cover coordinate).
    """
    _require_admissible(Q)
    summands = adjoint_summands(params, Q, ctx)
    prop = verify_prop_main(params, Q, ctx, check_bounds)
    dims = []
    first_basis: BasisRec | None = None
    tables = []
    for s in summands:
        if s.bundle is None:
            dims.append(0)
            continue
        basis = h0_basis(ctx, s.bundle, check_bounds)
        dims.append(basis.dim)
        if s.first:
            first_basis = basis
        if collect_tables:
            h1 = h1_dim(ctx, s.bundle, check_bounds)
            x = chi(ctx, s.bundle)
            assert basis.dim - h1 == x, f"Riemann-Roch failed on {s.bundle.name}"
            from .bundle import degree as bdeg
            tables.append({"name": s.bundle.name, "rank": s.bundle.rank,
                           "degree": bdeg(s.bundle), "h0": basis.dim,
                           "h1": h1, "chi": x})
    h0_total = sum(dims)

    c = Q.z_val
    w = qth_root(c, params.q)
    residuals = []
    all_zero = True
    for sec in first_basis.sections:
        coord_vals = []
        v = Q.field.zero()
        for j, label in enumerate(first_basis.bundle.labels):
            pj = sec.eval_numerator(j, c, Q.y1_val)
            coord_vals.append(pj)
            v = v + pj * w ** label
        zero = not v
        all_zero = all_zero and zero
        residuals.append(SectionResidual(value=v.co,
                                         coord_values=tuple(x.co for x in coord_vals),
                                         is_zero=zero))

    if h0_total > 0 and prop.iso and all_zero:
        verdict = "BasePointCertified"
    elif prop.iso and not all_zero:
        verdict = "Refuted"
    else:
        verdict = "Inconclusive"
    cert = PointCertificate(Q=Q, w=w, prop_main=prop, summand_dims=tuple(dims),
                            h0_total=h0_total, residuals=tuple(residuals),
                            verdict=verdict, all_zero=all_zero)
    return (cert, tables) if collect_tables else cert


def sample_certificates(params: ParamsRec, ctx: CurveCtx, kmax: int,
                        count: int, check_bounds: bool = True,
                        point_map=None) -> list[PointCertificate]:
    """Certify the first `count` admissible points swept over F_{p^k}, k <= kmax."""
    pts = list(iter_admissible_points(ctx, kmax=kmax, limit=count))
    runner = point_map or (lambda fn, xs: [fn(x) for x in xs])
    return runner(lambda pt: certify_point(params, pt, ctx, check_bounds), pts)
