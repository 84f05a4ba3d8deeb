"""The H^0 engine: global sections of two-chart bundles by valuation linear algebra.

A global section is a tuple of U1-coordinates u_j, regular on the affine
chart except for simple poles allowed at the +1 points of the twist.  The
engine enumerates candidate numerators from the monomial basis of a pole
bound derived from the inverse transition matrix, then imposes

* infinity conditions: each infinity-frame coordinate of w = M u, as a
  Laurent series in y, has valuation >= -(twist at infinity);
* fiber conditions: numerators vanish at every fiber point that carries no
  pole allowance (including non-rational ones, via remainders modulo the
  cofactor of the fiber polynomial), and whole coordinates vanish at -1
  twist points.

A kernel basis over the working field is the answer.  Recomputing with pole
bounds enlarged by qe must not change the dimension (BoundInstability
otherwise), and every coefficient inspected must lie strictly below the
series cutoff (PrecisionTooLow otherwise).

H^1 dimensions always go through Serre duality and this same engine.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from math import comb

import numpy as np

from . import backend
from .bundle import (BundleRec, dual, degree, line_from_frames,
                     lp_min_exp, make_sym_quotient, tensor_twist)
from .curve import CurveCtx, div_inf, fiber_poly, monomial_basis
from .errors import (BoundInstability, GateFailure, NotAGlobalSection,
                     PrecisionTooLow, RankOutOfRange, UnsupportedDivisor)
from .ff import FieldElem, fpoly_divmod, fpoly_mul
from .series import Series


@dataclass(frozen=True)
class SectionRec:
    """U1-frame coordinates of a global section.

    coords[j] maps monomial exponents (a, b) of z^a y1^b to coefficients;
    when denom_c is set every coordinate is that numerator divided by
    (z - denom_c).
    """
    bundle: BundleRec
    field: object
    denom_c: FieldElem | None
    coords: tuple

    def is_zero(self) -> bool:
        return all(not d for d in self.coords)

    def eval_numerator(self, j: int, c: FieldElem, t: FieldElem) -> FieldElem:
        acc = self.field.zero()
        for (a, b), coef in self.coords[j].items():
            acc = acc + coef * (c ** a) * (t ** b)
        return acc

    def coord_series(self, ctx: CurveCtx, j: int) -> Series:
        """Numerator of coordinate j as a series at infinity (no denominator)."""
        z_cut = ctx.basics.z.cutoff
        acc = Series.zero(self.field, z_cut)
        for (a, b), coef in self.coords[j].items():
            acc = acc + ctx.mono_series(a, b).lift(self.field).scale(coef)
        return acc


@dataclass(frozen=True)
class BasisRec:
    bundle: BundleRec
    field: object
    sections: tuple
    dim: int
    fingerprint: str


def _pole_bounds(b: BundleRec, m_inf: int, enlarge: int) -> list[int]:
    inv = b.inverse_transition()
    bounds = []
    for j in range(b.rank):
        worst = None
        for i in range(b.rank):
            if inv[j][i]:
                v = m_inf - lp_min_exp(inv[j][i])
                worst = v if worst is None else max(worst, v)
        bounds.append(worst + enlarge)
    return bounds


def h0_basis(ctx: CurveCtx, b: BundleRec, check_bounds: bool = True,
             _enlarge: int = 0) -> BasisRec:
    if b.rank == 0:
        return BasisRec(bundle=b, field=ctx.prime_field, sections=(), dim=0,
                        fingerprint=_fingerprint(b, ctx.prime_field, [], None))

    twist = b.twist
    m_inf = twist.inf_mult
    plus = twist.plus_points()
    minus = twist.minus_points()
    if plus and minus:
        raise UnsupportedDivisor("mixed +1/-1 affine twists in one fiber are out of scope")
    if plus or minus:
        fld = (plus or minus)[0].field
    else:
        fld = ctx.prime_field
    qe = ctx.qe
    denom_c = plus[0].z_val if plus else None

    bounds = _pole_bounds(b, m_inf, _enlarge)
    cands = []          # (j, a, bb) in deterministic order
    cand_cols = {}      # j -> (col0, count)
    mono_lists = []
    for j in range(b.rank):
        numer_bound = bounds[j] + (qe if denom_c is not None else 0)
        monos = monomial_basis(ctx, numer_bound)
        cand_cols[j] = (len(cands), len(monos))
        mono_lists.append(monos)
        cands.extend((j, a, bb) for (a, bb) in monos)
    ncand = len(cands)
    if ncand == 0:
        return BasisRec(bundle=b, field=fld, sections=(), dim=0,
                        fingerprint=_fingerprint(b, fld, [], None))

    # series data over the working field
    if denom_c is not None:
        z_f = ctx.basics.z.lift(fld)
        den = z_f - Series.mono(fld, 0, denom_c, z_f.cutoff)
        den_inv = den.inverse()
        b_arr, b_val, b_cut = den_inv.coeffs, den_inv.val, den_inv.cutoff
    else:
        b_arr = np.zeros((1, fld.k), np.int64)
        b_arr[0, 0] = 1
        b_val, b_cut = 0, 1 << 60

    # per-coordinate series windows needed by the infinity conditions
    hi_t = -m_inf - 1  # largest exponent carrying a condition
    row_windows = []   # (i, lo_i) for frame rows that carry conditions
    for i in range(b.rank):
        lo_i = None
        for j in range(b.rank):
            entry = b.trans[i][j]
            if not entry or cand_cols[j][1] == 0:
                continue
            min_val = min(-ctx.pole_order(a, bb) for (a, bb) in mono_lists[j]) + b_val
            lo_e = min(entry) + min_val
            lo_i = lo_e if lo_i is None else min(lo_i, lo_e)
        if lo_i is not None and lo_i <= hi_t:
            row_windows.append((i, lo_i))

    srange = {}  # j -> (s_lo, s_hi) exponent window of numerator*denominv series
    for i, lo_i in row_windows:
        for j in range(b.rank):
            entry = b.trans[i][j]
            if not entry or cand_cols[j][1] == 0:
                continue
            for h in entry:
                s_lo, s_hi = lo_i - h, hi_t - h
                if j in srange:
                    srange[j] = (min(srange[j][0], s_lo), max(srange[j][1], s_hi))
                else:
                    srange[j] = (s_lo, s_hi)

    windows = {}
    for j, (s_lo, s_hi) in srange.items():
        monos = mono_lists[j]
        series_list = [ctx.mono_series(a, bb).lift(fld) for (a, bb) in monos]
        La = max(s.coeffs.shape[0] for s in series_list)
        A = np.zeros((len(monos), La, fld.k), np.int64)
        avals = np.zeros(len(monos), np.int64)
        for mi, s in enumerate(series_list):
            A[mi, : s.coeffs.shape[0]] = s.coeffs
            avals[mi] = s.val
            prod_cut = min(s.val + b_cut, b_val + s.cutoff)
            if s_hi >= prod_cut:
                raise PrecisionTooLow(
                    f"need exponent {s_hi}, product cutoff {prod_cut}")
        windows[j] = backend.window_coeffs(A, avals, b_arr, b_val,
                                           s_lo, s_hi - s_lo + 1, fld.p, fld.red)

    # assemble the condition matrix
    n_inf_rows = sum(hi_t - lo_i + 1 for _, lo_i in row_windows)
    fiber_rows = []
    if denom_c is not None:
        f_c = fiber_poly(ctx, denom_c)
        cof = f_c
        for pt in plus:
            cof, rem = fpoly_divmod(cof, [-pt.y1_val, fld.one()], fld)
            assert not rem
        deg_h = len(cof) - 1
        # T^bb mod cofactor, bb = 0..qe-1
        tb = []
        cur = [fld.one()]
        for bb in range(qe):
            tb.append(list(cur) + [fld.zero()] * (deg_h - len(cur)))
            cur = fpoly_divmod(fpoly_mul(cur, [fld.zero(), fld.one()], fld), cof, fld)[1]
            cur = cur if cur else [fld.zero()]
        n_fiber = deg_h * sum(1 for j in range(b.rank) if cand_cols[j][1])
    else:
        n_fiber = len(minus) * sum(1 for j in range(b.rank) if cand_cols[j][1])

    nrows = n_inf_rows + n_fiber
    mat = np.zeros((nrows, ncand, fld.k), np.int64)

    r0 = 0
    for i, lo_i in row_windows:
        nt = hi_t - lo_i + 1
        for j in range(b.rank):
            entry = b.trans[i][j]
            col0, ncj = cand_cols[j]
            if not entry or ncj == 0:
                continue
            s_lo = srange[j][0]
            W = windows[j]
            for h, coef in entry.items():
                off = lo_i - h - s_lo
                blk = W[:, off: off + nt, :]  # (ncj, nt, k)
                mat[r0: r0 + nt, col0: col0 + ncj] = (
                    mat[r0: r0 + nt, col0: col0 + ncj]
                    + coef * blk.transpose(1, 0, 2)) % fld.p
        r0 += nt

    if denom_c is not None:
        cpum = _powers(denom_c, max((a for (_, a, _) in cands), default=0))
        for j in range(b.rank):
            col0, ncj = cand_cols[j]
            if ncj == 0:
                continue
            for s in range(deg_h):
                for mi, (a, bb) in enumerate(mono_lists[j]):
                    val = cpum[a] * tb[bb][s]
                    if val:
                        mat[r0, col0 + mi] = val.vec()
                r0 += 1
    elif minus:
        for j in range(b.rank):
            col0, ncj = cand_cols[j]
            if ncj == 0:
                continue
            for pt in minus:
                cpow = _powers(pt.z_val, max(a for (a, _) in mono_lists[j]))
                tpow = _powers(pt.y1_val, max(bb for (_, bb) in mono_lists[j]))
                for mi, (a, bb) in enumerate(mono_lists[j]):
                    val = cpow[a] * tpow[bb]
                    if val:
                        mat[r0, col0 + mi] = val.vec()
                r0 += 1
    assert r0 == nrows

    basis, _rank = backend.nullspace(mat, fld.p, fld.red, fld.order)
    dim = basis.shape[0]

    if check_bounds and _enlarge == 0:
        again = h0_basis(ctx, b, check_bounds=False, _enlarge=qe)
        if again.dim != dim:
            raise BoundInstability(
                f"dim changed {dim} -> {again.dim} under enlarged pole bounds")

    sections = []
    for vec in basis:
        coords = []
        for j in range(b.rank):
            col0, ncj = cand_cols[j]
            d = {}
            for mi in range(ncj):
                if vec[col0 + mi].any():
                    d[mono_lists[j][mi]] = fld.elem(list(vec[col0 + mi]))
            coords.append(d)
        sections.append(SectionRec(bundle=b, field=fld, denom_c=denom_c,
                                   coords=tuple(coords)))
    return BasisRec(bundle=b, field=fld, sections=tuple(sections), dim=dim,
                    fingerprint=_fingerprint(b, fld, cands, basis))


def _powers(x: FieldElem, n: int) -> list[FieldElem]:
    out = [x.field.one()]
    for _ in range(n):
        out.append(out[-1] * x)
    return out


def _fingerprint(b: BundleRec, fld, cands, basis) -> str:
    hsh = hashlib.sha256()
    hsh.update(repr(b.signature()).encode())
    hsh.update(repr((fld.p, fld.k, fld.modulus)).encode())
    hsh.update(repr(cands).encode())
    if basis is not None:
        hsh.update(np.ascontiguousarray(basis).tobytes())
    return hsh.hexdigest()[:16]


def h0_dim(ctx: CurveCtx, b: BundleRec, check_bounds: bool = True) -> int:
    key = b.signature()
    if key not in ctx._h0_memo:
        ctx._h0_memo[key] = h0_basis(ctx, b, check_bounds).dim
    return ctx._h0_memo[key]


def h1_dim(ctx: CurveCtx, b: BundleRec, check_bounds: bool = True) -> int:
    """h^1 via Serre duality: h^0 of omega tensor dual, omega = O((2g-2) inf)."""
    om_dual = tensor_twist(dual(b), div_inf(2 * ctx.g - 2),
                           name=f"omega*dual({b.name})")
    return h0_dim(ctx, om_dual, check_bounds)


def chi(ctx: CurveCtx, b: BundleRec) -> int:
    return degree(b) + b.rank * (1 - ctx.g)


def ell_invariant(ctx: CurveCtx) -> int:
    """l = e(qe-3)/(q+1); requires the divisibility gate."""
    num = ctx.e * (ctx.qe - 3)
    if num % (ctx.q + 1) != 0:
        raise GateFailure(f"(q+1) = {ctx.q + 1} does not divide e(qe-3) = {num}")
    return num // (ctx.q + 1)


@dataclass(frozen=True)
class PhiReport:
    """Connecting-map data for 0 -> L^(r+2) -> S^r -> S^(r+1) -> 0 twisted by -Delta."""
    r: int
    m: int
    dims: tuple[int, int, int, int]  # h0 S^r, h0 S^(r+1), h0 L^(r+2), h1 L^(r+2)
    phi_rank: int
    surjective: bool
    W_codim: int


def phi_report(ctx: CurveCtx, r: int, m: int, check_bounds: bool = True) -> PhiReport:
    q = ctx.q
    if not 0 <= r <= q - 2:
        raise RankOutOfRange(f"r must lie in 0..{q - 2}, got {r}")
    if not 1 <= m <= q:
        raise GateFailure(f"m must lie in 1..{q}, got {m}")
    ell = ell_invariant(ctx)
    tw = div_inf(-(ell + 1 - m))
    h0_sr = h0_dim(ctx, make_sym_quotient(ctx, r, tw), check_bounds)
    h0_sr1 = h0_dim(ctx, make_sym_quotient(ctx, r + 1, tw), check_bounds)
    line = line_from_frames(ctx, r + 2, tw)
    h0_l = h0_dim(ctx, line, check_bounds)
    h1_l = h1_dim(ctx, line, check_bounds)
    rank = h0_sr1 - h0_sr + h0_l
    return PhiReport(r=r, m=m, dims=(h0_sr, h0_sr1, h0_l, h1_l), phi_rank=rank,
                     surjective=(rank == h1_l), W_codim=h1_l - rank)


@dataclass(frozen=True)
class CocycleReport:
    r: int
    m: int
    min_valuation: int | None  # None = the pairing expression vanished (+inf)
    passed: bool
    sharp_bound: int
    sharp_ok: bool


def cocycle_regularity(ctx: CurveCtx, r: int, m: int, s: SectionRec) -> CocycleReport:
    """Regularity of the lifted cocycle of s in H^0(S^(r+1)(-Delta)).

    The infinity-side coordinates w_i = y^N v_i of s are paired into
    y^N * sum_i C(i, r) v_i alpha^(q-2-i) (-beta)^(i-r); the check is that
    this series is regular at infinity (valuation >= 0), with the sharper
    bound N - e(q-r-2) recorded as well.
    """
    q, e, qe = ctx.q, ctx.e, ctx.qe
    if not 0 <= r <= q - 2:
        raise RankOutOfRange(f"r must lie in 0..{q - 2}, got {r}")
    ell = ell_invariant(ctx)
    N = ell + 1 - m
    b = s.bundle
    expected_labels = tuple(range(r + 1, q - 1))
    if b.labels != expected_labels or b.twist.inf_mult != -N or b.twist.affine:
        raise NotAGlobalSection("section does not belong to S^(r+1)(-Delta)")

    fld = s.field
    cut = ctx.basics.z.cutoff
    w = []
    for i in range(b.rank):
        acc = Series.zero(fld, cut)
        for j in range(b.rank):
            entry = b.trans[i][j]
            if not entry:
                continue
            uj = s.coord_series(ctx, j)
            for h, coef in entry.items():
                acc = acc + uj.shift(h).scale(coef)
        w.append(acc)
        if not acc.is_zero() and acc.valuation() < N:
            raise NotAGlobalSection(
                f"coordinate {i} has infinity valuation {acc.valuation()} < {N}")

    expr = Series.zero(fld, cut)
    for idx, i in enumerate(expected_labels):
        scale = comb(i, r) * (-1) ** (i - r)
        shift = e * (qe - 3) * (q - 2 - i) - e * (i - r)
        expr = expr + w[idx].shift(shift).scale(scale)

    sharp = N - e * (q - r - 2)
    if expr.is_zero():
        return CocycleReport(r=r, m=m, min_valuation=None, passed=True,
                             sharp_bound=sharp, sharp_ok=True)
    v = expr.valuation()
    return CocycleReport(r=r, m=m, min_valuation=v, passed=(v >= 0),
                         sharp_bound=sharp, sharp_ok=(v >= sharp))
