"""Two-chart models of the sheaves on the curve.

A BundleRec holds a transition matrix of Laurent polynomials in y with
prime-field coefficients: column j is the U1-frame generator labelled
``labels[j]``, row i the infinity-frame generator, and a section with
U1-coordinates u has infinity-coordinates w = M u.  Twists are carried as
divisor records and never folded into the matrix, so conditions at infinity
and at fiber points stay separable.

The rank-2 bundle inside the Frobenius pushforward has frames (1, q-th root
of z_i) and transition [[1, beta], [0, alpha]] with alpha = y^(e(qe-3)),
beta = y^(-e); symmetric powers and the graded quotients S^r expand this by
binomials mod p, staying triangular with unit-monomial diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

from .curve import CurveCtx, DivisorRec, div_inf
from .errors import RankOutOfRange

# Laurent polynomials in y over F_p: {exponent: coefficient}, no zero values.
LP = dict


def lp_add(a: LP, b: LP, p: int) -> LP:
    out = dict(a)
    for k, c in b.items():
        out[k] = (out.get(k, 0) + c) % p
    return {k: c for k, c in out.items() if c}


def lp_mul(a: LP, b: LP, p: int) -> LP:
    out: LP = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            out[k] = (out.get(k, 0) + ca * cb) % p
    return {k: c for k, c in out.items() if c}


def lp_neg(a: LP, p: int) -> LP:
    return {k: (-c) % p for k, c in a.items()}


def lp_mono(exp: int, coef: int, p: int) -> LP:
    coef %= p
    return {exp: coef} if coef else {}


def lp_min_exp(a: LP) -> int:
    return min(a)


def lp_as_mono(a: LP) -> tuple[int, int]:
    assert len(a) == 1, f"expected a monomial, got {a}"
    (k, c), = a.items()
    return k, c


@dataclass
class BundleRec:
    p: int
    rank: int
    labels: tuple[int, ...]
    trans: list      # rank x rank nested lists of LP; w = trans . u
    twist: DivisorRec
    name: str = ""
    _inv: list | None = dc_field(default=None, repr=False, compare=False)

    def entry(self, i: int, j: int) -> LP:
        return self.trans[i][j]

    def inverse_transition(self) -> list:
        if self._inv is None:
            self._inv = _mat_inv(self.trans, self.p)
        return self._inv

    def signature(self):
        tr = tuple(tuple(tuple(sorted(e.items())) for e in row) for row in self.trans)
        tw = (self.twist.inf_mult,
              tuple((pt.key(), m) for pt, m in self.twist.affine))
        return (self.p, self.rank, self.labels, tr, tw)

    def __eq__(self, other):
        return isinstance(other, BundleRec) and self.signature() == other.signature()


def _is_upper(mat) -> bool:
    n = len(mat)
    return all(not mat[i][j] for i in range(n) for j in range(i))


def _is_lower(mat) -> bool:
    n = len(mat)
    return all(not mat[i][j] for i in range(n) for j in range(i + 1, n))


def _mat_inv(mat, p: int):
    """Inverse of a triangular transition matrix with monomial diagonal."""
    n = len(mat)
    if n == 0:
        return []
    if _is_lower(mat) and not _is_upper(mat):
        t = [[mat[j][i] for j in range(n)] for i in range(n)]
        inv_t = _mat_inv(t, p)
        return [[inv_t[j][i] for j in range(n)] for i in range(n)]
    assert _is_upper(mat), "transition matrix must be triangular"
    inv = [[{} for _ in range(n)] for _ in range(n)]
    diag_inv = []
    for i in range(n):
        exp, coef = lp_as_mono(mat[i][i])
        diag_inv.append(lp_mono(-exp, pow(coef, p - 2, p), p))
        inv[i][i] = diag_inv[i]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc: LP = {}
            for t in range(i + 1, j + 1):
                acc = lp_add(acc, lp_mul(mat[i][t], inv[t][j], p), p)
            inv[i][j] = lp_neg(lp_mul(diag_inv[i], acc, p), p)
    return inv


def mat_identity_check(mat, inv, p: int) -> bool:
    n = len(mat)
    for i in range(n):
        for j in range(n):
            acc: LP = {}
            for t in range(n):
                acc = lp_add(acc, lp_mul(mat[i][t], inv[t][j], p), p)
            if acc != ({0: 1} if i == j else {}):
                return False
    return True


# -- constructors --

def make_line_bundle(ctx: CurveCtx, D: DivisorRec, name: str = "") -> BundleRec:
    return BundleRec(p=ctx.p, rank=1, labels=(0,), trans=[[{0: 1}]], twist=D,
                     name=name or f"O({D.inf_mult}inf{'+pts' if D.affine else ''})")


def line_from_frames(ctx: CurveCtx, s: int = 1, twist: DivisorRec | None = None,
                     name: str = "") -> BundleRec:
    """L^s with the eta-frames: transition alpha^s (degree s*e*(qe-3))."""
    d = s * ctx.e * (ctx.qe - 3)
    return BundleRec(p=ctx.p, rank=1, labels=(0,), trans=[[lp_mono(d, 1, ctx.p)]],
                     twist=twist or div_inf(0), name=name or f"L^{s}")


def make_E(ctx: CurveCtx) -> BundleRec:
    p, e, qe = ctx.p, ctx.e, ctx.qe
    trans = [[{0: 1}, lp_mono(-e, 1, p)],
             [{}, lp_mono(e * (qe - 3), 1, p)]]
    return BundleRec(p=p, rank=2, labels=(0, 1), trans=trans, twist=div_inf(0),
                     name="E")


def sym_E(ctx: CurveCtx, t: int, alpha_pow: int = 0, twist: DivisorRec | None = None,
          name: str = "") -> BundleRec:
    """S^t(E), optionally tensored by L^alpha_pow (frames) and a twist divisor.

    U1-frame labels are the exponents j of the q-th root symbol, 0..t;
    transition[b][j] = C(j,b) alpha^(b+alpha_pow) beta^(j-b).
    """
    p, e, qe = ctx.p, ctx.e, ctx.qe
    if t < 0:
        return BundleRec(p=p, rank=0, labels=(), trans=[], twist=twist or div_inf(0),
                         name=name or "0")
    labels = tuple(range(t + 1))
    trans = []
    for b in range(t + 1):
        row = []
        for j in range(t + 1):
            if b <= j:
                row.append(lp_mono((b + alpha_pow) * e * (qe - 3) - (j - b) * e,
                                   comb(j, b), p))
            else:
                row.append({})
        trans.append(row)
    return BundleRec(p=p, rank=t + 1, labels=labels, trans=trans,
                     twist=twist or div_inf(0), name=name or f"S^{t}E")


def make_sym_quotient(ctx: CurveCtx, r: int, twist: DivisorRec | None = None,
                      name: str = "") -> BundleRec:
    """The quotient (S^(q-2)E / S^(r-1)E) tensored with L^2 and a twist.

    Rank q-1-r with U1-frame labels j = r..q-2; the zero bundle at r = q-1 is
    allowed so exact-sequence tests can cover the boundary.
    """
    p, q, e, qe = ctx.p, ctx.q, ctx.e, ctx.qe
    if not 0 <= r <= q - 1:
        raise RankOutOfRange(f"r must lie in 0..{q - 1}, got {r}")
    labels = tuple(range(r, q - 1))
    trans = []
    for b in labels:
        row = []
        for j in labels:
            if b <= j:
                row.append(lp_mono((b + 2) * e * (qe - 3) - (j - b) * e,
                                   comb(j, b), p))
            else:
                row.append({})
        trans.append(row)
    return BundleRec(p=p, rank=len(labels), labels=labels, trans=trans,
                     twist=twist or div_inf(0), name=name or f"Sq^{r}")


def tensor_twist(b: BundleRec, D: DivisorRec, name: str = "") -> BundleRec:
    return BundleRec(p=b.p, rank=b.rank, labels=b.labels, trans=b.trans,
                     twist=b.twist + D, name=name or b.name)


def dual(b: BundleRec, name: str = "") -> BundleRec:
    inv = b.inverse_transition()
    n = b.rank
    trans = [[inv[j][i] for j in range(n)] for i in range(n)]
    return BundleRec(p=b.p, rank=n, labels=b.labels, trans=trans,
                     twist=-b.twist, name=name or f"dual({b.name})")


def det_valuation(b: BundleRec) -> int:
    """y-valuation of det(transition); the determinant must be a monomial."""
    p = b.p
    det: LP = {0: 1}
    assert _is_upper(b.trans) or _is_lower(b.trans)
    for i in range(b.rank):
        det = lp_mul(det, b.trans[i][i], p)
    if b.rank == 0:
        return 0
    exp, _ = lp_as_mono(det)
    return exp


def degree(b: BundleRec) -> int:
    return det_valuation(b) + b.rank * b.twist.degree()


@dataclass(frozen=True)
class BundleInvariants:
    degree: int
    det_valuation: int
    dual: BundleRec
    graded_degrees: tuple[int, ...]


def bundle_invariants(b: BundleRec) -> BundleInvariants:
    graded = tuple(lp_as_mono(b.trans[i][i])[0] + b.twist.degree()
                   for i in range(b.rank))
    return BundleInvariants(degree=degree(b), det_valuation=det_valuation(b),
                            dual=dual(b), graded_degrees=graded)
