"""Truncated Laurent series at infinity in the local parameter y.

A Series stores the exact coefficients for exponents val .. val+L-1, knows
that everything from val+L up to ``cutoff`` is zero, and refuses to answer
questions at or beyond the cutoff (PrecisionTooLow) instead of guessing.
Exact monomials and polynomials carry the EXACT sentinel cutoff.

``expand_basics`` produces the local expansions of the curve coordinates:
x solves x = y^(qe) - y*x^(qe-1) by y-adic fixed-point iteration, z = 1/x,
y1 = y/x, and gamma = (x/y^(qe))^(qe-2) * y is a second local parameter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import PrecisionTooLow
from .ff import FieldDesc, FieldElem, make_field

EXACT = 1 << 60


def precision_floor(p: int, n: int, e: int) -> int:
    qe = p ** n * e
    return 2 * qe * (qe - 3) + 2 * qe + 50


class Series:
    __slots__ = ("field", "val", "coeffs", "cutoff")

    def __init__(self, field: FieldDesc, val: int, coeffs: np.ndarray, cutoff: int):
        # normalize: strip leading/trailing zero rows (they are known zeros)
        L = coeffs.shape[0]
        lo = 0
        while lo < L and not coeffs[lo].any():
            lo += 1
        hi = L
        while hi > lo and not coeffs[hi - 1].any():
            hi -= 1
        coeffs = np.ascontiguousarray(coeffs[lo:hi], dtype=np.int64)
        val = val + lo
        if coeffs.shape[0] == 0:
            val = cutoff
        if val + coeffs.shape[0] > cutoff:
            coeffs = coeffs[: max(cutoff - val, 0)]
        self.field = field
        self.val = val
        self.coeffs = coeffs
        self.cutoff = cutoff

    # -- constructors --

    @staticmethod
    def zero(field: FieldDesc, cutoff: int = EXACT) -> "Series":
        return Series(field, cutoff, np.zeros((0, field.k), np.int64), cutoff)

    @staticmethod
    def mono(field: FieldDesc, exp: int, coef: int | FieldElem = 1,
             cutoff: int = EXACT) -> "Series":
        arr = np.zeros((1, field.k), np.int64)
        if isinstance(coef, FieldElem):
            arr[0] = coef.vec()
        else:
            arr[0, 0] = coef % field.p
        return Series(field, exp, arr, cutoff)

    # -- predicates / access --

    def is_zero(self) -> bool:
        """Zero to the tracked precision."""
        return self.coeffs.shape[0] == 0

    def valuation(self) -> int:
        if self.is_zero():
            raise PrecisionTooLow(
                f"series is zero to its cutoff {self.cutoff}; valuation unknown")
        return self.val

    def coef(self, t: int) -> np.ndarray:
        if t >= self.cutoff:
            raise PrecisionTooLow(f"coefficient at {t} beyond cutoff {self.cutoff}")
        i = t - self.val
        if 0 <= i < self.coeffs.shape[0]:
            return self.coeffs[i].copy()
        return np.zeros(self.field.k, np.int64)

    def coef_elem(self, t: int) -> FieldElem:
        return self.field.elem(list(self.coef(t)))

    # -- arithmetic --

    def __add__(self, other: "Series") -> "Series":
        assert self.field == other.field
        cutoff = min(self.cutoff, other.cutoff)
        if self.is_zero():
            return Series(other.field, other.val, other.coeffs.copy(), cutoff)
        if other.is_zero():
            return Series(self.field, self.val, self.coeffs.copy(), cutoff)
        lo = min(self.val, other.val)
        hi = min(max(self.val + len(self.coeffs), other.val + len(other.coeffs)), cutoff)
        out = np.zeros((max(hi - lo, 0), self.field.k), np.int64)
        for s in (self, other):
            a, b = s.val - lo, s.val - lo + len(s.coeffs)
            b = min(b, out.shape[0])
            if b > a:
                out[a:b] += s.coeffs[: b - a]
        out %= self.field.p
        return Series(self.field, lo, out, cutoff)

    def __neg__(self) -> "Series":
        return Series(self.field, self.val, (self.field.p - self.coeffs) % self.field.p,
                      self.cutoff)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def scale(self, c: int | FieldElem) -> "Series":
        if isinstance(c, FieldElem):
            if not c:
                return Series.zero(self.field, self.cutoff)
            if self.is_zero():
                return self
            arr = backend.conv_mod(self.coeffs, c.vec().reshape(1, -1),
                                   self.field.p, self.field.red)
            return Series(self.field, self.val, arr, self.cutoff)
        c = c % self.field.p
        return Series(self.field, self.val, self.coeffs * c % self.field.p, self.cutoff)

    def shift(self, h: int) -> "Series":
        cutoff = self.cutoff if self.cutoff >= EXACT else self.cutoff + h
        return Series(self.field, self.val + h, self.coeffs.copy(), min(cutoff, EXACT))

    def __mul__(self, other: "Series") -> "Series":
        assert self.field == other.field
        cutoff = min(self.val + other.cutoff, other.val + self.cutoff, EXACT)
        if self.is_zero() or other.is_zero():
            return Series.zero(self.field, cutoff)
        arr = backend.conv_mod(self.coeffs, other.coeffs, self.field.p, self.field.red)
        return Series(self.field, self.val + other.val, arr, cutoff)

    def pow(self, n: int) -> "Series":
        if n < 0:
            return self.inverse().pow(-n)
        acc = Series.mono(self.field, 0)
        base = self
        while n > 0:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def inverse(self) -> "Series":
        if self.is_zero():
            raise ZeroDivisionError("inverse of a series that is zero to precision")
        if self.coeffs.shape[0] == 1:  # exact reciprocal of a monomial
            inv = self.field.elem(list(self.coeffs[0])).inverse()
            cutoff = EXACT if self.cutoff >= EXACT else self.cutoff - 2 * self.val
            return Series.mono(self.field, -self.val, inv, cutoff)
        if self.cutoff >= EXACT:
            raise PrecisionTooLow("inverse of an exact polynomial: truncate first")
        n = self.cutoff - self.val  # known unit-part coefficients
        dense = np.zeros((n, self.field.k), np.int64)
        dense[: self.coeffs.shape[0]] = self.coeffs
        inv = backend.series_inv(dense, self.field.p, self.field.red, self.field.order)
        return Series(self.field, -self.val, inv, self.cutoff - 2 * self.val)

    def deriv(self) -> "Series":
        """Formal d/dy; multiples of the characteristic drop out."""
        if self.is_zero():
            return Series.zero(self.field, self.cutoff - 1)
        exps = np.arange(self.val, self.val + self.coeffs.shape[0]) % self.field.p
        arr = self.coeffs * exps[:, None] % self.field.p
        return Series(self.field, self.val - 1, arr, self.cutoff - 1)

    def truncate(self, cutoff: int) -> "Series":
        return Series(self.field, self.val, self.coeffs.copy(), min(cutoff, self.cutoff))

    def lift(self, field: FieldDesc) -> "Series":
        """Embed a prime-field series into an extension with the same p."""
        if field == self.field:
            return self
        assert self.field.k == 1 and field.p == self.field.p
        arr = np.zeros((self.coeffs.shape[0], field.k), np.int64)
        arr[:, 0] = self.coeffs[:, 0]
        return Series(field, self.val, arr, self.cutoff)

    def first_diff(self, other: "Series") -> int | None:
        """Smallest exponent where the two differ, or None up to min cutoff."""
        d = self - other
        return None if d.is_zero() else d.val

    def __repr__(self):
        if self.is_zero():
            return f"O(y^{self.cutoff})"
        head = ", ".join(
            f"y^{self.val + i}:{list(self.coeffs[i]) if self.field.k > 1 else int(self.coeffs[i, 0])}"
            for i in range(min(3, self.coeffs.shape[0])))
        return f"Series({head}, ... + O(y^{self.cutoff}))"


@dataclass(frozen=True)
class SeriesBasics:
    """Local expansions at infinity plus the two exact overlap monomials."""
    p: int
    n: int
    e: int
    q: int
    qe: int
    precision: int
    field: FieldDesc
    x: Series
    z: Series
    y1: Series
    gamma: Series
    alpha: Series
    beta: Series
    iterations: int


def expand_basics(p: int, n: int, e: int, precision: int | None = None) -> SeriesBasics:
    """Solve the chart-V equation at infinity and derive z, y1, gamma, alpha, beta."""
    q = p ** n
    qe = q * e
    floor = precision_floor(p, n, e)
    if precision is None:
        precision = floor
    if precision < floor:
        raise PrecisionTooLow(f"precision {precision} below required {floor}")
    field = make_field(p, 1)

    # x = y^(qe) - y * x^(qe-1), iterated from x = y^(qe); agreement must
    # strictly improve each round (convergence certificate).
    x = Series.mono(field, qe, 1, precision)
    agree = qe
    iterations = 0
    while True:
        nxt = (Series.mono(field, qe, 1, precision) - x.pow(qe - 1).shift(1)).truncate(precision)
        iterations += 1
        d = nxt - x
        if d.is_zero():
            x = nxt
            break
        assert d.val > agree, "fixed-point iteration failed to contract"
        agree = d.val
        x = nxt
        assert iterations < 200

    assert x.valuation() == qe
    z = x.inverse()
    assert z.valuation() == -qe
    y1 = z.shift(1)
    gamma = x.shift(-qe).pow(qe - 2).shift(1)
    assert gamma.valuation() == 1
    alpha = Series.mono(field, e * (qe - 3))
    beta = Series.mono(field, -e)
    return SeriesBasics(p=p, n=n, e=e, q=q, qe=qe, precision=precision, field=field,
                        x=x, z=z, y1=y1, gamma=gamma, alpha=alpha, beta=beta,
                        iterations=iterations)


@dataclass(frozen=True)
class IdentityCheck:
    ok: bool
    first_fail: int | None
    checked_below: int


@dataclass(frozen=True)
class DiffIdentityReport:
    chain_rule: IdentityCheck     # d(y1) = z^(qe-2) dz
    translation: IdentityCheck    # z = alpha^q * gamma + beta^q
    ok: bool


def translation_residual(basics: SeriesBasics, alpha_exponent: int | None = None) -> Series:
    """z - (y^(q*alpha_exponent) * gamma + y^(-qe)); zero when the exponent is right."""
    if alpha_exponent is None:
        alpha_exponent = basics.e * (basics.qe - 3)
    rhs = basics.gamma.shift(basics.q * alpha_exponent) + \
        Series.mono(basics.field, -basics.qe, 1, basics.z.cutoff)
    return basics.z - rhs


def verify_differential_identities(basics: SeriesBasics) -> DiffIdentityReport:
    qe = basics.qe
    lhs = basics.y1.deriv()
    rhs = basics.z.pow(qe - 2) * basics.z.deriv()
    d1 = lhs - rhs
    c1 = IdentityCheck(ok=d1.is_zero(),
                       first_fail=None if d1.is_zero() else d1.val,
                       checked_below=d1.cutoff)
    d2 = translation_residual(basics)
    c2 = IdentityCheck(ok=d2.is_zero(),
                       first_fail=None if d2.is_zero() else d2.val,
                       checked_below=d2.cutoff)
    return DiffIdentityReport(chain_rule=c1, translation=c2, ok=c1.ok and c2.ok)
