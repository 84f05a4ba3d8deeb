"""Exact arithmetic in F_p and extensions F_{p^k}.

Extension fields use a deterministic modulus: the lexicographically smallest
monic irreducible of degree k over F_p (coefficient lists compared ascending,
constant term first).  Elements are little-endian coefficient tuples; the
same layout, as int64 vectors, feeds the array kernels in ``backend``.

Root finding follows gcd with T^|F| - T and seeded equal-degree splitting,
so runs are reproducible given the recorded seed.
"""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from .errors import DegreeTooLarge, NotPPower, NotPrime, ZeroPolynomial

MAX_FIELD_SIZE = 1 << 32


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- dense int-list polynomial helpers over F_p (modulus search only) --

def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)


def _pmod(f, g, p):
    f = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], p - 2, p)
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv % p
        sh = len(f) - 1 - dg
        for i, b in enumerate(g):
            f[sh + i] = (f[sh + i] - c * b) % p
        _ptrim(f)
    return f


def _pgcd(f, g, p):
    f, g = list(f), list(g)
    while g:
        f, g = g, _pmod(f, g, p)
    return f


def _ppowmod(base, n, mod, p):
    acc = [1]
    base = _pmod(base, mod, p)
    while n > 0:
        if n & 1:
            acc = _pmod(_pmul(acc, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        n >>= 1
    return acc


def _is_irreducible(f, p):
    """Monic f of degree k >= 1 over F_p."""
    k = len(f) - 1
    if k == 1:
        return True
    x = [0, 1]
    # T^(p^k) == T mod f
    t = x
    for _ in range(k):
        t = _ppowmod(t, p, f, p)
    diff = list(t) + [0] * (2 - len(t))
    diff[1] = (diff[1] - 1) % p
    if _ptrim(diff):
        return False
    # gcd(T^(p^(k/l)) - T, f) == 1 for prime l | k
    for ell in set(_prime_factors(k)):
        t = x
        for _ in range(k // ell):
            t = _ppowmod(t, p, f, p)
        diff = list(t) + [0] * (2 - len(t))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _ptrim(diff), p)
        if len(g) - 1 > 0:
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _smallest_modulus(p, k):
    """Lex-smallest monic irreducible of degree k, scanning [c0, c1, ...]."""
    for idx in range(p ** k):
        coeffs = []
        rem = idx
        for pos in range(k):
            power = p ** (k - 1 - pos)
            coeffs.append(rem // power)
            rem %= power
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldDesc:
    """Immutable description of F_{p^k} with cached kernel tables."""

    __slots__ = ("p", "k", "modulus", "order", "red", "_one", "_zero")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p ** k
        # red[t] = coefficients of T^(k+t) mod modulus, t = 0..k-2
        red = np.zeros((max(k - 1, 0), k), np.int64)
        cur = [(-c) % p for c in modulus[:k]]  # T^k
        for t in range(k - 1):
            red[t] = cur
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for s in range(k):
                    cur[s] = (cur[s] + top * red[0][s]) % p
        self.red = red
        self._zero = FieldElem(self, (0,) * k)
        self._one = FieldElem(self, (1 % p,) + (0,) * (k - 1))

    def zero(self) -> "FieldElem":
        return self._zero

    def one(self) -> "FieldElem":
        return self._one

    def elem(self, coeffs) -> "FieldElem":
        if isinstance(coeffs, int):
            co = [coeffs % self.p] + [0] * (self.k - 1)
        else:
            co = [int(c) % self.p for c in coeffs]
            co += [0] * (self.k - len(co))
        return FieldElem(self, tuple(co[: self.k]))

    def from_index(self, idx: int) -> "FieldElem":
        """Element number idx in the lex enumeration (c0 most significant)."""
        co = []
        for pos in range(self.k):
            power = self.p ** (self.k - 1 - pos)
            co.append(idx // power)
            idx %= power
        return FieldElem(self, tuple(co))

    def elements(self):
        for idx in range(self.order):
            yield self.from_index(idx)

    def __eq__(self, other):
        return (isinstance(other, FieldDesc)
                and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus))

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


class FieldElem:
    __slots__ = ("field", "co")

    def __init__(self, field: FieldDesc, co: tuple[int, ...]):
        self.field = field
        self.co = co

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("elements from different fields")

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return FieldElem(self.field, tuple((a + b) % p for a, b in zip(self.co, other.co)))

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return FieldElem(self.field, tuple((a - b) % p for a, b in zip(self.co, other.co)))

    def __neg__(self):
        p = self.field.p
        return FieldElem(self.field, tuple((-a) % p for a in self.co))

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            return FieldElem(self.field, tuple(a * other % p for a in self.co))
        self._check(other)
        f = self.field
        k, p = f.k, f.p
        wide = [0] * (2 * k - 1)
        for s in range(k):
            a = self.co[s]
            if a:
                for t in range(k):
                    b = other.co[t]
                    if b:
                        wide[s + t] += a * b
        out = [wide[s] % p for s in range(k)]
        for t in range(k - 1):
            c = wide[k + t] % p
            if c:
                for s in range(k):
                    out[s] = (out[s] + c * int(f.red[t, s])) % p
        return FieldElem(f, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        f = self.field
        if n < 0:
            return self.inverse() ** (-n)
        acc = f.one()
        base = self
        while n > 0:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        return self * other.inverse()

    def __bool__(self):
        return any(self.co)

    def __eq__(self, other):
        return (isinstance(other, FieldElem)
                and self.field == other.field and self.co == other.co)

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.co))

    def vec(self) -> np.ndarray:
        return np.array(self.co, np.int64)

    def in_subfield(self, d: int) -> bool:
        """True if the element lies in the subfield F_{p^d} (d | k)."""
        return self ** (self.field.p ** d) == self

    def __repr__(self):
        if self.field.k == 1:
            return str(self.co[0])
        return str(list(self.co))


@lru_cache(maxsize=None)
def make_field(p: int, k: int) -> FieldDesc:
    """F_{p^k} with the deterministic (lex-smallest) modulus."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise DegreeTooLarge("extension degree must be >= 1")
    if p ** k > MAX_FIELD_SIZE:
        raise DegreeTooLarge(f"p^k = {p**k} exceeds the {MAX_FIELD_SIZE} bound")
    return FieldDesc(p, k, _smallest_modulus(p, k))


def qth_root(a: FieldElem, q: int) -> FieldElem:
    """The unique b with b^q = a, for q a power of the characteristic."""
    p = a.field.p
    n = 0
    qq = q
    while qq > 1 and qq % p == 0:
        qq //= p
        n += 1
    if qq != 1 or n < 1:
        raise NotPPower(f"{q} is not a positive power of {p}")
    b = a
    inv_exp = p ** (a.field.k - 1)
    for _ in range(n):
        b = b ** inv_exp
    return b


# -- polynomials over an extension field (dense FieldElem lists) --

def fpoly_trim(f):
    while f and not f[-1]:
        f.pop()
    return f


def fpoly_eval(f, x: FieldElem) -> FieldElem:
    acc = x.field.zero()
    for c in reversed(f):
        acc = acc * x + c
    return acc


def fpoly_mul(f, g, field):
    if not f or not g:
        return []
    out = [field.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
    return fpoly_trim(out)


def fpoly_divmod(f, g, field):
    f = list(f)
    dg = len(g) - 1
    inv = g[-1].inverse()
    quo = [field.zero()] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv
        sh = len(f) - 1 - dg
        quo[sh] = c
        for i, b in enumerate(g):
            f[sh + i] = f[sh + i] - c * b
        fpoly_trim(f)
    return fpoly_trim(quo), f


def fpoly_monic(f):
    if not f:
        return f
    inv = f[-1].inverse()
    return [c * inv for c in f]


def fpoly_gcd(f, g, field):
    f, g = list(f), list(g)
    while g:
        f, g = g, fpoly_divmod(f, g, field)[1]
    return fpoly_monic(f)


def fpoly_powmod(base, n, mod, field):
    acc = [field.one()]
    base = fpoly_divmod(base, mod, field)[1]
    while n > 0:
        if n & 1:
            acc = fpoly_divmod(fpoly_mul(acc, base, field), mod, field)[1]
        base = fpoly_divmod(fpoly_mul(base, base, field), mod, field)[1]
        n >>= 1
    return acc


def roots_in_field(f: list[FieldElem], seed: int = 0) -> list[FieldElem]:
    """All roots of f in its coefficient field, each once, sorted.

    gcd with T^|F| - T isolates the distinct rational roots; seeded
    equal-degree splitting then separates them.  Agrees with exhaustive
    evaluation (the test oracle) on every field of size <= 2^16.
    """
    f = fpoly_trim(list(f))
    if not f:
        raise ZeroPolynomial("root finding needs a nonzero polynomial")
    field = f[0].field
    if len(f) == 1:
        return []
    # T^order mod f, minus T
    t = fpoly_powmod([field.zero(), field.one()], field.order, f, field)
    t = t + [field.zero()] * (2 - len(t))
    t[1] = t[1] - field.one()
    g = fpoly_gcd(f, fpoly_trim(t), field)
    rng = random.Random(seed)
    roots = _split_linear(g, field, rng)
    return sorted(roots, key=lambda e: e.co)


def _split_linear(g, field, rng):
    d = len(g) - 1
    if d <= 0:
        return []
    if d == 1:
        return [-g[0] * g[1].inverse()]
    s = field.order
    p = field.p
    while True:
        a = field.from_index(rng.randrange(s))
        if p == 2:
            # trace of a*T splits the roots into Tr=0 / Tr=1 classes
            h = [field.zero()]
            term = fpoly_divmod([field.zero(), a], g, field)[1]
            for _ in range(field.k):
                h = fpoly_trim([(x + y) for x, y in _zip_pad(h, term, field)])
                term = fpoly_divmod(fpoly_mul(term, term, field), g, field)[1]
        else:
            if not a:
                continue
            h = fpoly_powmod([a, field.one()], (s - 1) // 2, g, field)
            h = h + [field.zero()] * (1 - len(h))
            h[0] = h[0] - field.one()
            h = fpoly_trim(h)
        d1 = fpoly_gcd(g, h, field)
        if 0 < len(d1) - 1 < d:
            d2 = fpoly_divmod(g, d1, field)[0]
            return _split_linear(d1, field, rng) + _split_linear(fpoly_monic(d2), field, rng)


def _zip_pad(f, g, field):
    n = max(len(f), len(g))
    f = f + [field.zero()] * (n - len(f))
    g = g + [field.zero()] * (n - len(g))
    return zip(f, g)
