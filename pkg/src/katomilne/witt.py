"""Additive group of truncated Witt vectors W_m(F).

Sum and negation are evaluated through universal polynomials generated over
the integers from ghost components and stored reduced mod p.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import reduce

from . import poly as P
from .field import FieldElem, SignatureMismatch


# -- integer polynomial helpers (table generation only) ----------------------

def _zadd(a, b, s=1):
    r = dict(a)
    for e, c in b.items():
        v = r.get(e, 0) + s * c
        if v:
            r[e] = v
        else:
            r.pop(e, None)
    return r


def _zmul(a, b):
    r = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            r[e] = r.get(e, 0) + ca * cb
    return {e: c for e, c in r.items() if c}


def _zpow(a, n):
    nv = len(next(iter(a)))
    r = {(0,) * nv: 1}
    while n:
        if n & 1:
            r = _zmul(r, a)
        n >>= 1
        if n:
            a = _zmul(a, a)
    return r


def _zscale(a, c):
    return {e: c * v for e, v in a.items()} if c else {}


def _zdiv_exact(a, d):
    out = {}
    for e, c in a.items():
        q, r = divmod(c, d)
        if r:
            raise ArithmeticError(f"Witt table generation: coefficient {c} not divisible by {d}")
        out[e] = q
    return out


def _var(i, nv):
    e = [0] * nv
    e[i] = 1
    return {tuple(e): 1}


def _ghost(i, p, xs):
    """W_i = sum_{j<=i} p^j X_j^(p^(i-j)) as an integer polynomial."""
    g = {}
    for j in range(i + 1):
        g = _zadd(g, _zscale(_zpow(xs[j], p ** (i - j)), p ** j))
    return g


@dataclass(frozen=True)
class WittPolynomialTable:
    p: int
    m: int
    sums: tuple  # S_i in variables X_0..X_{m-1}, Y_0..Y_{m-1}, reduced mod p
    negs: tuple  # N_i in variables X_0..X_{m-1}, reduced mod p


def _mod_p(a, p):
    return {e: c % p for e, c in a.items() if c % p}


def generate_table(p, m):
    """Build S_i and N_i from the ghost recursion, checking every division is exact."""
    if m < 1:
        raise ValueError("m must be at least 1")
    nv = 2 * m
    xs = [_var(i, nv) for i in range(m)]
    ys = [_var(m + i, nv) for i in range(m)]
    sums = []
    for i in range(m):
        rhs = _zadd(_ghost(i, p, xs), _ghost(i, p, ys))
        for j in range(i):
            rhs = _zadd(rhs, _zscale(_zpow(sums[j], p ** (i - j)), p ** j), -1)
        sums.append(_zdiv_exact(rhs, p ** i))
    xs1 = [_var(i, m) for i in range(m)]
    negs = []
    for i in range(m):
        rhs = _zscale(_ghost(i, p, xs1), -1)
        for j in range(i):
            rhs = _zadd(rhs, _zscale(_zpow(negs[j], p ** (i - j)), p ** j), -1)
        negs.append(_zdiv_exact(rhs, p ** i))
    return WittPolynomialTable(
        p, m, tuple(_mod_p(s, p) for s in sums), tuple(_mod_p(n, p) for n in negs)
    )


_tables = {}
_tables_lock = threading.Lock()


def table(p, m):
    t = _tables.get((p, m))
    if t is None:
        with _tables_lock:
            t = _tables.get((p, m))
            if t is None:
                t = _tables[(p, m)] = generate_table(p, m)
    return t


# -- evaluation over F ---------------------------------------------------------

def _lcm(a, b, p):
    if P.is_const(a):
        return b
    if P.is_const(b):
        return a
    g = P.gcd(a, b, p)
    return P.mul(P.divide_exact(a, g, p), b, p)


def _evaluate(polys, values, sig):
    """Evaluate isobaric polynomials (weight p^j for variable j mod m) at field elements.

    Values are cleared to a common denominator D: x_j = a_j / D^(p^j), so
    S_i(x) = S_i(a) / D^(p^i) by isobaric weight.
    """
    p = sig.p
    m = len(polys)
    k = sig.k
    den = reduce(lambda a, b: _lcm(a, b, p), (v.den for v in values), sig._one)
    one = sig._one
    nums = []
    for idx, v in enumerate(values):
        j = idx % m
        if not v.num:
            nums.append({})
        elif P.is_const(den):
            nums.append(v.num)
        else:
            scale = P.divide_exact(P.power(den, p ** j, p), v.den, p)
            nums.append(P.mul(v.num, scale, p))
    cache = {}

    def pw(i, n):
        key = (i, n)
        r = cache.get(key)
        if r is None:
            if n == 1:
                r = nums[i]
            else:
                h = pw(i, n // 2)
                r = P.mul(h, h, p)
                if n % 2:
                    r = P.mul(r, nums[i], p)
            cache[key] = r
        return r

    out = []
    for i, poly in enumerate(polys):
        acc = {}
        for e, c in poly.items():
            term = None
            for var, n in enumerate(e):
                if n:
                    if not nums[var]:
                        term = {}
                        break
                    t = pw(var, n)
                    term = t if term is None else P.mul(term, t, p)
            if term is None:
                term = one
            if term:
                acc = P.add(acc, P.scale(term, c, p), p)
        if P.is_const(den):
            out.append(FieldElem._raw(sig, acc, one))
        else:
            out.append(FieldElem.fraction(sig, acc, P.power(den, p ** i, p)))
    return tuple(out)


class WittVector:
    """A length-m Witt vector (w_1, ..., w_m) over F; immutable."""

    __slots__ = ("slots", "sig", "_hash")

    def __init__(self, slots, sig=None):
        slots = tuple(slots)
        if not slots:
            raise ValueError("Witt vectors have length at least 1")
        if sig is None:
            sig = slots[0].sig
        slots = tuple(sig(s) for s in slots)
        self.slots = slots
        self.sig = sig
        self._hash = None

    @classmethod
    def zero(cls, sig, m):
        return cls([sig.zero()] * m, sig)

    @classmethod
    def embed(cls, x, m, pos=0):
        """(0, ..., x, ..., 0) with ``x`` at slot ``pos`` (0-based)."""
        z = x.sig.zero()
        return cls([x if i == pos else z for i in range(m)], x.sig)

    @property
    def m(self):
        return len(self.slots)

    @property
    def p(self):
        return self.sig.p

    def __len__(self):
        return len(self.slots)

    def __getitem__(self, i):
        return self.slots[i]

    def __iter__(self):
        return iter(self.slots)

    def is_zero(self):
        return not any(self.slots)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        return self.slots == other.slots

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.slots)
        return self._hash

    def __str__(self):
        return "[" + ", ".join(str(s) for s in self.slots) + "]"

    def __repr__(self):
        return f"WittVector({self})"

    def _check(self, other):
        if not isinstance(other, WittVector):
            raise TypeError("expected a WittVector")
        if other.m != self.m:
            raise ValueError(f"length mismatch: {self.m} vs {other.m}")
        if other.sig != self.sig:
            raise SignatureMismatch("Witt vectors over different fields")

    def __add__(self, other):
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.m == 1:
            return WittVector((self.slots[0] + other.slots[0],), self.sig)
        t = table(self.p, self.m)
        return WittVector(_evaluate(t.sums, self.slots + other.slots, self.sig), self.sig)

    def __neg__(self):
        if self.p != 2 or self.m == 1:
            # for odd p, N_i = -X_i
            return WittVector([-s for s in self.slots], self.sig)
        t = table(self.p, self.m)
        return WittVector(_evaluate(t.negs, self.slots, self.sig), self.sig)

    def __sub__(self, other):
        self._check(other)
        return self + (-other)

    def scalar(self, c):
        """c * w, using p * w = V(F(w)) in characteristic p and the base-p digits of c."""
        c %= self.p ** self.m
        result = WittVector.zero(self.sig, self.m)
        base = self
        while c:
            c, digit = divmod(c, self.p)
            for _ in range(digit):
                result = result + base
            if c:
                base = base.times_p()
        return result

    def times_p(self):
        """p * w = (0, w_0^p, ..., w_{m-2}^p)."""
        z = self.sig.zero()
        return WittVector((z,) + tuple(s.frobenius() for s in self.slots[:-1]), self.sig)

    def __rmul__(self, c):
        if not isinstance(c, int):
            return NotImplemented
        return self.scalar(c)

    def frobenius(self):
        return WittVector([s.frobenius() for s in self.slots], self.sig)

    def shift(self, ell):
        """Prepend ``ell`` zero slots: the injection W_m -> W_{m+ell}."""
        if ell < 0:
            raise ValueError("shift length must be nonnegative")
        z = self.sig.zero()
        return WittVector((z,) * ell + self.slots, self.sig)

    def truncate(self, ell):
        """Keep the first ``ell`` slots: the surjection W_m -> W_ell."""
        if ell < 0 or ell > self.m:
            raise ValueError(f"cannot truncate length {self.m} to {ell}")
        return WittVector(self.slots[:ell], self.sig)

    def unshift(self, ell):
        """Preimage under shift: requires the first ``ell`` slots to vanish."""
        if any(self.slots[:ell]):
            raise ValueError("leading slots are not zero")
        return WittVector(self.slots[ell:], self.sig)


def add(w, v):
    return w + v


def neg(w):
    return -w


def sub(w, v):
    return w - v


def scalar(c, w):
    return w.scalar(c)


def frobenius(w):
    return w.frobenius()


def shift(w, ell):
    return w.shift(ell)


def truncate(w, ell):
    return w.truncate(ell)
