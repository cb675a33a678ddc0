"""Exact arithmetic in rational function fields GF(p)(t_1, ..., t_k)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from . import poly as P


class SignatureMismatch(ValueError):
    pass


class ParseError(ValueError):
    """Syntax error with a 1-based line/column location."""

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


@dataclass(frozen=True)
class Signature:
    """The ambient field: characteristic ``p`` and ordered variable names."""

    p: int
    names: tuple = ()

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        for n in self.names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise ValueError(f"bad variable name {n!r}")

    @property
    def k(self):
        return len(self.names)

    @cached_property
    def _one(self):
        return {(0,) * self.k: 1}

    def const(self, c):
        return FieldElem._raw(self, P.const(c, self.p, self.k), self._one)

    def zero(self):
        return self.const(0)

    def one(self):
        return self.const(1)

    def var(self, name):
        i = self.names.index(name) if isinstance(name, str) else name
        e = [0] * self.k
        e[i] = 1
        return FieldElem._raw(self, {tuple(e): 1}, self._one)

    def gens(self):
        return [self.var(i) for i in range(self.k)]

    def poly(self, terms):
        """Element from a ``{exponent tuple: int}`` mapping."""
        d = {}
        for e, c in terms.items():
            c %= self.p
            if c:
                d[tuple(e)] = c
        return FieldElem._raw(self, d, self._one)

    def __call__(self, x):
        if isinstance(x, FieldElem):
            if x.sig != self:
                raise SignatureMismatch("element from another field")
            return x
        if isinstance(x, int):
            return self.const(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot convert {type(x).__name__} to a field element")

    def parse(self, text, line=1, col=1):
        return _Parser(self, text, line, col).parse()

    def header(self):
        return f"field p={self.p} vars={','.join(self.names)}"


class FieldElem:
    """A reduced fraction num/den with grlex-monic denominator.

    Instances are immutable; equality is structural on the canonical form.
    """

    __slots__ = ("sig", "num", "den", "_hash")

    @classmethod
    def _raw(cls, sig, num, den):
        self = object.__new__(cls)
        self.sig = sig
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def fraction(cls, sig, num, den):
        p = sig.p
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return cls._raw(sig, {}, sig._one)
        if not P.is_const(den):
            g = P.gcd(num, den, p)
            if not P.is_const(g):
                num = P.divide_exact(num, g, p)
                den = P.divide_exact(den, g, p)
        _, lc = P.leading(den)
        if lc != 1:
            inv = pow(lc, -1, p)
            num = P.scale(num, inv, p)
            den = P.scale(den, inv, p)
        return cls._raw(sig, num, den)

    # -- predicates -------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_poly(self):
        return P.is_const(self.den)

    def is_one(self):
        return self.is_poly() and self.num == self.sig._one

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.sig.const(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.sig == other.sig and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig.p, frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.sig != self.sig:
                raise SignatureMismatch(f"{self.sig.header()} vs {other.sig.header()}")
            return other
        if isinstance(other, int):
            return self.sig.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._addsub(other, P.add)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._addsub(other, P.sub)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other._addsub(self, P.sub)

    def _addsub(self, other, op):
        p = self.sig.p
        if not other.num:
            return self
        if not self.num:
            return other if op is P.add else -other
        if self.den == other.den:
            num = op(self.num, other.num, p)
            if P.is_const(self.den):
                return FieldElem._raw(self.sig, num, self.den)
            return FieldElem.fraction(self.sig, num, self.den)
        num = op(P.mul(self.num, other.den, p), P.mul(other.num, self.den, p), p)
        return FieldElem.fraction(self.sig, num, P.mul(self.den, other.den, p))

    def __neg__(self):
        return FieldElem._raw(self.sig, P.neg(self.num, self.sig.p), self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.sig.p
        if not self.num or not other.num:
            return self.sig.zero()
        a_poly, b_poly = P.is_const(self.den), P.is_const(other.den)
        if a_poly and b_poly:
            return FieldElem._raw(self.sig, P.mul(self.num, other.num, p), self.sig._one)
        # cross-cancel so the product is already reduced
        n1, d2 = _cancel(self.num, other.den, p)
        n2, d1 = _cancel(other.num, self.den, p)
        num, den = P.mul(n1, n2, p), P.mul(d1, d2, p)
        _, lc = P.leading(den)
        if lc != 1:
            inv = pow(lc, -1, p)
            num, den = P.scale(num, inv, p), P.scale(den, inv, p)
        return FieldElem._raw(self.sig, num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        p = self.sig.p
        num, den = self.den, self.num
        _, lc = P.leading(den)
        if lc != 1:
            inv = pow(lc, -1, p)
            num, den = P.scale(num, inv, p), P.scale(den, inv, p)
        return FieldElem._raw(self.sig, num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e == 0:
            return self.sig.one()
        if e < 0:
            return self.inverse() ** (-e)
        if not self.num:
            return self
        p = self.sig.p
        return FieldElem._raw(self.sig, P.power(self.num, e, p), P.power(self.den, e, p))

    # -- p-th power structure ---------------------------------------------

    def frobenius(self):
        p = self.sig.p
        return FieldElem._raw(self.sig, P.frobenius(self.num, p), P.frobenius(self.den, p))

    def pth_root(self):
        """The unique p-th root if this element lies in F^p, else ``None``."""
        p = self.sig.p
        n = P.pth_root(self.num, p)
        d = P.pth_root(self.den, p)
        if n is None or d is None:
            return None
        return FieldElem._raw(self.sig, n, d)

    def fp_coordinates(self):
        """Coordinates over F^p in the monomial basis t^r, 0 <= r_i < p.

        Returns ``{r: c_r}`` with every ``c_r`` in F^p and
        ``self == sum(c_r * t^r)``.  Zero coordinates are omitted.
        """
        sig, p = self.sig, self.sig.p
        # self = num * den^(p-1) / den^p and den^p is a p-th power
        num = self.num
        if not P.is_const(self.den):
            num = P.mul(num, P.power(self.den, p - 1, p), p)
        den_p = P.frobenius(self.den, p)
        parts = {}
        for e, c in num.items():
            r = tuple(x % p for x in e)
            q = tuple(x - y for x, y in zip(e, r))
            parts.setdefault(r, {})[q] = c
        return {r: FieldElem.fraction(sig, n, den_p) for r, n in parts.items()}

    # -- rendering ----------------------------------------------------------

    def __str__(self):
        n = poly_str(self.num, self.sig.names)
        if P.is_const(self.den):
            return n
        d = poly_str(self.den, self.sig.names)
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1 or _is_product(self.den):
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"FieldElem({self})"


def _is_product(d):
    (e, _), = d.items()
    return sum(1 for x in e if x) > 1


def _cancel(num, den, p):
    if P.is_const(den) or P.is_const(num):
        return num, den
    g = P.gcd(num, den, p)
    if P.is_const(g):
        return num, den
    return P.divide_exact(num, g, p), P.divide_exact(den, g, p)


def _mono_str(e, names):
    parts = []
    for x, n in zip(e, names):
        if x == 1:
            parts.append(n)
        elif x:
            parts.append(f"{n}^{x}")
    return "*".join(parts)


def poly_str(a, names):
    if not a:
        return "0"
    out = []
    for e in sorted(a, key=P.grlex_key, reverse=True):
        c = a[e]
        m = _mono_str(e, names)
        if not m:
            out.append(str(c))
        elif c == 1:
            out.append(m)
        else:
            out.append(f"{c}*{m}")
    return " + ".join(out)


_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S)")


class _Parser:
    def __init__(self, sig, text, line, col):
        self.sig = sig
        self.text = text
        self.line = line
        self.col0 = col
        self.toks = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            start = pos
            if m.group(1):
                self.toks.append(("int", int(m.group(1)), start))
            elif m.group(2):
                self.toks.append(("id", m.group(2), start))
            else:
                ch = m.group(3)
                if ch not in "+-*/^()":
                    self.error(f"unexpected character {ch!r}", start)
                self.toks.append((ch, ch, start))
            pos = m.end()
        self.i = 0

    def error(self, msg, pos=None):
        if pos is None:
            pos = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise ParseError(msg, self.line, self.col0 + pos)

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self):
        if not self.toks:
            self.error("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            self.error(f"unexpected {self.toks[self.i][1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op, _, pos = self.take()
            w = self.unary()
            if op == "*":
                v = v * w
            else:
                if not w:
                    self.error("division by zero", pos)
                v = v / w
        return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            _, _, pos = self.take()
            sign = 1
            paren = False
            if self.peek() == "(":
                self.take()
                paren = True
            if self.peek() == "-":
                self.take()
                sign = -1
            if self.peek() != "int":
                self.error("expected integer exponent")
            e = sign * self.take()[1]
            if paren:
                if self.peek() != ")":
                    self.error("expected ')'")
                self.take()
            if e < 0 and not base:
                self.error("zero raised to a negative power", pos)
            return base ** e
        return base

    def atom(self):
        kind = self.peek()
        if kind == "int":
            return self.sig.const(self.take()[1])
        if kind == "id":
            _, name, pos = self.take()
            if name not in self.sig.names:
                self.error(f"unknown variable {name!r}", pos)
            return self.sig.var(name)
        if kind == "(":
            self.take()
            v = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.take()
            return v
        if kind is None:
            self.error("unexpected end of expression")
        self.error(f"unexpected {self.toks[self.i][1]!r}")
