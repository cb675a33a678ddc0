"""Symbols w (x) b_1 (x) ... (x) b_n and their formal integer combinations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import InvalidWitness
from .field import FieldElem
from .pdep import monomial, universal_representation
from .witt import WittVector


@dataclass(frozen=True)
class Symbol:
    w: WittVector
    slots: tuple

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(self.slots))
        for s in self.slots:
            if not isinstance(s, FieldElem):
                raise TypeError("symbol slots must be field elements")
            if not s:
                raise ValueError("symbol slots must be nonzero")
            if s.sig != self.w.sig:
                raise ValueError("slot and Witt vector live over different fields")

    @property
    def m(self):
        return self.w.m

    @property
    def n(self):
        return len(self.slots)

    @property
    def sig(self):
        return self.w.sig

    def with_slots(self, slots):
        return Symbol(self.w, tuple(slots))

    def with_witt(self, w):
        return Symbol(w, self.slots)

    def __str__(self):
        return f"{self.w} ({'; '.join(str(s) for s in self.slots)})"


class Term(NamedTuple):
    coef: int
    sym: Symbol

    def __str__(self):
        return f"{self.coef}*{self.sym}" if self.coef != 1 else str(self.sym)


class SymbolSum:
    """An ordered list of (integer, Symbol) terms; never canonicalized."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        ts = []
        for t in terms:
            if isinstance(t, Symbol):
                t = Term(1, t)
            else:
                t = Term(*t)
            ts.append(t)
        self.terms = tuple(ts)

    @classmethod
    def of(cls, *symbols):
        return cls(Term(1, s) for s in symbols)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __eq__(self, other):
        if not isinstance(other, SymbolSum):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other):
        return SymbolSum(self.terms + other.terms)

    def __neg__(self):
        return SymbolSum(Term(-t.coef, t.sym) for t in self.terms)

    def __sub__(self, other):
        return self + (-other)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (c, s) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = str(s) if a == 1 else f"{a} {s}"
            if i == 0:
                out.append(body if c > 0 else f"- {body}")
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)

    def __repr__(self):
        return f"SymbolSum({self})"


@dataclass
class ASWitness:
    """(lambda, z) with alpha = lambda^p - lambda + sum_d z_d^p beta^d."""

    lam: FieldElem
    z: dict = field(default_factory=dict)

    def nonzero(self):
        return {d: v for d, v in self.z.items() if v}


def as_value(betas, wit):
    lam = wit.lam
    total = lam.frobenius() - lam
    for d, v in wit.z.items():
        if v:
            total = total + v.frobenius() * monomial(betas, d)
    return total


def check_as_witness(alpha, betas, wit):
    """True iff alpha = lambda^p - lambda + sum z_d^p beta^d holds exactly."""
    p = alpha.sig.p
    n = len(betas)
    for d in wit.z:
        if len(d) != n or not any(d) or any(not 0 <= x < p for x in d):
            return False
    if n == 0 and any(wit.z.values()):
        return False
    return as_value(betas, wit) == alpha


def witness_from_dependence(alpha, betas, dep):
    """Artin-Schreier witness for a p-dependent slot list: lambda = -alpha."""
    z = universal_representation(betas, dep, alpha)
    wit = ASWitness(-alpha, z)
    if not check_as_witness(alpha, betas, wit):
        raise InvalidWitness("constructed witness failed its check")
    return wit


# -- the exact sequence W_{m-l} -> W_m -> W_l on symbols ----------------------

def project(s, ell):
    return Symbol(s.w.truncate(ell), s.slots)


def residue(s):
    """The H_p image: first Witt slot and the field slots."""
    return s.w[0], s.slots


def lift(s, ell=1):
    return Symbol(s.w.shift(ell), s.slots)


def unlift(s, ell=1):
    if any(s.w.slots[:ell]):
        raise ValueError("unlift needs the leading Witt slot(s) to be zero")
    return Symbol(s.w.unshift(ell), s.slots)
