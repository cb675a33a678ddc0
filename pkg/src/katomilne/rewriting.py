"""Building certificates: a mutable derivation plus derived rewrite rules.

Every rule here only records elementary moves; nothing is trusted until
:func:`katomilne.certificate.verify` re-checks the chain.
"""

from __future__ import annotations

from math import gcd

from .certificate import Certificate, Step, check_step
from .symbol import Symbol, SymbolSum, Term
from .witt import WittVector


class Derivation:
    """A running sum plus the steps that produced it.

    With ``check=True`` each step is verified as it is recorded, which pins
    down builder bugs at the offending move.
    """

    def __init__(self, start, check=False):
        if isinstance(start, Symbol):
            start = SymbolSum.of(start)
        self.start = start
        self.terms = list(start.terms)
        self.steps = []
        self.check = check

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def current(self):
        return SymbolSum(self.terms)

    def certificate(self):
        return Certificate(self.start, list(self.steps), SymbolSum(self.terms))

    def apply(self, move, indices, new_terms, at=None):
        indices = tuple(indices)
        drop = set(indices)
        rest = [t for i, t in enumerate(self.terms) if i not in drop]
        if at is None:
            at = min(indices) if indices else len(rest)
        prev = SymbolSum(self.terms)
        self.terms = rest[:at] + [Term(*t) for t in new_terms] + rest[at:]
        step = Step(move, indices, at, SymbolSum(self.terms))
        if self.check:
            reason = check_step(prev, step)
            if reason:
                raise AssertionError(f"builder produced a bad {move} step: {reason}")
        self.steps.append(step)

    # -- thin wrappers over single moves --------------------------------------

    def insert(self, move, at, term):
        self.apply(move, (), [term], at)

    def kill(self, move, i):
        self.apply(move, (i,), [])

    def fold_coefficient(self, i):
        """M6: c * (w x R) -> 1 * (cw x R)."""
        c, s = self.terms[i]
        if c != 1:
            self.apply("M6", (i,), [Term(1, s.with_witt(s.w.scalar(c)))])

    def split_slot(self, i, j, factors):
        c, s = self.terms[i]
        if len(factors) < 2:
            return 1
        new = []
        for f in factors:
            sl = list(s.slots)
            sl[j] = f
            new.append(Term(c, s.with_slots(sl)))
        self.apply("M2", (i,), new)
        return len(factors)

    def merge_witt(self, indices, at=None, coef=1):
        """M1: merge terms sharing a slot list into one term ``coef * W``."""
        ts = [self.terms[i] for i in indices]
        s0 = ts[0].sym
        total = WittVector.zero(s0.sig, s0.m)
        for c, s in ts:
            total = total + s.w.scalar(c)
        self.apply("M1", indices, [Term(coef, s0.with_witt(total))], at)
        return total

    # -- derived rules ----------------------------------------------------------

    def insert_zero_pair(self, at, coef, w, slots):
        """Insert coef*(w x R), -coef*(w x R) at ``at``, ``at + 1``."""
        zero = WittVector.zero(w.sig, w.m)
        self.insert("M7", at, Term(1, Symbol(zero, slots)))
        self.apply("M1", (at,), [Term(coef, Symbol(w, slots)), Term(-coef, Symbol(w, slots))])

    def insert_unit(self, at, coef, w, slots):
        """Insert coef*(w x R) where some entry of R is 1 (such a symbol is 0)."""
        j = next(i for i, s in enumerate(slots) if s.is_one())
        zero = WittVector.zero(w.sig, w.m)
        sym = Symbol(w, slots)
        self.insert("M7", at, Term(1, Symbol(zero, slots)))
        self.apply("M1", (at,), [Term(-coef, sym), Term(-coef, sym), Term(2 * coef, sym)])
        # (-c) w (x) 1 + (-c) w (x) 1 = (-c) w (x) (1*1)
        self.apply("M2", (at, at + 1), [Term(-coef, sym)])
        self.apply("M1", (at, at + 1), [Term(coef, sym)])
        return j

    def negate_via_inverse(self, i, j):
        """c * (w x ..a..) -> (-c) * (w x ..a^-1..), slot ``j`` holding a."""
        c, s = self.terms[i]
        a = s.slots[j]
        unit = list(s.slots)
        unit[j] = s.sig.one()
        self.insert_unit(i + 1, -c, s.w, tuple(unit))
        self.split_slot(i + 1, j, [a, a.inverse()])
        self._cancel_pair(i, i + 1)

    def _cancel_pair(self, i, k):
        """M1 + M7: two terms whose Witt contributions cancel."""
        s = self.terms[i].sym
        self.apply("M1", (i, k), [Term(1, s.with_witt(WittVector.zero(s.sig, s.m)))], at=i)
        self.kill("M7", i)

    def swap_negate(self, i, a, b):
        """c * (w x ..x..y..) -> (-c) * (w x ..y..x..), slots a < b."""
        c, s = self.terms[i]
        x, y = s.slots[a], s.slots[b]
        xy = x * y
        both = list(s.slots)
        both[a] = both[b] = xy
        self.insert("M3", i + 1, Term(-c, s.with_slots(both)))
        self.split_slot(i + 1, a, [x, y])      # i+1: (x, xy), i+2: (y, xy)
        self.split_slot(i + 2, b, [x, y])      # i+2: (y, x), i+3: (y, y)
        self.split_slot(i + 1, b, [x, y])      # i+1: (x, x), i+2: (x, y), i+3: (y, x), i+4: (y, y)
        self.kill("M3", i + 4)
        self.kill("M3", i + 1)
        self._cancel_pair(i, i + 1)

    def combine_differing(self, i, j=None):
        """c*(w x P) - c*(w x Q), P and Q equal off slot j -> c*(w x ..P_j/Q_j..)."""
        s1, s2 = self.terms[i].sym, self.terms[i + 1].sym
        if j is None:
            diff = [k for k in range(s1.n) if s1.slots[k] != s2.slots[k]]
            j = diff[0] if diff else 0
        self.negate_via_inverse(i + 1, j)
        c, s = self.terms[i]
        sl = list(s.slots)
        sl[j] = s1.slots[j] / s2.slots[j]
        self.apply("M2", (i, i + 1), [Term(c, s.with_slots(sl))])

    def replace_by_expansion(self, i, target, factors):
        """Replace the term at i by ``target``, proven by expanding -target.

        ``factors[j]`` lists field elements multiplying to target slot j.
        After expansion every surviving term must carry exactly the slots of
        the current term at i, and all Witt contributions must cancel.
        """
        orig = self.terms[i]
        target = Term(*target)
        if target == orig:
            return
        self.insert_zero_pair(i + 1, target.coef, target.sym.w, target.sym.slots)
        lo, hi = i + 2, i + 3  # block holding the expansion of -target
        for j, fs in enumerate(factors):
            if len(fs) < 2:
                continue
            pos = lo
            while pos < hi:
                k = self.split_slot(pos, j, fs)
                hi += k - 1
                end = pos + k
                q = pos
                while q < end:
                    sl = self.terms[q].sym.slots
                    if sl != orig.sym.slots and len(set(sl)) < len(sl):
                        self.kill("M3", q)
                        end -= 1
                        hi -= 1
                    else:
                        q += 1
                pos = end
        survivors = list(range(lo, hi))
        if any(self.terms[q].sym.slots != orig.sym.slots for q in survivors):
            raise AssertionError("expansion left a term that does not match")
        self.apply("M1", (i, *survivors), [Term(1, orig.sym.with_witt(WittVector.zero(orig.sym.sig, orig.sym.m)))], at=i)
        self.kill("M7", i)


def expand_slot(sym, i, factors):
    """Multilinearity in slot ``i``: returns the expanded sum and its certificate."""
    prod = factors[0]
    for f in factors[1:]:
        prod = prod * f
    if prod != sym.slots[i]:
        raise ValueError("factors do not multiply to the slot entry")
    d = Derivation(sym)
    d.split_slot(0, i, list(factors))
    return d.current(), d.certificate()


def antisymmetry_swap(sym, i, j):
    """w (x) ..a..b.. = w (x) ..b..a^-1.. (slots i, j); returns the symbol and certificate."""
    if i == j:
        raise ValueError("swap needs two distinct slots")
    a, b = min(i, j), max(i, j)
    d = Derivation(sym)
    d.swap_negate(0, a, b)
    d.negate_via_inverse(0, b)
    (c, out), = d.terms
    assert c == 1
    return out, d.certificate()


def _rewrite_first_slot(d, i, exps, modulus):
    """In-place first-slot rewrite of the term at i; returns the new slot tuple."""
    c0, s = d[i]
    n = s.n
    p = s.sig.p
    exps = list(exps)
    j0 = next((k for k, e in enumerate(exps) if gcd(e, p) == 1), None)
    if j0 is None:
        raise ValueError("no exponent prime to p")
    if exps == [1] + [0] * (n - 1):
        return s.slots
    sign = 1
    if j0 != 0:
        d.swap_negate(i, 0, j0)
        exps[0], exps[j0] = exps[j0], exps[0]
        sign = -1
    _, s = d[i]
    slots = s.slots
    first = s.sig.one()
    f0 = []
    for b, e in zip(slots, exps):
        if e:
            first = first * b ** e
            f0 += [b] * e
    c = (sign * pow(exps[0], -1, modulus)) % modulus
    if n >= 2:
        target = Term(c0, s.with_slots((first, slots[1] ** c) + slots[2:]))
        factors = [f0, [slots[1]] * c] + [[]] * (n - 2)
    else:
        target = Term(c0 * c, s.with_slots((first,)))
        factors = [f0]
    d.replace_by_expansion(i, target, factors)
    return d[i].sym.slots


def rewrite_first_slot(sym, exps):
    """Rewrite w (x) b_1..b_n as w (x) prod b_k^d_k (x) g_2..g_n.

    Returns ``(term, gammas, certificate)``; ``term`` is ``(coef, Symbol)``.
    For n >= 2 the coefficient is 1 and the exponent correction lands in g_2;
    for n = 1 it is carried by the coefficient.
    """
    if len(exps) != sym.n:
        raise ValueError("exponent vector length does not match slot count")
    modulus = sym.sig.p ** sym.m
    if any(not 0 <= e < modulus for e in exps):
        raise ValueError("exponents must lie in 0..p^m-1")
    d = Derivation(sym)
    slots = _rewrite_first_slot(d, 0, exps, modulus)
    (term,) = d.terms
    return term, slots[1:], d.certificate()
