"""Certificates: chains of elementary relation moves, and their verifier.

Each step removes the terms at ``indices`` from the previous sum and inserts
the new terms at position ``at`` of what remains.  The verifier recomputes
every local identity from scratch; it never calls into the code that built
the certificate.

Moves
-----
M1  WittMerge/WittSplit: terms sharing one slot list; sum c*w unchanged.
M2  SlotSplit/SlotMerge: one term vs several with the same c, w, equal
    slots except one position whose entries multiply to the single entry.
M3  RepeatKill: insert/delete a term with two equal slot entries.
M4  FrobKill: c*w^p (x) R <-> c*w (x) R, w^p taken slotwise.
M5  SlotVectorKill: insert/delete a term whose Witt vector has exactly one
    nonzero slot, equal to one of its field slots.
M6  WittEval: one term replaced by one term with the same c*w and slots.
M7  ZeroKill: insert/delete a term with zero Witt vector or coefficient 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .symbol import SymbolSum
from .witt import WittVector

MOVES = ("M1", "M2", "M3", "M4", "M5", "M6", "M7")

MOVE_NAMES = {
    "M1": "WittMerge",
    "M2": "SlotSplit",
    "M3": "RepeatKill",
    "M4": "FrobKill",
    "M5": "SlotVectorKill",
    "M6": "WittEval",
    "M7": "ZeroKill",
}


@dataclass(frozen=True)
class Step:
    move: str
    indices: tuple
    at: int
    result: SymbolSum


@dataclass
class Certificate:
    start: SymbolSum
    steps: list = field(default_factory=list)
    end: SymbolSum = None

    def __post_init__(self):
        if self.end is None:
            self.end = self.steps[-1].result if self.steps else self.start

    def then(self, other):
        """Concatenate with a certificate starting where this one ends."""
        if other.start != self.end:
            raise ValueError("certificates do not chain")
        return Certificate(self.start, list(self.steps) + list(other.steps), other.end)


@dataclass
class Verdict:
    valid: bool
    step: int = None
    reason: str = ""

    def __bool__(self):
        return self.valid


def _witt_total(terms):
    groups = {}
    order = []
    for c, s in terms:
        if s.w not in groups:
            groups[s.w] = 0
            order.append(s.w)
        groups[s.w] += c
    w0 = terms[0].sym.w
    total = WittVector.zero(w0.sig, w0.m)
    for w in order:
        total = total + w.scalar(groups[w])
    return total


def _check_m1(old, new):
    if not old or not new:
        return "M1 needs terms on both sides"
    slots = old[0].sym.slots
    if any(t.sym.slots != slots for t in old + new):
        return "M1 terms do not share one slot list"
    if _witt_total(old) != _witt_total(new):
        return "M1 Witt totals differ"
    return None


def _check_m6(old, new):
    if len(old) != 1 or len(new) != 1:
        return "M6 rewrites exactly one term"
    return _check_m1(old, new)


def _check_m2(old, new):
    if len(old) == 1 and len(new) >= 2:
        one, many = old[0], new
    elif len(new) == 1 and len(old) >= 2:
        one, many = new[0], old
    else:
        return "M2 needs one term against two or more"
    for t in many:
        if t.coef != one.coef or t.sym.w != one.sym.w:
            return "M2 terms differ in coefficient or Witt vector"
        if t.sym.n != one.sym.n:
            return "M2 slot counts differ"
    n = one.sym.n
    for i in range(n):
        if all(t.sym.slots[:i] == one.sym.slots[:i] and t.sym.slots[i + 1:] == one.sym.slots[i + 1:]
               for t in many):
            prod = many[0].sym.slots[i]
            for t in many[1:]:
                prod = prod * t.sym.slots[i]
            if prod == one.sym.slots[i]:
                return None
    return "M2 factors do not multiply to the slot entry"


def _single(old, new, name):
    if len(old) + len(new) != 1:
        return None, f"{name} inserts or deletes exactly one term"
    return (old or new)[0], None


def _check_m3(old, new):
    t, err = _single(old, new, "M3")
    if err:
        return err
    s = t.sym.slots
    if len(set(s)) == len(s):
        return "M3 term has no repeated slot entry"
    return None


def _check_m4(old, new):
    if len(old) != 1 or len(new) != 1:
        return "M4 rewrites exactly one term"
    a, b = old[0], new[0]
    if a.coef != b.coef or a.sym.slots != b.sym.slots:
        return "M4 changes more than the Witt vector"
    if b.sym.w.m != a.sym.w.m:
        return "M4 changes the Witt length"
    if b.sym.w == a.sym.w.frobenius() or a.sym.w == b.sym.w.frobenius():
        return None
    return "M4 Witt vectors are not related by Frobenius"


def _check_m5(old, new):
    t, err = _single(old, new, "M5")
    if err:
        return err
    nz = [x for x in t.sym.w.slots if x]
    if len(nz) != 1:
        return "M5 Witt vector must have exactly one nonzero slot"
    if nz[0] not in t.sym.slots:
        return "M5 Witt entry does not match a field slot"
    return None


def _check_m7(old, new):
    t, err = _single(old, new, "M7")
    if err:
        return err
    if t.coef != 0 and not t.sym.w.is_zero():
        return "M7 term is not zero"
    return None


_CHECKS = {
    "M1": _check_m1,
    "M2": _check_m2,
    "M3": _check_m3,
    "M4": _check_m4,
    "M5": _check_m5,
    "M6": _check_m6,
    "M7": _check_m7,
}


def check_step(prev, step, shape=None):
    """Return None if ``step`` legally transforms ``prev``, else a reason."""
    check = _CHECKS.get(step.move)
    if check is None:
        return f"unknown move {step.move!r}"
    idx = tuple(step.indices)
    if len(set(idx)) != len(idx):
        return "repeated term index"
    if any(not 0 <= i < len(prev) for i in idx):
        return "term index out of range"
    drop = set(idx)
    rest = [t for i, t in enumerate(prev.terms) if i not in drop]
    res = step.result.terms
    k = len(res) - len(rest)
    if k < 0 or not 0 <= step.at <= len(rest):
        return "result length inconsistent with the move"
    new = list(res[step.at:step.at + k])
    if list(res[:step.at]) != rest[:step.at] or list(res[step.at + k:]) != rest[step.at:]:
        return "terms outside the move changed"
    if shape is not None:
        for t in new:
            if (t.sym.sig, t.sym.m, t.sym.n) != shape:
                return "new term has the wrong field, Witt length or slot count"
    old = [prev.terms[i] for i in idx]
    return check(old, new)


def verify(cert):
    prev = cert.start
    shape = None
    if len(cert.start):
        s = cert.start[0].sym
        shape = (s.sig, s.m, s.n)
    for j, step in enumerate(cert.steps):
        if shape is None and len(step.result):
            s = step.result[0].sym
            shape = (s.sig, s.m, s.n)
        reason = check_step(prev, step, shape)
        if reason:
            return Verdict(False, j, reason)
        prev = step.result
    if prev != cert.end:
        return Verdict(False, max(len(cert.steps) - 1, 0), "final sum differs from the stated end")
    return Verdict(True)
