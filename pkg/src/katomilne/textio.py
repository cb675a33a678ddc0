"""Text format for fields, Witt vectors, symbol sums, witnesses and certificates.

A document is a header line ``field p=<int> vars=<id>,...`` followed by a
body.  Blank lines and lines starting with ``#`` are ignored.  The body kind
is read from its first line:

* ``start ...``           certificate (``step``/result line pairs, then ``end``)
* ``lambda=...``/``z ...`` Artin-Schreier witness
* ``level <j>``           per-level witnesses for the sum-of-r-symbols case
* ``gamma ...``/``line``  telescoping chain witness
* ``eval <witt expr>``    Witt vector expression
* anything else           symbol sum (all lines added up)
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .certificate import MOVE_NAMES, MOVES, Certificate, Step
from .decompose import ChainWitness, T4Witness
from .field import ParseError, Signature, SignatureMismatch
from .symbol import ASWitness, Symbol, SymbolSum, Term
from .witt import WittVector

_HEADER = re.compile(r"field\s+p\s*=\s*(\d+)\s+vars\s*=\s*([A-Za-z_][A-Za-z0-9_]*(?:\s*,\s*[A-Za-z_][A-Za-z0-9_]*)*)\s*$")
_MOVE_BY_NAME = {v.lower(): k for k, v in MOVE_NAMES.items()}


@dataclass
class Document:
    sig: Signature
    kind: str
    body: object


def parse_header(text, line=1):
    m = _HEADER.match(text.strip())
    if not m:
        raise ParseError("expected 'field p=<int> vars=<id>,...'", line, 1)
    names = tuple(s.strip() for s in m.group(2).split(","))
    try:
        return Signature(int(m.group(1)), names)
    except ValueError as e:
        raise ParseError(str(e), line, 1) from None


class _Scanner:
    """Character scanner over one line; columns are 1-based in the document."""

    def __init__(self, sig, text, line=1, col=1):
        self.sig = sig
        self.text = text
        self.line = line
        self.col0 = col
        self.pos = 0

    def error(self, msg, pos=None):
        raise ParseError(msg, self.line, self.col0 + (self.pos if pos is None else pos))

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self):
        return self.peek() == ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def word(self):
        self.ws()
        m = re.compile(r"[A-Za-z_]+").match(self.text, self.pos)
        return m.group(0) if m else ""

    def integer(self):
        self.ws()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected integer")
        self.pos = m.end()
        return int(m.group(0))

    def field_items(self, close, sep):
        """Parse field elements up to the matching ``close``, split at top-level ``sep``."""
        items = []
        depth = 0
        start = self.pos
        while True:
            if self.pos >= len(self.text):
                self.error(f"expected {close!r}")
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")" and depth:
                depth -= 1
            elif depth == 0 and ch in (sep, close):
                items.append(self.sig.parse(self.text[start:self.pos], self.line, self.col0 + start))
                self.pos += 1
                if ch == close:
                    return items
                start = self.pos
                continue
            self.pos += 1

    def witt_literal(self):
        self.expect("[")
        return WittVector(self.field_items("]", ","), self.sig)

    def symbol(self):
        w = self.witt_literal()
        self.expect("(")
        start = self.pos
        slots = self.field_items(")", ";")
        for s in slots:
            if not s:
                self.error("symbol slots must be nonzero", start)
        return Symbol(w, slots)

    def sum(self):
        terms = []
        if self.peek() == "0":
            save = self.pos
            self.pos += 1
            if self.at_end():
                return SymbolSum()
            self.pos = save
        first = True
        while not self.at_end():
            sign = 1
            ch = self.peek()
            if ch in "+-":
                self.pos += 1
                sign = -1 if ch == "-" else 1
            elif not first:
                self.error("expected '+' or '-'")
            coef = 1
            if self.peek().isdigit():
                coef = self.integer()
                if self.peek() == "*":
                    self.pos += 1
            terms.append(Term(sign * coef, self.symbol()))
            first = False
        if not terms:
            self.error("empty sum")
        return SymbolSum(terms)

    # Witt expressions: + - integer* frob() shift(,k) trunc(,k) and brackets
    def witt_expr(self):
        v = self.witt_term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            w = self.witt_term()
            v = self._binary(v, w, op)
        return v

    def _binary(self, v, w, op):
        if v.m != w.m:
            self.error(f"Witt length mismatch: {v.m} vs {w.m}")
        return v + w if op == "+" else v - w

    def witt_term(self):
        neg = False
        if self.peek() == "-":
            self.pos += 1
            neg = True
        c = None
        if self.peek().isdigit():
            c = self.integer()
            self.expect("*")
        v = self.witt_atom()
        if c is not None:
            v = v.scalar(c)
        return -v if neg else v

    def witt_atom(self):
        ch = self.peek()
        if ch == "[":
            return self.witt_literal()
        if ch == "(":
            self.pos += 1
            v = self.witt_expr()
            self.expect(")")
            return v
        name = self.word()
        start = self.pos
        if name in ("frob", "shift", "trunc"):
            self.pos += len(name)
            self.expect("(")
            v = self.witt_expr()
            if name == "frob":
                self.expect(")")
                return v.frobenius()
            self.expect(",")
            k = self.integer()
            self.expect(")")
            try:
                return v.shift(k) if name == "shift" else v.truncate(k)
            except ValueError as e:
                self.error(str(e), start)
        self.error("expected a Witt vector")


def parse_witt(sig, text, line=1, col=1):
    sc = _Scanner(sig, text, line, col)
    v = sc.witt_expr()
    if not sc.at_end():
        sc.error("unexpected trailing text")
    return v


def parse_symbol(sig, text, line=1, col=1):
    sc = _Scanner(sig, text, line, col)
    s = sc.symbol()
    if not sc.at_end():
        sc.error("unexpected trailing text")
    return s


def parse_sum(sig, text, line=1, col=1):
    return _Scanner(sig, text, line, col).sum()


def _body_lines(text):
    out = []
    for i, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            out.append((i, raw.rstrip(), len(raw) - len(raw.lstrip()) + 1))
    return out


def _witness_line(sig, wit, lineno, raw, col):
    s = raw.strip()
    if s.startswith("lambda"):
        rest = s[len("lambda"):].lstrip()
        if not rest.startswith("="):
            raise ParseError("expected 'lambda=<expr>'", lineno, col)
        expr = rest[1:]
        wit.lam = sig.parse(expr, lineno, col + len(s) - len(expr))
        return True
    if s.startswith("z ") or s == "z":
        if "=" not in s:
            raise ParseError("expected 'z <d1> ... = <expr>'", lineno, col)
        lhs, expr = s[1:].split("=", 1)
        try:
            d = tuple(int(t) for t in lhs.split())
        except ValueError:
            raise ParseError("exponent index must be integers", lineno, col + 1) from None
        if not d:
            raise ParseError("missing exponent index", lineno, col + 1)
        wit.z[d] = sig.parse(expr, lineno, col + len(s) - len(expr))
        return True
    return False


def _parse_witness(sig, lines):
    wit = ASWitness(sig.zero(), {})
    for lineno, raw, col in lines:
        if not _witness_line(sig, wit, lineno, raw, col):
            raise ParseError("expected 'lambda=' or 'z' line", lineno, col)
    return wit


def _sections(lines, keyword):
    """Split lines at ``<keyword> <int>`` markers."""
    out = []
    for lineno, raw, col in lines:
        parts = raw.split()
        if parts[0] == keyword:
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"expected '{keyword} <int>'", lineno, col)
            out.append((int(parts[1]), lineno, []))
        else:
            if not out:
                raise ParseError(f"expected '{keyword} <int>'", lineno, col)
            out[-1][2].append((lineno, raw, col))
    return out


def _parse_certificate(sig, lines):
    start = end = None
    steps = []
    pending = None
    for lineno, raw, col in lines:
        s = raw.strip()
        off = col
        word = s.split(None, 1)[0]
        if pending is not None:
            move, idx, at = pending
            steps.append(Step(move, idx, at, parse_sum(sig, raw.strip(), lineno, col)))
            pending = None
            continue
        if word == "start":
            if start is not None:
                raise ParseError("duplicate 'start'", lineno, col)
            start = parse_sum(sig, s[5:], lineno, off + 5)
        elif word == "end":
            end = parse_sum(sig, s[3:], lineno, off + 3)
        elif word == "step":
            if start is None:
                raise ParseError("'step' before 'start'", lineno, col)
            if end is not None:
                raise ParseError("'step' after 'end'", lineno, col)
            parts = s.split()
            if len(parts) < 2:
                raise ParseError("expected move name", lineno, col)
            move = parts[1]
            if move not in MOVES:
                move = _MOVE_BY_NAME.get(move.lower())
                if move is None:
                    raise ParseError(f"unknown move {parts[1]!r}", lineno, col + s.index(parts[1]))
            rest = parts[2:]
            at = None
            if "at" in rest:
                k = rest.index("at")
                if k != len(rest) - 2:
                    raise ParseError("expected 'at <pos>' at the end", lineno, col)
                at = rest[k + 1]
                rest = rest[:k]
            try:
                idx = tuple(int(t) for t in rest)
                at = int(at) if at is not None else None
            except ValueError:
                raise ParseError("term indices must be integers", lineno, col) from None
            if at is None:
                at = min(idx) if idx else None
            pending = [move, idx, at]
        else:
            raise ParseError(f"unexpected {word!r} in certificate", lineno, col)
    if pending is not None:
        raise ParseError("step without a result line", lines[-1][0], 1)
    if start is None:
        raise ParseError("missing 'start'", 1, 1)
    fixed = []
    prev = start
    for st in steps:
        at = st.at
        if at is None:  # appended insertions default to the end of the remaining terms
            at = len(prev) - len(st.indices)
        fixed.append(Step(st.move, st.indices, at, st.result))
        prev = st.result
    return Certificate(start, fixed, end if end is not None else prev)


def parse(text, expect=None):
    """Parse a document; ``expect`` (a Signature) enforces a matching header."""
    lines = _body_lines(text)
    if not lines:
        raise ParseError("missing 'field' header", 1, 1)
    lineno, raw, _ = lines[0]
    sig = parse_header(raw, lineno)
    if expect is not None and sig != expect:
        raise SignatureMismatch(f"header {sig.header()!r} does not match {expect.header()!r}")
    body = lines[1:]
    first = body[0][1].strip() if body else ""
    word = first.split(None, 1)[0] if first else ""
    if word == "start":
        return Document(sig, "certificate", _parse_certificate(sig, body))
    if first.startswith("lambda") or word == "z":
        return Document(sig, "witness", _parse_witness(sig, body))
    if word == "level":
        levels = {j: _parse_witness(sig, ls) for j, _, ls in _sections(body, "level")}
        return Document(sig, "t4witness", T4Witness(levels))
    if word in ("gamma", "line"):
        gammas = []
        rest = []
        for ln, r, c in body:
            s = r.strip()
            if s.split(None, 1)[0] == "gamma":
                if rest:
                    raise ParseError("'gamma' after the first 'line'", ln, c)
                gammas.append(sig.parse(s[5:], ln, c + 5))
            else:
                rest.append((ln, r, c))
        secs = _sections(rest, "line") if rest else []
        for want, (t, ln, _) in enumerate(secs):
            if t != want:
                raise ParseError(f"expected 'line {want}'", ln, 1)
        return Document(sig, "chain", ChainWitness(gammas, [_parse_witness(sig, ls) for _, _, ls in secs]))
    if word == "eval":
        if len(body) != 1:
            raise ParseError("expected a single 'eval' line", body[1][0], 1)
        ln, r, c = body[0]
        return Document(sig, "witt", parse_witt(sig, r.strip()[4:], ln, c + 4))
    total = SymbolSum()
    for ln, r, c in body:
        total = total + parse_sum(sig, r, ln, 1)
    return Document(sig, "sum", total)


# -- rendering -------------------------------------------------------------------

def render_witness(wit):
    out = [f"lambda={wit.lam}"]
    for d in sorted(wit.z, key=lambda e: (sum(e), e)):
        out.append(f"z {' '.join(str(x) for x in d)} = {wit.z[d]}")
    return out


def render_term(t):
    return str(SymbolSum([t]))


def render_step(step):
    idx = " ".join(str(i) for i in step.indices)
    head = f"step {step.move} {idx}".rstrip()
    return [f"{head} at {step.at}", str(step.result)]


def render_body(kind, body):
    if kind == "sum":
        return [render_term(t) for t in body] or ["0"]
    if kind == "witness":
        return render_witness(body)
    if kind == "t4witness":
        out = []
        for j in sorted(body.levels, reverse=True):
            out.append(f"level {j}")
            out += render_witness(body.levels[j])
        return out
    if kind == "chain":
        out = [f"gamma {g}" for g in body.gammas]
        for t, w in enumerate(body.line_witnesses):
            out.append(f"line {t}")
            out += render_witness(w)
        return out
    if kind == "certificate":
        out = [f"start {body.start}"]
        for st in body.steps:
            out += render_step(st)
        out.append(f"end {body.end}")
        return out
    if kind == "witt":
        return [f"eval {body}"]
    raise ValueError(f"unknown document kind {kind!r}")


def render(doc):
    return "\n".join([doc.sig.header()] + render_body(doc.kind, doc.body)) + "\n"


def dumps(sig, kind, body):
    return render(Document(sig, kind, body))


def loads(text, kind=None, expect=None):
    doc = parse(text, expect)
    if kind is not None and doc.kind != kind:
        raise ParseError(f"expected a {kind} document, found {doc.kind}", 2, 1)
    return doc
