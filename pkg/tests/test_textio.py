import pytest

from katomilne.certificate import verify
from katomilne.decompose import theorem3, theorem5
from katomilne.field import ParseError, Signature, SignatureMismatch
from katomilne.oracle import gen_t3, gen_t4, gen_t5
from katomilne.symbol import SymbolSum, Term
from katomilne.textio import dumps, loads, parse, parse_symbol, parse_witt, render
from katomilne.witt import WittVector


def test_symbol_example():
    doc = parse("field p=2 vars=x,y\n[x, x+1] (x; y)\n")
    assert doc.kind == "sum"
    (c, s), = doc.body
    assert c == 1 and s.m == 2 and s.n == 2
    x, y = doc.sig.gens()
    assert s.w.slots == (x, x + 1) and s.slots == (x, y)


def test_sum_syntax():
    sig = Signature(3, ("x", "y"))
    x, y = sig.gens()
    doc = parse("field p=3 vars=x,y\n# a comment\n2 [x, 1] (y) - [y, 0] (x)\n+ [0, 1] (x)\n")
    assert [t.coef for t in doc.body] == [2, -1, 1]
    assert parse("field p=3 vars=x,y\n0\n").body == SymbolSum()
    assert parse_symbol(sig, "[x/y, y^2] (x*y; 1/x)").slots == (x * y, x.inverse())


def test_witt_expressions():
    sig = Signature(2, ("x",))
    x, = sig.gens()
    a = WittVector([x, 0], sig)
    assert parse_witt(sig, "[x, 0] + [x, 0]") == a + a
    assert parse_witt(sig, "2*[x, 0]") == WittVector([0, x * x], sig)
    assert parse_witt(sig, "-[x, 0]") == -a
    assert parse_witt(sig, "frob([x, 1])") == WittVector([x * x, 1], sig)
    assert parse_witt(sig, "shift([x], 1)") == WittVector([0, x], sig)
    assert parse_witt(sig, "trunc([x, 1], 1)") == WittVector([x], sig)
    assert parse_witt(sig, "([x, 1] - [x, 1])").is_zero()


def test_round_trips_of_generated_documents():
    for seed in range(3):
        sym, wit = gen_t3(3, 2, 2, 2, seed)
        out, cert = theorem3(sym, wit)
        sig = sym.sig
        docs = [(sig, "sum", SymbolSum.of(sym)), (sig, "witness", wit), (sig, "certificate", cert),
                (sig, "sum", SymbolSum.of(*out)), (sig, "witt", sym.w)]
        pairs, t4 = gen_t4(2, 2, 2, 2, seed)
        docs.append((pairs[0][1].sig, "t4witness", t4))
        s1, s2, chain = gen_t5(2, 1, 2, seed)
        docs.append((s1.sig, "chain", chain))
        docs.append((s1.sig, "sum", SymbolSum([Term(1, s1), Term(-1, s2)])))
        for s, kind, body in docs:
            text = dumps(s, kind, body)
            doc = loads(text, kind)
            assert doc.body == body, kind
            assert render(doc) == text


def test_certificate_round_trip_verifies():
    s1, s2, chain = gen_t5(2, 1, 2, 4)
    out, cert = theorem5(s1, s2, chain)
    back = loads(dumps(s1.sig, "certificate", cert)).body
    assert back == cert and verify(back)


def test_certificate_long_move_names_and_default_at():
    text = ("field p=2 vars=x\n"
            "start [x, 0] (x) + [x, 0] (x)\n"
            "step WittMerge 0 1\n"
            "[0, x^2] (x)\n")
    cert = loads(text, "certificate").body
    assert cert.steps[0].move == "M1" and cert.steps[0].at == 0
    assert verify(cert)


def test_parse_errors_report_positions():
    cases = {
        "": "missing 'field'",
        "field p=4 vars=x\n[x] (x)\n": "1:1",
        "fld p=2\n": "1:1",
        "field p=2 vars=x\n[x^] (x)\n": "2:",
        "field p=2 vars=x\n[x] (q)\n": "2:",
        "field p=2 vars=x\nstart [x] (x)\nstep M9 0\n0\n": "3:",
        "field p=2 vars=x\nstart [x] (x)\nstep M7 0\n": "step without a result line",
        "field p=2 vars=x\nlambda=x\nz a = 1\n": "3:",
        "field p=2 vars=x\neval [x] +\n": "2:",
    }
    for text, where in cases.items():
        with pytest.raises(ParseError) as err:
            parse(text)
        assert where in str(err.value), (text, str(err.value))


def test_column_of_bad_exponent():
    with pytest.raises(ParseError) as err:
        parse("field p=2 vars=x\n[x^] (x)\n")
    assert str(err.value).startswith("2:4")


def test_signature_mismatch_and_kind_check():
    text = "field p=2 vars=x\n[x] (x)\n"
    with pytest.raises(SignatureMismatch):
        parse(text, Signature(3, ("x",)))
    with pytest.raises(ParseError):
        loads(text, "certificate")
