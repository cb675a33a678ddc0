import random

import pytest

from katomilne.certificate import Certificate, Step, verify
from katomilne.errors import InvalidWitness
from katomilne.field import Signature
from katomilne.oracle import gen_t3
from katomilne.decompose import theorem3
from katomilne.pdep import p_independence
from katomilne.rewriting import Derivation, antisymmetry_swap, expand_slot
from katomilne.symbol import (ASWitness, Symbol, SymbolSum, Term, check_as_witness, lift, project,
                              residue, unlift, witness_from_dependence)
from katomilne.witt import WittVector

from mutations import LABEL, SEMANTIC, mutate, same_chain


def setup2():
    sig = Signature(2, ("x", "y"))
    return (sig,) + tuple(sig.gens())


def test_symbol_invariants():
    sig, x, y = setup2()
    w = WittVector([x, 1], sig)
    with pytest.raises(ValueError):
        Symbol(w, (x, sig.zero()))
    with pytest.raises(TypeError):
        Symbol(w, (1,))
    other = Signature(3, ("x",))
    with pytest.raises(ValueError):
        Symbol(w, (other.var("x"),))
    s = Symbol(w, (x, y))
    assert (s.m, s.n) == (2, 2)
    assert str(SymbolSum([Term(1, s), Term(-2, s)])) == f"{s} - 2 {s}"


def test_check_as_witness_examples():
    sig, x, y = setup2()
    assert check_as_witness(sig.zero(), [x], ASWitness(sig.zero(), {}))
    wit = ASWitness(x, {(1,): sig.one()})
    assert check_as_witness(x * x, [x], wit)
    assert not check_as_witness(x * x + 1, [x], wit)
    # indices must be nonzero and inside {0..p-1}^n
    assert not check_as_witness(x * x, [x], ASWitness(x, {(2,): sig.one()}))
    assert not check_as_witness(x * x - x * x, [x], ASWitness(sig.zero(), {(0,): sig.one()}))


def test_witness_from_dependence_examples():
    sig, x, y = setup2()
    for betas, alpha in [([x, x], y), ([x, x * x], sig.one()), ([x, x], sig.zero()),
                         ([x, x * x], x / (y + 1))]:
        dep = p_independence(betas)
        wit = witness_from_dependence(alpha, betas, dep.witness)
        assert wit.lam == -alpha
        assert check_as_witness(alpha, betas, wit)
    with pytest.raises(InvalidWitness):
        witness_from_dependence(y, [x, y], {(1, 0): sig.one()})


def test_witness_from_dependence_random():
    rng = random.Random(31)
    for p in (2, 3):
        sig = Signature(p, ("x", "y"))
        x, y = sig.gens()
        for _ in range(20):
            betas = [x, rng.choice([x, x * x, y ** p])]
            alpha = sig.const(rng.randrange(p)) * x * y + y ** rng.randrange(3)
            dep = p_independence(betas)
            assert check_as_witness(alpha, betas, witness_from_dependence(alpha, betas, dep.witness))


def test_project_lift_unlift():
    sig, x, y = setup2()
    s = Symbol(WittVector([x, y, x + y], sig), (x,))
    assert residue(s) == (x, (x,))
    assert project(s, 3) == s
    assert project(s, 1).w.slots == (x,)
    t = Symbol(WittVector([x, y], sig), (y,))
    assert unlift(lift(t)) == t
    assert project(lift(t), 1).w.is_zero()
    assert unlift(Symbol(WittVector([0, x], sig), (y,))).w.slots == (x,)
    with pytest.raises(ValueError):
        unlift(Symbol(WittVector([x, 1], sig), (y,)))


def test_verify_trivial_and_wrong_end():
    sig, x, y = setup2()
    s = SymbolSum.of(Symbol(WittVector([x, y], sig), (x,)))
    assert verify(Certificate(s, []))
    bad = verify(Certificate(s, [], SymbolSum()))
    assert not bad and bad.step == 0


def test_each_move_accepts_and_rejects():
    sig, x, y = setup2()
    w = WittVector([x, y], sig)
    v = WittVector([y, 1], sig)
    a = Symbol(w, (x, y))
    # M1: w + v -> (w + v)
    start = SymbolSum.of(a, a.with_witt(v))
    good = Step("M1", (0, 1), 0, SymbolSum.of(a.with_witt(w + v)))
    assert verify(Certificate(start, [good]))
    bad = Step("M1", (0, 1), 0, SymbolSum.of(a.with_witt(w)))
    assert verify(Certificate(start, [bad])).step == 0
    # M2 split of slot 0: x*y -> x, y
    b = Symbol(w, (x * y, y))
    split = SymbolSum.of(b.with_slots((x, y)), b.with_slots((y, y)))
    assert verify(Certificate(SymbolSum.of(b), [Step("M2", (0,), 0, split)]))
    wrong = SymbolSum.of(b.with_slots((x, y)), b.with_slots((x, y)))
    assert not verify(Certificate(SymbolSum.of(b), [Step("M2", (0,), 0, wrong)]))
    # M3 only deletes a term with a repeated slot
    rep = Symbol(w, (x, x))
    assert verify(Certificate(SymbolSum.of(rep), [Step("M3", (0,), 0, SymbolSum())]))
    assert not verify(Certificate(SymbolSum.of(a), [Step("M3", (0,), 0, SymbolSum())]))
    # M4: w^p <-> w
    f = SymbolSum.of(a.with_witt(w.frobenius()))
    assert verify(Certificate(SymbolSum.of(a), [Step("M4", (0,), 0, f)]))
    assert verify(Certificate(f, [Step("M4", (0,), 0, SymbolSum.of(a))]))
    assert not verify(Certificate(SymbolSum.of(a), [Step("M4", (0,), 0, SymbolSum.of(a.with_witt(v)))]))
    # M5: (0, y) (x) (x; y) is zero, (0, x + 1) (x) (x; y) is not
    k = Symbol(WittVector([0, y], sig), (x, y))
    assert verify(Certificate(SymbolSum.of(k), [Step("M5", (0,), 0, SymbolSum())]))
    k2 = Symbol(WittVector([0, x + 1], sig), (x, y))
    assert not verify(Certificate(SymbolSum.of(k2), [Step("M5", (0,), 0, SymbolSum())]))
    k3 = Symbol(WittVector([x, y], sig), (x, y))
    assert not verify(Certificate(SymbolSum.of(k3), [Step("M5", (0,), 0, SymbolSum())]))
    # M6: 2 * (x, 0) -> (0, x^2)
    c = SymbolSum([Term(2, Symbol(WittVector([x, 0], sig), (y,)))])
    ev = SymbolSum.of(Symbol(WittVector([0, x * x], sig), (y,)))
    assert verify(Certificate(c, [Step("M6", (0,), 0, ev)]))
    assert not verify(Certificate(c, [Step("M6", (0,), 0, SymbolSum.of(Symbol(WittVector([0, x], sig), (y,))))]))
    # M7: only zero terms
    z = Symbol(WittVector.zero(sig, 2), (y,))
    assert verify(Certificate(SymbolSum.of(z), [Step("M7", (0,), 0, SymbolSum())]))
    assert verify(Certificate(SymbolSum([Term(0, a)]), [Step("M7", (0,), 0, SymbolSum())]))
    assert not verify(Certificate(SymbolSum.of(a), [Step("M7", (0,), 0, SymbolSum())]))


def test_verifier_structural_errors():
    sig, x, y = setup2()
    a = Symbol(WittVector([x, y], sig), (x,))
    b = Symbol(WittVector([y, y], sig), (y,))
    start = SymbolSum.of(a, b)
    reasons = [
        Step("M9", (0,), 0, SymbolSum.of(b)),
        Step("M7", (0, 0), 0, SymbolSum.of(b)),
        Step("M7", (5,), 0, SymbolSum.of(b)),
        Step("M4", (0,), 0, SymbolSum.of(a.with_witt(a.w.frobenius()), a)),
    ]
    for st in reasons:
        v = verify(Certificate(start, [st]))
        assert not v and v.step == 0 and v.reason
    # a new term of the wrong Witt length is refused
    short = Symbol(WittVector([0], sig), (x,))
    v = verify(Certificate(start, [Step("M7", (), 0, SymbolSum.of(short, a, b))]))
    assert not v and "Witt length" in v.reason


def test_expand_slot_examples():
    sig, x, y = setup2()
    w = WittVector([x, 1], sig)
    s = Symbol(w, (x * y, y))
    out, cert = expand_slot(s, 0, [x, y])
    assert len(out) == 2 and verify(cert)
    out, cert = expand_slot(s, 0, [x * y])
    assert len(out) == 1 and not cert.steps
    with pytest.raises(ValueError):
        expand_slot(s, 0, [x, x])


def test_torsion_kill_by_merge_and_evaluation():
    # w (x) b^{p^m} c expands into p^m copies of w (x) b plus w (x) c; merge and kill
    for p in (2, 3):
        sig = Signature(p, ("x", "y"))
        x, y = sig.gens()
        m = 2
        w = WittVector([x + y, y], sig)
        s = Symbol(w, (x ** (p ** m) * y,))
        d = Derivation(s, check=True)
        d.split_slot(0, 0, [x] * p ** m + [y])
        total = d.merge_witt(tuple(range(p ** m)))
        assert total.is_zero()
        d.kill("M7", 0)
        cert = d.certificate()
        assert verify(cert)
        assert cert.end == SymbolSum.of(Symbol(w, (y,)))


def test_antisymmetry_swap_examples():
    for p in (2, 3):
        sig = Signature(p, ("x", "y"))
        x, y = sig.gens()
        w = WittVector([x, y + 1], sig)
        s = Symbol(w, (x, y))
        out, cert = antisymmetry_swap(s, 0, 1)
        assert out == Symbol(w, (y, x.inverse()))
        assert verify(cert) and cert.end == SymbolSum.of(out)
        back, cert2 = antisymmetry_swap(out, 0, 1)
        full = cert.then(cert2)
        assert verify(full)
        # swapping twice inverts both entries
        assert back == Symbol(w, (x.inverse(), y.inverse()))
        same, cert3 = antisymmetry_swap(Symbol(w, (x, x)), 0, 1)
        assert same.slots == (x, x.inverse()) and verify(cert3)
        with pytest.raises(ValueError):
            antisymmetry_swap(s, 1, 1)


def test_antisymmetry_random_three_slots():
    rng = random.Random(33)
    sig = Signature(3, ("x", "y", "z"))
    x, y, z = sig.gens()
    pool = [x, y, z, x + y, y * z + 1]
    for _ in range(10):
        slots = tuple(rng.choice(pool) for _ in range(3))
        w = WittVector([rng.choice(pool), 1], sig)
        i, j = rng.sample(range(3), 2)
        out, cert = antisymmetry_swap(Symbol(w, slots), i, j)
        assert verify(cert)
        a, b = min(i, j), max(i, j)
        assert out.slots[a] == slots[b] and out.slots[b] == slots[a].inverse()


def test_mutations_of_decomposition_certificates_are_rejected():
    rng = random.Random(35)
    certs = []
    for seed in range(4):
        sym, wit = gen_t3(2, 2, 1, 2, seed, deg=1)
        certs.append(theorem3(sym, wit)[1])
    for kind in SEMANTIC + LABEL:
        for _ in range(15):
            cert = rng.choice(certs)
            bad = mutate(rng, cert, kind)
            if bad is None:
                continue
            v = verify(bad)
            if kind in SEMANTIC:
                assert not v and v.step is not None, kind
            elif v:
                # a relabelled step can only pass if the chain of sums is untouched
                assert same_chain(bad, cert)
