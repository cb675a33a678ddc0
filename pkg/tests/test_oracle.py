import itertools
import random

import pytest

from katomilne.errors import SearchCapExceeded
from katomilne.field import Signature
from katomilne.oracle import (SearchBounds, candidates, enumeration_size, gen_t3, gen_t4, gen_t5,
                              random_witness, search_as_witness)
from katomilne.pdep import exponent_indices, p_independence
from katomilne.symbol import ASWitness, as_value, check_as_witness


def brute_force(alpha, betas, bounds):
    # every tuple (lambda, z_d...) in canonical order, no shortcuts
    sig = alpha.sig
    idx = [d for d in exponent_indices(sig.p, len(betas)) if any(d)]
    cands = candidates(sig, bounds)
    for combo in itertools.product(cands, repeat=1 + len(idx)):
        wit = ASWitness(combo[0], {d: v for d, v in zip(idx, combo[1:]) if v})
        if check_as_witness(alpha, betas, wit):
            return wit
    return None


def test_candidate_order():
    sig = Signature(2, ("x",))
    x, = sig.gens()
    assert candidates(sig, SearchBounds(0)) == [sig.zero(), sig.one()]
    assert candidates(sig, SearchBounds(1)) == [sig.zero(), sig.one(), x, x + 1]
    sig3 = Signature(3, ("x", "y"))
    cs = candidates(sig3, SearchBounds(1, 2))
    assert len(cs) == len(set(cs)) == 1 + 3 * 2 + 3 * 4
    assert enumeration_size(sig3, SearchBounds(1, 2), 2) == len(cs) ** 2


def test_search_examples():
    sig = Signature(2, ("x", "y"))
    x, y = sig.gens()
    wit = search_as_witness(sig.zero(), [x], SearchBounds(0))
    assert wit.lam == 0 and not wit.nonzero()
    wit = search_as_witness(x * x, [x], SearchBounds(1))
    assert check_as_witness(x * x, [x], wit)
    # x = 0^2 - 0 + 1^2 x already lies in the constant bounds
    wit = search_as_witness(x, [x], SearchBounds(0))
    assert wit.lam == 0 and wit.z == {(1,): sig.one()}
    # y is not lambda^2 - lambda + c^2 x for constants lambda, c
    assert search_as_witness(y, [x], SearchBounds(0)) is None


def test_search_matches_brute_force():
    rng = random.Random(51)
    for p, k, deg in [(2, 1, 1), (2, 2, 1), (3, 1, 1)]:
        sig = Signature(p, ("x", "y")[:k])
        gens = sig.gens()
        bounds = SearchBounds(deg, 2)
        for _ in range(6):
            betas = [gens[0]]
            wit = random_witness(rng, sig, [(1,)] if p == 2 else [(1,), (2,)], deg)
            alpha = as_value(betas, wit)
            if rng.random() < 0.3:
                alpha = alpha + gens[-1] ** 3
            assert search_as_witness(alpha, betas, bounds) == brute_force(alpha, betas, bounds)


def test_search_complete_on_planted_instances():
    rng = random.Random(52)
    bounds = SearchBounds(1, 3)
    for p, n in [(2, 1), (2, 2), (3, 1)]:
        sig = Signature(p, ("x", "y"))
        for _ in range(5):
            betas = list(sig.gens())[:n]
            idx = [d for d in exponent_indices(p, n) if any(d)]
            wit = random_witness(rng, sig, idx, 1)
            alpha = as_value(betas, wit)
            found = search_as_witness(alpha, betas, bounds)
            assert found is not None and check_as_witness(alpha, betas, found)


def test_search_cap():
    sig = Signature(2, ("x", "y"))
    x, y = sig.gens()
    with pytest.raises(SearchCapExceeded):
        search_as_witness(x, [x, y], SearchBounds(2), cap=1000)


def test_search_cap_from_environment(monkeypatch):
    sig = Signature(2, ("x",))
    x, = sig.gens()
    monkeypatch.setenv("WITT_SYMBOL_CAP", "3")
    with pytest.raises(SearchCapExceeded):
        search_as_witness(x, [x], SearchBounds(1))
    monkeypatch.setenv("WITT_SYMBOL_CAP", "100")
    assert search_as_witness(x, [x], SearchBounds(1)) is not None


def test_generators_deterministic_and_consistent():
    assert gen_t3(2, 2, 2, 2, 7) == gen_t3(2, 2, 2, 2, 7)
    assert gen_t4(2, 2, 2, 2, 7) == gen_t4(2, 2, 2, 2, 7)
    assert gen_t5(2, 1, 2, 7) == gen_t5(2, 1, 2, 7)
    for seed in range(10):
        sym, wit = gen_t3(3, 2, 2, 2, seed)
        assert check_as_witness(sym.w[0], sym.slots, wit)
        assert p_independence(list(sym.slots)).independent
    pairs, wit = gen_t4(2, 2, 3, 3, 1)
    assert p_independence([b for _, b in pairs[:2]]).independent
    assert len(wit.levels) == 3


def test_generator_errors():
    with pytest.raises(ValueError):
        gen_t3(2, 1, 1, 1, 0)
    with pytest.raises(ValueError):
        gen_t4(2, 2, 0, 1, 0)
    with pytest.raises(ValueError):
        gen_t5(1, 1, 1, 0)
