"""Desk-scale ground truth: planted instances and bounded witness search.

Randomness comes from ``random.Random(seed)`` (Mersenne Twister, stable
across platforms for integer draws), so a seed fixes an instance exactly.

Search enumerates polynomial candidates only.  Candidate order: total
degree, then the grlex-descending monomial list, then the coefficient tuple;
the zero polynomial comes first.  Unknowns are ordered lambda, then z_d with
d in grlex order, and tuples are visited lexicographically.  The last unknown
is solved for directly (Frobenius is injective), which visits the same tuples
in the same order as brute force, so the first witness is the canonical one.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass

from . import poly as P
from .decompose import ChainWitness, T4Witness, level_indices
from .errors import SearchCapExceeded
from .field import Signature
from .pdep import exponent_indices, monomial, p_independence
from .symbol import ASWitness, Symbol, as_value, check_as_witness
from .witt import WittVector

DEFAULT_CAP = 10 ** 7
VAR_NAMES = ("x", "y", "z", "w")


def search_cap():
    return int(os.environ.get("WITT_SYMBOL_CAP", DEFAULT_CAP))


@dataclass(frozen=True)
class SearchBounds:
    degree: int
    support: int = 3


def _monomials(k, deg):
    out = [e for e in itertools.product(range(deg + 1), repeat=k) if sum(e) <= deg]
    return sorted(out, key=P.grlex_key, reverse=True)


def candidates(sig, bounds):
    """All polynomials within bounds, in canonical search order."""
    p = sig.p
    monos = _monomials(sig.k, bounds.degree)
    keyed = [((-1, (), ()), sig.zero())]
    for t in range(1, min(bounds.support, len(monos)) + 1):
        for ms in itertools.combinations(monos, t):
            deg = max(sum(e) for e in ms)
            mkey = tuple(P.grlex_key(e) for e in ms)
            for cs in itertools.product(range(1, p), repeat=t):
                keyed.append(((deg, mkey, cs), sig.poly(dict(zip(ms, cs)))))
    keyed.sort(key=lambda kv: kv[0])
    return [v for _, v in keyed]


def enumeration_size(sig, bounds, unknowns):
    return len(candidates(sig, bounds)) ** unknowns


def search_as_witness(alpha, betas, bounds, indices=None, cap=None):
    """First witness (lambda, z) within bounds in canonical order, or None.

    ``indices`` restricts which z_d may be nonzero (default: all d != 0).
    None means no witness within the bounds, not that the class is nontrivial.
    """
    sig = alpha.sig
    p = sig.p
    if indices is None:
        indices = [d for d in exponent_indices(p, len(betas)) if any(d)]
    cands = candidates(sig, bounds)
    size = len(cands) ** (1 + len(indices))
    if size > (search_cap() if cap is None else cap):
        raise SearchCapExceeded(f"enumeration space {size} exceeds the cap")
    monos = [monomial(betas, d) for d in indices] if betas else []
    frob = [c.frobenius() for c in cands]
    if not indices:
        for lam, lp in zip(cands, frob):
            if lp - lam == alpha:
                return ASWitness(lam, {})
        return None
    allowed = set(cands)
    *head, last = monos
    last_inv = last.inverse()
    for combo in itertools.product(range(len(cands)), repeat=len(indices)):
        lam_i, zs = combo[0], combo[1:]
        rem = alpha - (frob[lam_i] - cands[lam_i])
        for zi, mono in zip(zs, head):
            if zi:
                rem = rem - frob[zi] * mono
        target = rem * last_inv
        root = target.pth_root()
        if root is not None and root in allowed:
            z = {d: cands[zi] for d, zi in zip(indices, zs) if zi}
            if root:
                z[indices[-1]] = root
            wit = ASWitness(cands[lam_i], z)
            if check_as_witness(alpha, betas, wit):
                return wit
    return None


# -- planted generators ----------------------------------------------------------

def field_for(p, k):
    names = VAR_NAMES[:k] if k <= len(VAR_NAMES) else tuple(f"t{i + 1}" for i in range(k))
    return Signature(p, names)


def random_poly(rng, sig, deg, support=3):
    monos = _monomials(sig.k, deg)
    t = rng.randint(0, min(support, len(monos)))
    chosen = rng.sample(monos, t)
    return sig.poly({e: rng.randrange(sig.p) for e in chosen})


def random_nonzero(rng, sig, deg, support=3):
    while True:
        f = random_poly(rng, sig, deg, support)
        if f:
            return f


def random_element(rng, sig, deg):
    """A polynomial, or now and then a quotient of two."""
    f = random_poly(rng, sig, deg)
    if f and rng.random() < 0.25:
        f = f / random_nonzero(rng, sig, 1)
    return f


def random_betas(rng, sig, n):
    """Distinct variables (times a unit) when possible, else rank-checked polynomials."""
    p = sig.p
    if n <= sig.k:
        chosen = rng.sample(range(sig.k), n)
        return [sig.const(rng.randrange(1, p)) * sig.gens()[i] for i in chosen]
    for _ in range(50):
        bs = [random_nonzero(rng, sig, 2) for _ in range(n)]
        if all(not b.is_one() for b in bs) and p_independence(bs).independent:
            return bs
    return bs


def random_witness(rng, sig, indices, deg, density=0.6):
    lam = random_poly(rng, sig, deg)
    z = {}
    for d in indices:
        if rng.random() < density:
            z[d] = random_nonzero(rng, sig, deg)
    return ASWitness(lam, z)


def _witt_with_first(rng, sig, m, first, deg):
    rest = [random_element(rng, sig, deg) for _ in range(m - 1)]
    return WittVector([first] + rest, sig)


def gen_t3(p, m, n, k, seed, deg=2):
    """A symbol w (x) b_1..b_n with a planted witness for its residue."""
    if m < 2:
        raise ValueError("m must be at least 2")
    rng = random.Random(seed)
    sig = field_for(p, k)
    betas = random_betas(rng, sig, n)
    idx = [d for d in exponent_indices(p, n) if any(d)]
    wit = random_witness(rng, sig, idx, deg)
    alpha = as_value(betas, wit)
    return Symbol(_witt_with_first(rng, sig, m, alpha, deg), tuple(betas)), wit


def gen_t4(p, m, r, k, seed, deg=1):
    """Pairs (w_i, b_i) with every induction level planted.

    The first Witt slot is additive, so the contribution of level j to each
    lower tau_l is known in advance: it is sum over tails of
    -c * i_l * z^p beta^d, with c the inverse of the last exponent mod p^m.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    if k < r - 1:
        raise ValueError("need at least r - 1 variables")
    rng = random.Random(seed)
    sig = field_for(p, k)
    betas = [sig.gens()[i] for i in range(r - 1)]
    if r <= k:
        betas.append(sig.gens()[r - 1])
    else:
        betas.append(monomial(sig.gens(), tuple(rng.randrange(1, p) for _ in range(k))))
    contrib = [sig.zero() for _ in range(r)]
    firsts = [None] * r
    levels = {}
    modulus = p ** m
    for j in range(r, 0, -1):
        bj = betas[:j]
        wit = random_witness(rng, sig, level_indices(p, j), deg)
        levels[j] = wit
        firsts[j - 1] = as_value(bj, wit) - contrib[j - 1]
        for d, z in wit.nonzero().items():
            c = pow(d[-1], -1, modulus)
            u = z.frobenius() * monomial(bj, d)
            for l in range(j - 1):
                if d[l]:
                    contrib[l] = contrib[l] + sig.const(-c * d[l]) * u
    pairs = [(_witt_with_first(rng, sig, m, firsts[i], deg), betas[i]) for i in range(r)]
    return pairs, T4Witness(levels)


def _plant_line(rng, sig, alpha, slots, j, deg):
    """Choose a witness and the slot-j entry s so that alpha (x) slots[j := s] is split.

    The witness has a single z term, at the unit index of slot j, so
    alpha = lambda^2 - lambda + z^2 s and s comes out as a small fraction;
    richer witnesses make the chained gammas grow quickly.
    """
    n = len(slots)
    unit = tuple(int(i == j) for i in range(n))
    while True:
        lam = random_poly(rng, sig, deg)
        z = random_nonzero(rng, sig, deg) if rng.random() < 0.5 else sig.one()
        rem = alpha - lam.frobenius() + lam
        if rem:
            return rem / z.frobenius(), ASWitness(lam, {unit: z})


def gen_t5(m, n, k, seed, deg=1):
    """Two symbols w (x) b and t (x) e over p = 2 plus a chain with n gammas."""
    if m < 2:
        raise ValueError("m must be at least 2")
    rng = random.Random(seed)
    sig = field_for(2, k)
    betas = random_betas(rng, sig, n)
    alpha = random_nonzero(rng, sig, deg)
    omega = _witt_with_first(rng, sig, m, alpha, deg)
    cur = list(betas)
    gammas, wits = [], []
    for t in range(n):
        s, wit = _plant_line(rng, sig, alpha, cur, t, deg)
        cur[t] = cur[t] / s
        gammas.append(cur[t])
        wits.append(wit)
    delta = [None] * n
    for i in range(n - 1, -1, -1):
        line = list(gammas[:i + 1]) + delta[i + 1:]
        s, wit = _plant_line(rng, sig, alpha, line, i, deg)
        delta[i] = gammas[i] / s
        wits.append(wit)
    last = random_witness(rng, sig, [d for d in exponent_indices(2, n) if any(d)], deg, density=0.3)
    tau = _witt_with_first(rng, sig, m, alpha - as_value(delta, last), deg)
    wits.append(last)
    s1 = Symbol(omega, tuple(betas))
    s2 = Symbol(tau, tuple(delta))
    return s1, s2, ChainWitness(gammas, wits)
