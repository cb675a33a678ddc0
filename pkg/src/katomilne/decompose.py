"""Constructive symbol-length reductions with certificates.

Every decomposition returns symbols over W_{m-1} together with a certificate
that the input equals the sum of their lifts (first Witt slot 0) in the
length-m group.  Inputs are never trusted: witnesses are re-checked, and the
certificate can be re-verified independently of this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidWitness, PDependent, ProviderFailure
from .pdep import exponent_indices, monomial, p_independence
from .rewriting import Derivation, _rewrite_first_slot
from .symbol import Symbol, SymbolSum, Term, check_as_witness, residue, unlift
from .witt import WittVector


# -- witness containers and providers -----------------------------------------

@dataclass
class T4Witness:
    """Per-level witnesses, keyed by level j (1-based); missing levels are searched."""

    levels: dict = field(default_factory=dict)

    def get(self, j):
        return self.levels.get(j)


@dataclass
class ChainWitness:
    """Telescoping data: gammas (n-1 or n of them) and one witness per line."""

    gammas: list
    line_witnesses: list


def level_indices(p, j):
    """Exponent indices allowed at an induction level: last entry at least 1."""
    return [d for d in exponent_indices(p, j) if d[-1] >= 1]


def valid_level_witness(alpha, betas, wit):
    if any(v and d[-1] == 0 for d, v in wit.z.items()):
        return False
    return check_as_witness(alpha, betas, wit)


class PlantedProvider:
    def __init__(self, witness):
        self.witness = witness if isinstance(witness, T4Witness) else T4Witness(dict(witness))

    def __call__(self, level, alpha, betas):
        wit = self.witness.get(level)
        if wit is not None and valid_level_witness(alpha, betas, wit):
            return wit
        return None


class SearchProvider:
    def __init__(self, bounds):
        self.bounds = bounds
        self.calls = 0

    def __call__(self, level, alpha, betas):
        from .oracle import search_as_witness

        self.calls += 1
        p = alpha.sig.p
        return search_as_witness(alpha, betas, self.bounds, indices=level_indices(p, level))


class ChainProvider:
    """Ask each provider in turn; the first valid witness wins."""

    def __init__(self, *providers):
        self.providers = providers

    def __call__(self, level, alpha, betas):
        for prov in self.providers:
            wit = prov(level, alpha, betas)
            if wit is not None and valid_level_witness(alpha, betas, wit):
                return wit
        return None


def fail_provider(level, alpha, betas):
    return None


# -- shared building blocks ----------------------------------------------------

def _split_head(d, i, wit, betas):
    """Split the term at i into a head with zero first slot plus one term per tail.

    The term becomes H (x) R at i (dropped when H is zero), and the terms
    [z^p beta^d] (x) R follow it.  Returns the tail list and its start index.
    """
    d.fold_coefficient(i)
    s = d[i].sym
    sig, m = s.sig, s.m
    lam = wit.lam
    lam_p = lam.frobenius()
    use_lam = lam_p != lam
    tails = []
    for dd in sorted(wit.nonzero(), key=lambda e: (sum(e), e)):
        z = wit.z[dd]
        tails.append((dd, z, z.frobenius() * monomial(betas, dd)))
    head = s.w
    new = []
    if use_lam:
        head = head - WittVector.embed(lam_p, m) + WittVector.embed(lam, m)
        new += [Term(1, s.with_witt(WittVector.embed(lam_p, m))),
                Term(-1, s.with_witt(WittVector.embed(lam, m)))]
    for _, _, u in tails:
        head = head - WittVector.embed(u, m)
        new.append(Term(1, s.with_witt(WittVector.embed(u, m))))
    if head[0]:
        raise InvalidWitness("witness does not clear the first Witt slot")
    if new:
        d.apply("M1", (i,), [Term(1, s.with_witt(head))] + new)
    if use_lam:
        d.apply("M4", (i + 1,), [Term(1, s.with_witt(WittVector.embed(lam, m)))])
        d.apply("M1", (i + 1, i + 2), [Term(1, s.with_witt(WittVector.zero(sig, m)))])
        d.kill("M7", i + 1)
    if head.is_zero():
        d.kill("M7", i)
        return tails, i
    return tails, i + 1


def _peel(d, pos, z, extras=()):
    """c*[u] (x) (s, R') with u = z^p * s * prod(extras)  ->  (-c)*(0, u, 0..) (x) (z, R').

    The extras come out as terms (-c)*[u] (x) (e, R') right after ``pos``.
    """
    c, s = d[pos]
    p, m = s.sig.p, s.m
    u = s.w[0]
    rest = s.slots[1:]
    d.insert("M5", pos + 1, Term(-c, s.with_slots((u,) + rest)))
    d.split_slot(pos + 1, 0, [s.slots[0], z.frobenius()] + list(extras))
    d.apply("M1", (pos, pos + 1), [Term(1, s.with_witt(WittVector.zero(s.sig, m)))])
    d.kill("M7", pos)
    # p copies of z (x) R' merge to -c*p*[u], which is -c*(0, u^p, 0..)
    zsym = s.with_slots((z,) + rest)
    d.split_slot(pos, 0, [z] * p)
    d.apply("M1", range(pos, pos + p), [Term(-c * p, zsym)])
    w = s.w.scalar(-c * p)
    d.apply("M6", (pos,), [Term(1, zsym.with_witt(w))])
    v = WittVector.embed(u, m, 1).scalar(-c)
    assert v.frobenius() == w
    d.apply("M4", (pos,), [Term(1, zsym.with_witt(v))])
    return len(extras)


def _t3_block(d, i, wit, betas):
    modulus = d[i].sym.sig.p ** d[i].sym.m
    tails, pos = _split_head(d, i, wit, betas)
    for dd, z, _ in tails:
        _rewrite_first_slot(d, pos, dd, modulus)
        _peel(d, pos, z)
        pos += 1
    return pos


def _outputs(d):
    out = []
    for i in range(len(d)):
        d.fold_coefficient(i)
    for c, s in d.terms:
        out.append(unlift(s))
    return out


def _check_m(sym):
    if sym.m < 2:
        raise ValueError("decomposition needs Witt length at least 2")


# -- one symbol with trivial residue ---------------------------------

def theorem3(sym, wit, check=False):
    """Decompose w (x) b_1..b_n whose residue is trivial via ``wit``.

    Returns ``(outputs, certificate)``: at most p^n symbols over W_{m-1}.
    """
    _check_m(sym)
    alpha, betas = residue(sym)
    if not check_as_witness(alpha, betas, wit):
        raise InvalidWitness("witness does not verify against the residue")
    d = Derivation(sym, check)
    _t3_block(d, 0, wit, betas)
    return _outputs(d), d.certificate()


def theorem3_bound(p, n):
    return p ** n


# -- sums of r symbols in degree 2 -----------------------------------

def theorem4(pairs, provider, check=False):
    """Decompose sum_i w_i (x) b_i by peeling the last level each round.

    ``pairs`` is a list of (WittVector, FieldElem).  ``provider(level, alpha,
    betas)`` returns a level witness or None.  Returns ``(outputs, certificate)``
    with at most p^r + r - 1 outputs.
    """
    if not pairs:
        raise ValueError("need at least one pair")
    syms = [Symbol(w, (b,)) for w, b in pairs]
    for s in syms:
        _check_m(s)
    r = len(syms)
    betas = [s.slots[0] for s in syms]
    if r >= 2:
        dep = p_independence(betas[:r - 1])
        if not dep.independent:
            raise PDependent("beta_1..beta_{r-1} are p-dependent", dep.witness)
    modulus = syms[0].sig.p ** syms[0].m
    d = Derivation(SymbolSum.of(*syms), check)
    for j in range(r, 0, -1):
        i = j - 1
        d.fold_coefficient(i)
        alpha = d[i].sym.w[0]
        bj = betas[:j]
        wit = provider(j, alpha, bj)
        if wit is None or not valid_level_witness(alpha, bj, wit):
            raise ProviderFailure(f"no witness at level {j} for alpha = {alpha}", j, alpha)
        if j == 1:
            _t3_block(d, 0, wit, bj)
            break
        tails, pos = _split_head(d, i, wit, bj)
        for dd, z, _ in tails:
            k = dd[-1]
            if k != 1:
                c = pow(k, -1, modulus)
                t = d[pos]
                d.replace_by_expansion(pos, Term(c, t.sym.with_slots((bj[-1] ** k,))), [[bj[-1]] * k])
            owners = [l for l in range(j - 1) for _ in range(dd[l])]
            _peel(d, pos, z, [bj[l] for l in owners])
            # fold each (-c)[u] (x) beta_l contribution into tau_l
            while owners:
                l = owners[0]
                idx = [pos + 1 + q for q, o in enumerate(owners) if o == l]
                d.merge_witt((l, *idx), at=l)
                owners = [o for o in owners if o != l]
            pos += 1
    return _outputs(d), d.certificate()


def theorem4_bound(p, r):
    return p ** r + r - 1


# -- difference of two symbols, p = 2 --------------------------------

def _chain_symbols(s1, s2, gammas):
    """Telescoping chain plus, for each line but the last, the slot it changes."""
    n = s1.n
    g = len(gammas)
    beta, delta = s1.slots, s2.slots
    tuples = [beta] + [tuple(gammas[:i]) + beta[i:] for i in range(1, g + 1)]
    changed = list(range(g))
    top = min(g, n - 1)
    tuples += [tuple(gammas[:i]) + delta[i:] for i in range(top, -1, -1)]
    changed += [n - 1] + list(range(top - 1, -1, -1)) if g == n else list(range(top, -1, -1))
    return [Symbol(s1.w, t) for t in tuples] + [s2], changed


def _telescope(d, s1, s2, gammas):
    chain, changed = _chain_symbols(s1, s2, gammas)
    lines = len(chain) - 1
    for t in range(1, lines):
        d.insert_zero_pair(2 * t - 1, -1, chain[t].w, chain[t].slots)
    for t in range(lines):
        if t == lines - 1:
            d.merge_witt((t, t + 1))
        else:
            d.combine_differing(t, changed[t])
    return lines


def _check_pair(s1, s2, gammas):
    if s1.sig != s2.sig or s1.m != s2.m or s1.n != s2.n:
        raise ValueError("the two symbols differ in field, Witt length or slot count")
    if s1.sig.p != 2:
        raise ValueError("telescoping decomposition is for p = 2")
    if len(gammas) not in (s1.n - 1, s1.n):
        raise ValueError(f"expected {s1.n - 1} or {s1.n} gammas, got {len(gammas)}")
    if any(not g for g in gammas):
        raise ValueError("gammas must be nonzero")


def telescope(s1, s2, gammas, check=False):
    """Rewrite s1 - s2 as one symbol per telescoping line.

    With n gammas there are 2n+1 lines; with n-1 gammas the middle line is
    absent and there are 2n.
    """
    _check_pair(s1, s2, gammas)
    d = Derivation(SymbolSum([Term(1, s1), Term(-1, s2)]), check)
    _telescope(d, s1, s2, list(gammas))
    return [t.sym for t in d.terms], d.certificate()


def theorem5(s1, s2, chain, check=False):
    """Decompose s1 - s2 (p = 2) into at most (2n+1) 2^n symbols over W_{m-1}."""
    _check_pair(s1, s2, chain.gammas)
    _check_m(s1)
    d = Derivation(SymbolSum([Term(1, s1), Term(-1, s2)]), check)
    lines = _telescope(d, s1, s2, list(chain.gammas))
    if len(chain.line_witnesses) != lines:
        raise ValueError(f"expected {lines} line witnesses, got {len(chain.line_witnesses)}")
    for t in range(lines):
        alpha, betas = residue(d[t].sym)
        if not check_as_witness(alpha, betas, chain.line_witnesses[t]):
            err = InvalidWitness(f"line {t} witness does not verify")
            err.line = t
            raise err
    for t in range(lines - 1, -1, -1):
        _t3_block(d, t, chain.line_witnesses[t], d[t].sym.slots)
    return _outputs(d), d.certificate()


def theorem5_bound(n):
    return (2 * n + 1) * 2 ** n
