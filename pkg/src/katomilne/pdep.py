"""p-independence over F^p and the universal form built from a dependence.

F = GF(p)(t) is free over F^p on the monomials t^r with 0 <= r_i < p, so a
relation sum_d x_d^p * beta^d = 0 is linear algebra over F after taking
p-th roots of the F^p-coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InvalidWitness


def exponent_indices(p, n):
    """All d in {0..p-1}^n in grlex order (so the zero index comes first)."""
    return sorted(itertools.product(range(p), repeat=n), key=lambda d: (sum(d), d))


def monomial(betas, d):
    sig = betas[0].sig
    out = sig.one()
    for b, e in zip(betas, d):
        if e:
            out = out * b ** e
    return out


@dataclass
class Dependence:
    independent: bool
    witness: dict = field(default_factory=dict)


def _nullspace_vector(cols):
    """A nonzero x with sum_j x_j * cols[j] = 0, or None.

    ``cols`` is a list of sparse column vectors ``{row: FieldElem}``.
    """
    pivots = {}  # row -> reduced column (dict) with a 1 at that row
    for j, col in enumerate(cols):
        v = dict(col)
        combo = {j: 1}
        for r, (pcol, pcombo) in pivots.items():
            c = v.get(r)
            if c:
                for rr, x in pcol.items():
                    y = v.get(rr, 0) - c * x
                    if y:
                        v[rr] = y
                    else:
                        v.pop(rr, None)
                for jj, x in pcombo.items():
                    y = combo.get(jj, 0) - c * x
                    if y:
                        combo[jj] = y
                    else:
                        combo.pop(jj, None)
        v = {r: x for r, x in v.items() if x}
        if not v:
            return combo
        r0 = min(v)
        inv = v[r0].inverse()
        v = {r: x * inv for r, x in v.items()}
        combo = {jj: x * inv for jj, x in combo.items()}
        # keep earlier pivots reduced against the new row
        for r, (pcol, pcombo) in list(pivots.items()):
            c = pcol.get(r0)
            if c:
                for rr, x in v.items():
                    y = pcol.get(rr, 0) - c * x
                    if y:
                        pcol[rr] = y
                    else:
                        pcol.pop(rr, None)
                for jj, x in combo.items():
                    y = pcombo.get(jj, 0) - c * x
                    if y:
                        pcombo[jj] = y
                    else:
                        pcombo.pop(jj, None)
        pivots[r0] = (v, combo)
    return None


def p_independence(betas):
    """Decide p-independence of ``betas``; on dependence return x_d with sum beta^d x_d^p = 0."""
    if not betas:
        return Dependence(True)
    if any(not b for b in betas):
        raise ValueError("p-independence is only defined for nonzero elements")
    p = betas[0].sig.p
    idx = exponent_indices(p, len(betas))
    cols = []
    for d in idx:
        coords = monomial(betas, d).fp_coordinates()
        cols.append({r: c.pth_root() for r, c in coords.items()})
    combo = _nullspace_vector(cols)
    if combo is None:
        return Dependence(True)
    sig = betas[0].sig
    return Dependence(False, {idx[j]: sig(x) for j, x in combo.items() if x})


def dependence_residual(betas, witness):
    sig = betas[0].sig
    total = sig.zero()
    for d, x in witness.items():
        total = total + monomial(betas, d) * x.frobenius()
    return total


def is_dependence_witness(betas, witness):
    return any(witness.values()) and not dependence_residual(betas, witness)


def universal_representation(betas, witness, gamma):
    """Return y_d (d != 0) with sum_{d != 0} beta^d y_d^p = gamma^p.

    ``witness`` must satisfy sum_d beta^d x_d^p = 0 with some x_d nonzero.
    """
    if not is_dependence_witness(betas, witness):
        raise InvalidWitness("not a p-dependence witness")
    p = betas[0].sig.p
    n = len(betas)
    dstar = min((d for d, x in witness.items() if x), key=lambda d: (sum(d), d))
    # divide by beta^dstar, folding beta_i^(-p) into the p-th power coefficient
    shifted = {}
    for d, x in witness.items():
        if not x:
            continue
        e = []
        for i in range(n):
            c = d[i] - dstar[i]
            if c < 0:
                c += p
                x = x / betas[i]
            e.append(c)
        shifted[tuple(e)] = x
    x0 = shifted[(0,) * n]
    if not gamma:
        return {}
    factor = -gamma / x0
    return {d: factor * x for d, x in shifted.items() if any(d) and x}
