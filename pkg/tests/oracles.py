"""Independent reference computations used to freeze expected values.

Nothing here imports the package's arithmetic; everything goes through sympy
or plain integer/Fraction arithmetic.
"""

from fractions import Fraction

import sympy as sp


def sympy_gcd(a, b, p, k):
    """Monic gcd of two sparse dict polynomials over GF(p), via sympy."""
    gens = sp.symbols(f"t0:{k}")
    pa = sp.Poly.from_dict(a or {(0,) * k: 0}, *gens, modulus=p)
    pb = sp.Poly.from_dict(b or {(0,) * k: 0}, *gens, modulus=p)
    g = pa.gcd(pb)
    if g.is_zero:
        return {}
    out = {}
    for e, c in g.as_dict().items():
        c = int(c) % p
        if c:
            out[e] = c
    # normalise to the grlex-monic convention
    lead = max(out, key=lambda e: (sum(e), e))
    inv = pow(out[lead], -1, p)
    return {e: c * inv % p for e, c in out.items()}


def same_fraction(n1, d1, n2, d2, p, k):
    """n1/d1 == n2/d2 over GF(p)(t) by cross multiplication in sympy."""
    gens = sp.symbols(f"t0:{k}")

    def P(d):
        return sp.Poly.from_dict(d or {(0,) * k: 0}, *gens, modulus=p)

    return (P(n1) * P(d2) - P(n2) * P(d1)).is_zero


def witt_sum_tables(p, m):
    """S_i over Z from the ghost equations, solved symbolically by sympy, reduced mod p."""
    X = sp.symbols(f"X0:{m}")
    Y = sp.symbols(f"Y0:{m}")
    S = []
    for i in range(m):
        wx = sum(p ** j * X[j] ** (p ** (i - j)) for j in range(i + 1))
        wy = sum(p ** j * Y[j] ** (p ** (i - j)) for j in range(i + 1))
        rest = sum(p ** j * S[j] ** (p ** (i - j)) for j in range(i))
        si = sp.expand((wx + wy - rest) / p ** i)
        S.append(si)
    out = []
    for si in S:
        poly = sp.Poly(si, *X, *Y)
        d = {}
        for e, c in poly.as_dict().items():
            assert c == int(c), "ghost recursion produced a non-integer coefficient"
            if int(c) % p:
                d[e] = int(c) % p
        out.append(d)
    return out


def ghost(p, vec):
    """Ghost components of an integer vector."""
    return [sum(p ** j * vec[j] ** (p ** (i - j)) for j in range(i + 1)) for i in range(len(vec))]


def witt_add_integers(p, a, b):
    """Witt sum of integer vectors by inverting ghost components exactly (Fractions)."""
    ga, gb = ghost(p, a), ghost(p, b)
    s = []
    for i in range(len(a)):
        target = ga[i] + gb[i]
        rest = sum(Fraction(p) ** j * Fraction(s[j]) ** (p ** (i - j)) for j in range(i))
        v = (Fraction(target) - rest) / p ** i
        assert v.denominator == 1
        s.append(int(v))
    return s
