"""Sparse multivariate polynomials over GF(p).

A polynomial is a plain ``dict`` mapping exponent tuples (all of the same
length ``k``) to coefficients in ``1..p-1``.  Zero coefficients are never
stored, so the zero polynomial is ``{}``.  Functions here never mutate their
arguments; callers treat the dicts as frozen.

Monomials are compared in graded lexicographic order (total degree first,
then lexicographic on the exponent tuple).
"""

from __future__ import annotations


class InexactDivision(ArithmeticError):
    pass


def grlex_key(e):
    return (sum(e), e)


def const(c, p, k):
    c %= p
    return {(0,) * k: c} if c else {}


def is_const(a):
    return not a or (len(a) == 1 and not any(next(iter(a))))


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    r = dict(a)
    for e, c in b.items():
        v = (r.get(e, 0) + c) % p
        if v:
            r[e] = v
        else:
            r.pop(e, None)
    return r


def neg(a, p):
    return {e: p - c for e, c in a.items()}


def sub(a, b, p):
    r = dict(a)
    for e, c in b.items():
        v = (r.get(e, 0) - c) % p
        if v:
            r[e] = v
        else:
            r.pop(e, None)
    return r


def scale(a, c, p):
    c %= p
    if not c:
        return {}
    if c == 1:
        return a
    return {e: (v * c) % p for e, v in a.items()}


def mul(a, b, p):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    r = {}
    get = r.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            r[e] = (get(e, 0) + ca * cb) % p
    return {e: c for e, c in r.items() if c}


def mul_monomial(a, mono, c, p):
    c %= p
    if not c:
        return {}
    return {tuple(x + y for x, y in zip(e, mono)): (v * c) % p for e, v in a.items()}


def power(a, n, p):
    if n < 0:
        raise ValueError("negative exponent for a polynomial")
    if not a:
        if n == 0:
            raise ValueError("0**0 is left to the caller")
        return {}
    k = len(next(iter(a)))
    if len(a) == 1:
        (e, c), = a.items()
        return {tuple(x * n for x in e): pow(c, n, p)}
    result = const(1, p, k)
    base = a
    # Frobenius shortcut: (sum c t^e)^p = sum c t^(pe)
    while n and n % p == 0:
        base = frobenius(base, p)
        n //= p
    while n:
        if n & 1:
            result = mul(result, base, p)
        n >>= 1
        if n:
            base = mul(base, base, p)
    return result


def frobenius(a, p):
    return {tuple(x * p for x in e): c for e, c in a.items()}


def pth_root(a, p):
    """Return the p-th root of ``a`` or ``None`` if some exponent is not divisible by p."""
    r = {}
    for e, c in a.items():
        if any(x % p for x in e):
            return None
        r[tuple(x // p for x in e)] = c
    return r


def leading(a):
    e = max(a, key=grlex_key)
    return e, a[e]


def monic(a, p):
    if not a:
        return a
    _, c = leading(a)
    if c == 1:
        return a
    return scale(a, pow(c, -1, p), p)


def degree(a):
    return max((sum(e) for e in a), default=-1)


def divide_exact(a, b, p):
    """Return ``a / b``; raise :class:`InexactDivision` if ``b`` does not divide ``a``."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    if len(b) == 1:
        (eb, cb), = b.items()
        inv = pow(cb, -1, p)
        r = {}
        for e, c in a.items():
            q = tuple(x - y for x, y in zip(e, eb))
            if min(q) < 0:
                raise InexactDivision("monomial does not divide")
            r[q] = (c * inv) % p
        return r
    eb, cb = leading(b)
    inv = pow(cb, -1, p)
    rem = dict(a)
    quo = {}
    while rem:
        er, cr = leading(rem)
        q = tuple(x - y for x, y in zip(er, eb))
        if min(q) < 0:
            raise InexactDivision("leading term not divisible")
        cq = (cr * inv) % p
        quo[q] = cq
        for e, c in b.items():
            t = tuple(x + y for x, y in zip(e, q))
            v = (rem.get(t, 0) - cq * c) % p
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return quo


def variables(a):
    k = len(next(iter(a))) if a else 0
    return {i for i in range(k) if any(e[i] for e in a)}


def monomial_content(a):
    """Componentwise minimum exponent over all terms."""
    it = iter(a)
    m = list(next(it))
    for e in it:
        for i, x in enumerate(e):
            if x < m[i]:
                m[i] = x
    return tuple(m)


def _coeffs_in(a, v):
    """Split ``a`` as sum_j c_j * t_v^j; returns {j: c_j} with t_v removed from c_j."""
    out = {}
    for e, c in a.items():
        j = e[v]
        f = e[:v] + (0,) + e[v + 1:]
        out.setdefault(j, {})[f] = c
    return out


def _from_coeffs(cs, v):
    r = {}
    for j, c in cs.items():
        for f, x in c.items():
            r[f[:v] + (j,) + f[v + 1:]] = x
    return r


def _prem(a, b, v, p):
    """Pseudo-remainder of a by b as univariate polynomials in t_v."""
    ca, cb = _coeffs_in(a, v), _coeffs_in(b, v)
    db = max(cb)
    lcb = cb[db]
    da = max(ca)
    r = ca
    for _ in range(da - db + 1):
        if not r:
            break
        dr = max(r)
        if dr < db:
            break
        lr = r.pop(dr)
        # r = lcb * r - lr * t^(dr-db) * b
        nr = {j: mul(c, lcb, p) for j, c in r.items()}
        for j, c in cb.items():
            if j == db:
                continue
            t = j + dr - db
            nr[t] = sub(nr.get(t, {}), mul(lr, c, p), p)
        r = {j: c for j, c in nr.items() if c}
    return _from_coeffs(r, v)


def _content_in(a, v, p):
    g = {}
    for c in _coeffs_in(a, v).values():
        g = gcd(g, c, p)
        if is_const(g) and g:
            break
    return g


def gcd(a, b, p):
    """Monic greatest common divisor (grlex leading coefficient 1)."""
    if not a:
        return monic(b, p)
    if not b:
        return monic(a, p)
    k = len(next(iter(a)))
    one = {(0,) * k: 1}
    if is_const(a) or is_const(b):
        return one
    if len(a) == 1 or len(b) == 1:
        ma = monomial_content(a)
        mb = monomial_content(b)
        return {tuple(min(x, y) for x, y in zip(ma, mb)): 1}
    # pull out the monomial gcd first; it keeps the PRS small
    ma, mb = monomial_content(a), monomial_content(b)
    mono = tuple(min(x, y) for x, y in zip(ma, mb))
    if any(ma):
        a = {tuple(x - y for x, y in zip(e, ma)): c for e, c in a.items()}
    if any(mb):
        b = {tuple(x - y for x, y in zip(e, mb)): c for e, c in b.items()}
    va, vb = variables(a), variables(b)
    if not va or not vb:
        return {mono: 1}
    v = max(va | vb)
    if v not in va:
        g = _fold_gcd(a, _coeffs_in(b, v).values(), p)
    elif v not in vb:
        g = _fold_gcd(b, _coeffs_in(a, v).values(), p)
    else:
        conta, contb = _content_in(a, v, p), _content_in(b, v, p)
        g_cont = gcd(conta, contb, p)
        pa, pb = divide_exact(a, conta, p), divide_exact(b, contb, p)
        if max(e[v] for e in pa) < max(e[v] for e in pb):
            pa, pb = pb, pa
        while True:
            r = _prem(pa, pb, v, p)
            if not r:
                g_pp = pb
                break
            if not any(e[v] for e in r):
                g_pp = one
                break
            r = divide_exact(r, _content_in(r, v, p), p)
            pa, pb = pb, r
        if g_pp is not one:
            g_pp = divide_exact(g_pp, _content_in(g_pp, v, p), p)
        g = mul(g_cont, g_pp, p)
    return monic(mul_monomial(g, mono, 1, p), p)


def _fold_gcd(a, cs, p):
    g = a
    for c in cs:
        g = gcd(g, c, p)
        if is_const(g):
            break
    return g
