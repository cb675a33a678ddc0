"""Command-line front end.

Exit codes: 0 ok, 1 verification or bound failure, 2 parse/usage error,
3 invalid witness (including dependent slots and provider failure),
4 search cap exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from .certificate import verify
from .decompose import (ChainProvider, PlantedProvider, SearchProvider, T4Witness,
                        theorem3, theorem3_bound, theorem4, theorem4_bound, theorem5, theorem5_bound)
from .errors import InvalidWitness, PDependent, ProviderFailure, SearchCapExceeded
from .field import ParseError, SignatureMismatch
from .oracle import SearchBounds, candidates, gen_t3, gen_t4, gen_t5, search_as_witness
from .pdep import exponent_indices, p_independence
from .symbol import Symbol, SymbolSum
from .textio import _Scanner, dumps, parse, parse_header, render_witness

OK, FAIL, PARSE, WITNESS, CAP = 0, 1, 2, 3, 4
CAPS = {"p": 5, "m": 4, "n": 3, "r": 4, "k": 3}


class UsageError(Exception):
    pass


def report(**items):
    for k, v in items.items():
        if isinstance(v, bool):
            v = "true" if v else "false"
        print(f"{k}={v}")


def write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    with os.fdopen(fd, "w") as f:
        f.write(text)
    os.replace(tmp, path)


def read_doc(path, kind=None, expect=None):
    with open(path) as f:
        text = f.read()
    doc = parse(text, expect)
    if kind is not None and doc.kind not in (kind if isinstance(kind, tuple) else (kind,)):
        raise ParseError(f"{path}: expected a {kind} document, found {doc.kind}", 2, 1)
    return doc


def check_caps(args, names):
    if getattr(args, "no_caps", False):
        return
    for name in names:
        v = getattr(args, name, None)
        if v is not None and v > CAPS[name]:
            raise UsageError(f"--{name}={v} exceeds the desk-scale cap {CAPS[name]} (use --no-caps)")


def _header(text):
    text = text.strip()
    return parse_header(text if text.startswith("field") else "field " + text)


# -- subcommands --------------------------------------------------------------------

def cmd_wittcalc(args):
    check_caps(args, ("p", "m"))
    names = tuple(v.strip() for v in args.vars.split(","))
    sig = parse_header(f"field p={args.p} vars={','.join(names)}")
    sc = _Scanner(sig, args.expr)
    w = sc.witt_expr()
    if not sc.at_end():
        sc.error("unexpected trailing text")
    if w.m != args.m:
        sc.error(f"expression has Witt length {w.m}, expected {args.m}", 0)
    report(result=w, m=w.m)
    return OK


def cmd_pdep(args):
    sig = _header(args.field)
    elems = [sig.parse(e) for e in args.elems.replace(";", ",").split(",") if e.strip()]
    if any(not e for e in elems):
        raise UsageError("p-independence is defined for nonzero elements")
    dep = p_independence(elems)
    report(elements=len(elems), independent=dep.independent)
    for d in sorted(dep.witness, key=lambda e: (sum(e), e)):
        print(f"x {' '.join(map(str, d))} = {dep.witness[d]}")
    return OK


def _gen_one(args, seed, out, wit_path):
    if args.theorem == 3:
        sym, wit = gen_t3(args.p, args.m, args.n, args.k, seed, args.deg)
        sig = sym.sig
        write_atomic(out, dumps(sig, "sum", SymbolSum.of(sym)))
        write_atomic(wit_path, dumps(sig, "witness", wit))
    elif args.theorem == 4:
        pairs, wit = gen_t4(args.p, args.m, args.r, args.k, seed, args.deg)
        sig = pairs[0][0].sig
        if args.top_only:
            wit = T4Witness({args.r: wit.levels[args.r]})
        body = SymbolSum.of(*[Symbol(w, (b,)) for w, b in pairs])
        write_atomic(out, dumps(sig, "sum", body))
        write_atomic(wit_path, dumps(sig, "t4witness", wit))
    else:
        if args.p != 2:
            raise UsageError("--theorem 5 instances are for p = 2")
        s1, s2, chain = gen_t5(args.m, args.n, args.k, seed, args.deg)
        sig = s1.sig
        write_atomic(out, dumps(sig, "sum", SymbolSum([(1, s1), (-1, s2)])))
        write_atomic(wit_path, dumps(sig, "chain", chain))


def cmd_gen(args):
    if args.theorem == 4 and args.r is None:
        raise UsageError("--r is required with --theorem 4")
    if args.theorem in (3, 5) and args.n is None:
        raise UsageError("--n is required for theorems 3 and 5")
    check_caps(args, ("p", "m", "n", "r", "k"))
    if args.batch is None:
        _gen_one(args, args.seed, args.out, args.witness)
        report(theorem=args.theorem, seed=args.seed, instance=args.out, witness=args.witness)
        return OK
    for i in range(args.batch):
        seed = args.seed + i
        out = _suffixed(args.out, seed)
        wit = _suffixed(args.witness, seed)
        _gen_one(args, seed, out, wit)
        report(seed=seed, instance=out, witness=wit)
    report(theorem=args.theorem, batch=args.batch)
    return OK


def _suffixed(path, seed):
    stem, ext = os.path.splitext(path)
    return f"{stem}-{seed}{ext}"


def _provider(args, witness):
    planted = PlantedProvider(witness)
    if args.provider == "planted":
        return planted
    search = SearchProvider(SearchBounds(args.deg, args.support))
    return search if args.provider == "search" else ChainProvider(planted, search)


def cmd_decompose(args):
    doc = read_doc(args.input, "sum")
    sig, body = doc.sig, doc.body
    if args.theorem == 3:
        if len(body) != 1 or body[0].coef != 1:
            raise UsageError("--theorem 3 input must be a single symbol")
        sym = body[0].sym
        wit = read_doc(args.witness, "witness", sig).body
        outs, cert = theorem3(sym, wit)
        params = dict(p=sig.p, m=sym.m, n=sym.n)
        bound = theorem3_bound(sig.p, sym.n)
    elif args.theorem == 4:
        if not len(body) or any(t.coef != 1 or t.sym.n != 1 for t in body):
            raise UsageError("--theorem 4 input must be a sum of single-slot symbols")
        wdoc = read_doc(args.witness, ("t4witness", "witness"), sig)
        wit = wdoc.body if wdoc.kind == "t4witness" else T4Witness({len(body): wdoc.body})
        pairs = [(t.sym.w, t.sym.slots[0]) for t in body]
        outs, cert = theorem4(pairs, _provider(args, wit))
        params = dict(p=sig.p, m=body[0].sym.m, r=len(body))
        bound = theorem4_bound(sig.p, len(body))
    else:
        if len(body) != 2 or body[0].coef != 1 or body[1].coef != -1:
            raise UsageError("--theorem 5 input must be 'S1 - S2'")
        chain = read_doc(args.witness, "chain", sig).body
        s1, s2 = body[0].sym, body[1].sym
        outs, cert = theorem5(s1, s2, chain)
        params = dict(p=sig.p, m=s1.m, n=s1.n)
        bound = theorem5_bound(s1.n)
    verdict = verify(cert)
    write_atomic(args.out, dumps(sig, "sum", SymbolSum.of(*outs)))
    write_atomic(args.cert, dumps(sig, "certificate", cert))
    ok = len(outs) <= bound
    report(theorem=args.theorem, **params, count=len(outs), bound=bound,
           bound_check="PASS" if ok else "FAIL", steps=len(cert.steps),
           certificate="valid" if verdict else "invalid",
           summary=f"count {len(outs)} <= {bound} {'PASS' if ok else 'FAIL'}")
    return OK if ok and verdict else FAIL


def cmd_verify(args):
    cert = read_doc(args.cert, "certificate").body
    v = verify(cert)
    if v:
        report(valid=True, steps=len(cert.steps), terms=len(cert.end))
        return OK
    report(valid=False, step=v.step, reason=v.reason)
    return FAIL


def cmd_search(args):
    sig = _header(args.field)
    alpha = sig.parse(args.alpha)
    betas = [sig.parse(e) for e in args.betas.replace(";", ",").split(",") if e.strip()]
    bounds = SearchBounds(args.deg, args.support)
    per = len(candidates(sig, bounds))
    unknowns = len(exponent_indices(sig.p, len(betas)))
    report(candidates=per, space=per ** unknowns)
    wit = search_as_witness(alpha, betas, bounds, cap=args.cap)
    if wit is None:
        report(found=False)
        print("no witness within bounds")
        return OK
    report(found=True)
    for line in render_witness(wit):
        print(line)
    return OK


# -- argument parsing ------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="katomilne", description="Witt vector symbols: arithmetic, decomposition, certificates.")
    sub = ap.add_subparsers(dest="command", required=True)

    w = sub.add_parser("wittcalc", help="evaluate a Witt vector expression")
    w.add_argument("--p", type=int, required=True)
    w.add_argument("--m", type=int, required=True)
    w.add_argument("--vars", default="x,y,z")
    w.add_argument("expr")
    w.add_argument("--no-caps", action="store_true")
    w.set_defaults(func=cmd_wittcalc)

    d = sub.add_parser("pdep", help="decide p-independence")
    d.add_argument("--field", required=True, help="e.g. 'p=2 vars=x,y'")
    d.add_argument("--elems", required=True, help="comma-separated field elements")
    d.set_defaults(func=cmd_pdep)

    g = sub.add_parser("gen", help="write a planted instance and its witness")
    g.add_argument("--theorem", type=int, choices=(3, 4, 5), required=True)
    g.add_argument("--p", type=int, default=2)
    g.add_argument("--m", type=int, default=2)
    g.add_argument("--n", type=int)
    g.add_argument("--r", type=int)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--deg", type=int, default=1)
    g.add_argument("--out", required=True)
    g.add_argument("--witness", required=True)
    g.add_argument("--top-only", action="store_true", help="--theorem 4: keep only the top-level witness")
    g.add_argument("--batch", type=int, help="write N instances with seeds seed..seed+N-1")
    g.add_argument("--no-caps", action="store_true")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("decompose", help="decompose and write outputs plus certificate")
    c.add_argument("--theorem", type=int, choices=(3, 4, 5), required=True)
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--witness", required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--cert", required=True)
    c.add_argument("--provider", choices=("planted", "search", "chain"), default="chain")
    c.add_argument("--deg", type=int, default=1)
    c.add_argument("--support", type=int, default=3)
    c.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="check a certificate")
    v.add_argument("--cert", required=True)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="bounded Artin-Schreier witness search")
    s.add_argument("--field", required=True)
    s.add_argument("--alpha", required=True)
    s.add_argument("--betas", required=True)
    s.add_argument("--deg", type=int, default=1)
    s.add_argument("--support", type=int, default=3)
    s.add_argument("--cap", type=int, help="override the enumeration cap (default: $WITT_SYMBOL_CAP or 10^7)")
    s.set_defaults(func=cmd_search)
    return ap


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SignatureMismatch, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return PARSE
    except PDependent as e:
        print(f"error: {e}", file=sys.stderr)
        report(independent=False)
        for d in sorted(e.witness, key=lambda x: (sum(x), x)):
            print(f"x {' '.join(map(str, d))} = {e.witness[d]}")
        return WITNESS
    except ProviderFailure as e:
        print(f"error: {e}", file=sys.stderr)
        report(level=e.level, alpha=e.alpha)
        return WITNESS
    except InvalidWitness as e:
        print(f"error: {e}", file=sys.stderr)
        return WITNESS
    except SearchCapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return CAP
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return PARSE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
