"""Command-line front end.

Exit codes: 0 success or verdict derived, 1 property violated or negative
answer, 2 undecided at the bound (or unstable window), 3 input error.

Spaces are written as ``proj:m,n``, ``grass:a,b,m,n``, ``cy:n[,lam]``,
``quot:SPEC``, ``trunc:k:SPEC``, ``SPEC*SPEC`` or ``ws:NAME`` for an atlas
saved in the workspace.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import atlas as at
from . import cohomology as co
from . import criteria as cr
from . import homological as ho
from . import linebundle as lb
from . import oracle as orc
from .superalgebra import Ring, dumps, parse_poly

SUCCESS, NEGATIVE, UNDECIDED, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(INPUT_ERROR)


# ---------------------------------------------------------------- workspace

class Workspace:
    """Directory of canonical JSON documents, one object per file."""

    def __init__(self, root: str):
        self.root = Path(root)

    def path(self, name: str) -> Path:
        if not name or "/" in name or name.startswith("."):
            raise InputError(f"bad object name {name!r}")
        return self.root / f"{name}.json"

    def save(self, name: str, kind: str, doc) -> str:
        text = dumps({"kind": kind, "doc": doc})
        self.root.mkdir(parents=True, exist_ok=True)
        self.path(name).write_text(text + "\n", encoding="utf-8")
        return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]

    def load(self, name: str, kind: str | None = None):
        p = self.path(name)
        if not p.exists():
            raise InputError(f"{p}: no such object")
        try:
            obj = json.loads(p.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise InputError(f"{p}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        if kind is not None and obj.get("kind") != kind:
            raise InputError(f"{p}: expected a {kind}, found {obj.get('kind')!r}")
        return obj["doc"]

    def facts(self) -> cr.FactsDB:
        p = self.path("facts")
        if not p.exists():
            return cr.FactsDB()
        try:
            return cr.FactsDB.from_doc(self.load("facts", "facts"))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{p}: malformed facts document ({exc})") from None

    def save_facts(self, db: cr.FactsDB) -> str:
        return self.save("facts", "facts", db.to_doc())


# ---------------------------------------------------------------- spaces

def _ints(text: str, count: tuple, what: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",")] if text else []
    except ValueError:
        raise InputError(f"{what}: expected integers, got {text!r}") from None
    if len(vals) not in count:
        raise InputError(f"{what}: expected {' or '.join(map(str, count))} integers")
    return vals


class Space:
    """An atlas together with its odd symmetry field, when it has one."""

    def __init__(self, X: at.Atlas, v: at.GlobalField | None, parts=None, full: at.Atlas | None = None):
        self.X, self.v, self.parts = X, v, parts
        self.full = X if full is None else full   # the finer torus weights, when different

    def require_field(self) -> at.GlobalField:
        if self.v is None:
            raise InputError(f"{self.X.name} carries no odd symmetry field")
        return self.v


def _with_field(X: at.Atlas) -> Space:
    if X.row_par and X.row_par.count(0) == X.row_par.count(1) and X.meta.get("kind") in ("proj", "grass"):
        Y = at.pi_weights(X)
        return Space(Y, at.pi_action_field(Y), full=X)
    return Space(X, None)


def load_space(spec: str, ws: Workspace, overlaps: bool = True) -> Space:
    if "*" in spec:
        left, right = spec.split("*", 1)
        A, B = load_space(left, ws, overlaps), load_space(right, ws, overlaps)
        P = at.product_atlas(A.X, B.X)
        v = at.product_field(P, A.v, B.v) if A.v is not None and B.v is not None else None
        return Space(P, v, (A, B))
    kind, _, rest = spec.partition(":")
    if kind == "proj":
        m, n = _ints(rest, (2,), "proj")
        return _with_field(at.build_projective_superspace(m, n))
    if kind == "grass":
        a, b, m, n = _ints(rest, (4,), "grass")
        return _with_field(at.build_supergrassmannian(a, b, m, n, overlaps=overlaps, certify=overlaps))
    if kind == "cy":
        vals = _ints(rest, (1, 2), "cy")
        return Space(at.build_CY_truncation(*vals), None)
    if kind == "quot":
        base = load_space(rest, ws, overlaps)
        return Space(at.quotient_atlas(base.X, base.require_field()), None)
    if kind == "trunc":
        k, _, inner = rest.partition(":")
        (k,) = _ints(k, (1,), "trunc")
        return Space(at.truncate_atlas(load_space(inner, ws, overlaps).X, k), None)
    if kind == "ws":
        doc = ws.load(rest, "atlas")
        try:
            X = at.Atlas.from_doc(doc)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"ws:{rest}: malformed atlas ({exc})") from None
        return _with_field(X)
    raise InputError(f"unknown space {spec!r}")


def _cocycle(S: Space, k: str) -> lb.LineCocycle:
    if S.parts is not None:
        n1, n2 = _ints(k, (2,), "--k")
        A, B = S.parts
        return lb.external_product(S.X, lb.standard_cocycles(A.X, n1), lb.standard_cocycles(B.X, n2))
    (n,) = _ints(k, (1,), "--k")
    return lb.standard_cocycles(S.X, n)


# ---------------------------------------------------------------- output

class Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.doc: dict = {}
        self.lines: list[str] = []

    def line(self, text: str = ""):
        self.lines.append(text)

    def put(self, key, value):
        self.doc[key] = value

    def flush(self):
        if self.as_json:
            print(json.dumps(self.doc, sort_keys=True, ensure_ascii=False, indent=1))
        else:
            for ln in self.lines:
                print(ln)


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------- commands

def cmd_ring(a, ws, out):
    ring = Ring(tuple(filter(None, a.even.split(","))), tuple(filter(None, a.odd.split(","))),
                frozenset(filter(None, a.invertible.split(","))), a.nil)
    out.put("ring", ring.to_doc())
    out.line(f"ring: even {', '.join(ring.even) or '-'} | odd {', '.join(ring.odd) or '-'}"
             + (f"; inverted {', '.join(sorted(ring.invertible))}" if ring.invertible else "")
             + (f"; nil {ring.nil}" if ring.nil is not None else ""))
    for text in a.eval or ():
        f = parse_poly(ring, text)
        out.line(f"{text} = {f}")
        out.put(text, f.to_doc())
    if a.save:
        out.line(f"saved {a.save} ({ws.save(a.save, 'ring', ring.to_doc())})")
    return SUCCESS


def cmd_field_check(a, ws, out):
    S = load_space(a.space, ws)
    v = S.require_field()
    bad = []
    for i, f in enumerate(v.fields):
        if not ho.is_homological(f):
            bad.append(f"chart {i}: v^2 != 0")
    bad += v.incompatibilities()
    out.put("failures", bad)
    if bad:
        out.line("FAIL")
        for b in bad:
            out.line("  " + b)
        return NEGATIVE
    out.line(f"ok: odd, squares to zero on {len(v.fields)} charts, compatible on {len(S.X.pairs())} overlaps")
    return SUCCESS


def cmd_freeness(a, ws, out):
    S = load_space(a.space, ws, overlaps=not a.charts_only)
    r = at.global_freeness(S.X, S.require_field(), a.D)
    out.put("space", S.X.name)
    if isinstance(r, at.GlobalFree):
        out.put("result", "free")
        out.put("witnesses", [w.to_doc() for w in r.witnesses])
        out.line(f"{S.X.name}: free")
        for i, w in enumerate(r.witnesses):
            out.line(f"  chart {S.X.charts[i].label}: theta = {w}")
        return SUCCESS
    if isinstance(r, at.GlobalNotFree):
        out.put("result", "not free")
        out.put("chart", r.chart)
        out.put("point", {g: _frac(x) for g, x in sorted(r.point.items())})
        pt = ", ".join(f"{g} = {_frac(x)}" for g, x in sorted(r.point.items()))
        out.line(f"{S.X.name}: not free")
        out.line(f"  chart {S.X.charts[r.chart].label}: the image of v vanishes at the fixed point {pt or 'origin'}")
        return NEGATIVE
    out.put("result", "undecided")
    out.put("bound", r.bound)
    out.line(f"{S.X.name}: undecided at degree bound D = {r.bound} (chart {r.chart})")
    return UNDECIDED


def _print_atlas(X: at.Atlas, out: Out, full: bool = True):
    out.put("atlas", X.to_doc())
    out.line(f"{X.name}: {len(X.charts)} charts, dims {' '.join(f'{e}|{o}' for e, o in X.reduced_dims())}")
    if not full:
        return
    for c in X.charts:
        out.line(f"  chart {c.label}: even {', '.join(c.ring.even)} | odd {', '.join(c.ring.odd)}")
    for (i, j) in X.pairs():
        h = X.phi[i, j]
        out.line(f"  ({X.charts[i].label} <- {X.charts[j].label})")
        for g in h.source.gens:
            out.line(f"    {g} -> {h.images[g]}")


def cmd_quotient(a, ws, out):
    S = load_space(a.space, ws)
    Q = at.quotient_atlas(S.X, S.require_field(), a.D)
    bad = at.quotient_invariance_report(Q)
    _print_atlas(Q, out, not a.brief)
    out.put("invariance_failures", bad)
    out.line("certified; invariants and torsor round trips exact" if not bad else "FAIL: " + "; ".join(bad))
    if a.save:
        out.line(f"saved {a.save} ({ws.save(a.save, 'atlas', Q.to_doc())})")
    return NEGATIVE if bad else SUCCESS


def cmd_atlas(a, ws, out):
    if a.what == "iso":
        X = load_space(a.args[0], ws).X
        Y = load_space(a.args[1], ws).X
        r = at.iso_check(X, Y, a.D)
        if isinstance(r, at.Iso):
            out.put("result", "iso")
            out.put("order", list(r.order))
            out.line(f"isomorphic: chart order {list(r.order)}")
            for i, m in enumerate(r.maps):
                for g, f in sorted(m.items()):
                    out.line(f"  chart {i}: {g} -> {f}")
            return SUCCESS
        out.put("result", "none")
        out.put("bound", r.bound)
        out.line(f"no isomorphism up to D = {r.bound}: {r.reason}")
        return UNDECIDED
    spec = {"proj": "proj:{}", "grass": "grass:{}", "cy": "cy:{}", "quotient": "quot:{}", "truncate": "trunc:{}"}[a.what]
    if a.what == "truncate":
        if len(a.args) != 2:
            raise InputError("atlas truncate SPACE K")
        spec = f"trunc:{a.args[1]}:{a.args[0]}"
    elif a.what in ("proj", "grass", "cy"):
        spec = spec.format(",".join(a.args))
    else:
        spec = spec.format(a.args[0] if a.args else "")
    X = load_space(spec, ws, overlaps=not a.charts_only).full
    if a.what in ("proj", "grass", "cy", "truncate"):
        bad = X.check()
        if bad:
            out.line("FAIL: " + "; ".join(bad[:5]))
            return NEGATIVE
    _print_atlas(X, out, not a.brief)
    out.line("certified")
    if a.save:
        out.line(f"saved {a.save} ({ws.save(a.save, 'atlas', X.to_doc())})")
    return SUCCESS


def cmd_bundle(a, ws, out):
    S = load_space(a.space, ws)
    L = _cocycle(S, a.k)
    out.put("cocycle", L.to_doc())
    out.line(f"{L.name} on {S.X.name}")
    for (i, j), g in sorted(L.g.items()):
        out.line(f"  g[{S.X.charts[i].label},{S.X.charts[j].label}] = {g}")
    bad = L.failures()
    out.line("cocycle condition holds" if not bad else "FAIL: " + "; ".join(bad[:3]))
    if a.save:
        out.line(f"saved {a.save} ({ws.save(a.save, 'cocycle', L.to_doc())})")
    return NEGATIVE if bad else SUCCESS


def _connection(a, ws, out):
    S = load_space(a.space, ws)
    L = _cocycle(S, a.k)
    nabla = lb.connection_solve(L, S.require_field(), a.D)
    return S, L, nabla


def cmd_connection(a, ws, out):
    S, L, nabla = _connection(a, ws, out)
    if not nabla:
        out.put("result", "none")
        out.line(f"no v-connection on {L.name} at bound {nabla.bound}: {nabla.reason}")
        return UNDECIDED
    out.put("connection", nabla.to_doc())
    out.line(f"v-connection on {L.name}")
    for i, p in enumerate(nabla.phi):
        out.line(f"  phi[{S.X.charts[i].label}] = {p}")
    return SUCCESS


def cmd_curvature(a, ws, out):
    S, L, nabla = _connection(a, ws, out)
    if not nabla:
        out.line(f"no v-connection on {L.name} at bound {nabla.bound}")
        return UNDECIDED
    c = lb.curvature(nabla)
    out.put("values", [x.to_doc() for x in c.values])
    out.put("constant", None if c.constant is None else _frac(c.constant))
    if c.constant is not None:
        out.line(f"curvature of {L.name}: constant {_frac(c.constant)}")
    else:
        for i, x in enumerate(c.values):
            out.line(f"  c[{S.X.charts[i].label}] = {x}")
    return SUCCESS


def cmd_descend(a, ws, out):
    S = load_space(a.space, ws)
    v = S.require_field()
    L = _cocycle(S, a.k)
    if S.parts is not None:
        r = lb.flat_connection(L, v, a.D)
        if isinstance(r, lb.VConnection):
            out.put("result", "flat")
            out.line(f"{L.name} admits a flat v-connection")
            return SUCCESS
    else:
        r = lb.flat_descend(L, v, at.quotient_atlas(S.X, v), a.D)
        if isinstance(r, lb.LineCocycle):
            out.put("result", "descends")
            out.put("cocycle", r.to_doc())
            out.line(f"{L.name} descends")
            for (i, j), g in sorted(r.g.items()):
                out.line(f"  g[{i},{j}] = {g}")
            return SUCCESS
    if isinstance(r, lb.Obstructed):
        out.put("result", "obstructed")
        out.put("curvature", _frac(r.curvature))
        out.line(f"{L.name} does not descend: every v-connection has curvature {_frac(r.curvature)}")
        return NEGATIVE
    out.put("result", "undecided")
    out.line(f"undecided at bound {r.bound}: {r.reason}")
    return UNDECIDED


def cmd_gq1(a, ws, out):
    ring = Ring(tuple(filter(None, a.even.split(","))), tuple(filter(None, a.odd.split(","))),
                frozenset(filter(None, a.invertible.split(","))))
    vals = [parse_poly(ring, t) for t in a.elements]
    if len(vals) not in (2, 4):
        raise InputError("gq1 takes A0 A1 [B0 B1]")
    try:
        x = lb.gq1(vals[0], vals[1])
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out.line(f"x = ({x.a0}) + ({x.a1})·eps")
    out.line(f"projection = {lb.gq1_project(x)}")
    try:
        xi = lb.gq1_inverse(x)
        out.line(f"x^-1 = ({xi.a0}) + ({xi.a1})·eps")
    except ValueError:
        out.line("x is not invertible")
    if len(vals) == 4:
        try:
            y = lb.gq1(vals[2], vals[3])
        except ValueError as exc:
            raise InputError(str(exc)) from None
        z = lb.gq1_mul(x, y)
        out.line(f"x*y = ({z.a0}) + ({z.a1})·eps")
        ok = lb.gq1_matrix(z) == lb.gq1_matrix(x) @ lb.gq1_matrix(y)
        out.line(f"matrix of x*y equals product of matrices: {ok}")
        out.put("product", [z.a0.to_doc(), z.a1.to_doc()])
        return SUCCESS if ok else NEGATIVE
    return SUCCESS


def cmd_bott(a, ws, out):
    t = co.bott_table(co.Omega(a.n, a.j, a.m))
    out.put("table", t.to_doc())
    out.line(f"H^q(P^{a.n}, Omega^{a.j}({a.m})):")
    for q in range(a.n + 1):
        out.line(f"  q={q}: {co.bott_dim(a.n, a.j, a.m, q)}")
    return SUCCESS


def cmd_grpieces(a, ws, out):
    pieces = co.gr_pieces(a.n, a.k)
    out.put("pieces", [str(b) for b in pieces])
    out.line(f"N^{a.k}/N^{a.k + 1} on G(1|1,{a.n}|{a.n}):")
    for b in pieces:
        t = co.symbol_table(b)
        out.line(f"  {b}   h0={t.get(0)} h1={t.get(1)}")
    return SUCCESS


def cmd_h1report(a, ws, out):
    twist = _ints(a.twist, (2,), "--twist")
    rep = co.h1_vanishing_report(a.n, twist)
    out.put("h1", {("+" if p == 0 else "-"): d for p, d in rep.h1_total.items()})
    out.put("vanishes", rep.vanishes)
    for ln in rep.render().splitlines():
        out.line(ln)
    return SUCCESS if rep.vanishes else NEGATIVE


def cmd_cech(a, ws, out):
    S = load_space(a.space, ws)
    L = v = None
    sheaf = a.sheaf
    if sheaf.startswith("twist:"):
        L = _cocycle(S, sheaf.split(":", 1)[1])
        sheaf = "twist"
    elif sheaf == "ker":
        v = S.require_field()
    elif sheaf != "O":
        raise InputError(f"unknown sheaf {a.sheaf!r} (O, ker, twist:K)")
    X = S.X
    if sheaf != "ker" and not at.weights_separate(X) and at.weights_separate(S.full):
        X = S.full
        if L is not None:
            L = lb.LineCocycle(X, L.g, name=L.name)
    t = co.cech_cohomology(X, sheaf, a.window, L=L, v=v)
    out.put("table", t.to_doc())
    out.put("window", a.window)
    for ln in t.render().splitlines():
        out.line(ln)
    if not t.fully_stable:
        out.line(f"unstable at window radius {a.window}")
        return UNDECIDED
    return SUCCESS


def cmd_facts(a, ws, out):
    db = ws.facts()
    if a.action == "add":
        if not a.space or not a.predicate:
            raise InputError("facts add needs --space and --predicate")
        if a.check:
            f = cr.computed(a.space, a.predicate, a.check, other=a.other)
            ok, detail = cr.recompute(f)
            if not ok:
                out.line(f"check {a.check} failed: {detail}")
                return NEGATIVE
        elif a.cite:
            f = cr.asserted(a.space, a.predicate, a.cite, other=a.other)
        else:
            raise InputError("facts add needs --cite or --check")
        db.add_fact(f)
        out.line(f"added {f.render()}")
    elif a.action == "close":
        before = len(db)
        db.apply_rules()
        out.line(f"closed: {before} -> {len(db)} facts")
    else:
        for f in db.sorted_facts():
            out.line(f.render())
    out.put("facts", db.to_doc())
    if a.action in ("add", "close"):
        ws.save_facts(db)
    return SUCCESS


_NEGATION = {p: q for a, b in cr.NEGATIONS for p, q in ((a, b), (b, a))}


def cmd_verdict(a, ws, out):
    db = ws.facts().apply_rules()
    v = cr.verdict(db, a.space, a.claim)
    if v:
        out.put("trace", [f.to_doc() for f in v.steps])
        out.put("replayed", cr.replay(v))
        for ln in v.render().splitlines():
            out.line(ln)
        out.line(f"rules: {', '.join(v.rules_used) or 'none (leaf fact)'}; replay: {'ok' if cr.replay(v) else 'FAILED'}")
        return SUCCESS
    neg = _NEGATION.get(a.claim)
    if neg and cr.verdict(db, a.space, neg):
        out.put("result", "negated")
        out.line(f"{a.claim}({a.space}) is refuted:")
        for ln in cr.verdict(db, a.space, neg).render().splitlines():
            out.line("  " + ln)
        return NEGATIVE
    out.put("result", "undetermined")
    out.line(v.render())
    return UNDECIDED


def cmd_catalog(a, ws, out):
    if a.action == "load":
        db = cr.load_catalog()
        h = ws.save_facts(db)
        out.line(f"loaded {len(db)} facts ({h})")
        return SUCCESS
    if a.action == "list":
        for e in cr.catalog():
            out.line(f"{e.claim}({e.space})" + ("  [stretch]" if e.stretch else ""))
        return SUCCESS
    results = cr.run_catalog(stretch=a.stretch)
    for r in results:
        out.line(r.render())
        out.line()
    bad = cr.hygiene()
    for b in bad:
        out.line("hygiene: " + b)
    ran = [r for r in results if not r.skipped]
    passed = sum(r.ok for r in ran)
    skipped = len(results) - len(ran)
    out.line(f"{passed}/{len(ran)} entries pass" + (f", {skipped} stretch entries skipped" if skipped else ""))
    out.put("passed", passed)
    out.put("total", len(ran))
    out.put("skipped", skipped)
    return SUCCESS if passed == len(ran) and not bad else NEGATIVE


def cmd_oracle(a, ws, out):
    q, args = a.query, a.args
    try:
        nums = [int(x) for x in args] if q != "witness" else []
    except ValueError:
        raise InputError("oracle arguments must be integers") from None
    if q == "h0" and len(nums) == 2:
        rep = orc.OracleReport(f"h0(P^{nums[0]}, O({nums[1]}))", "monomial count", orc.monomial_h0(*nums))
    elif q == "p1" and len(nums) == 1:
        rep = orc.OracleReport(f"(h0, h1)(P^1, O({nums[0]}))", "exhaustive linear solve", orc.cech_p1(nums[0]))
    elif q == "bott" and len(nums) == 4:
        rep = orc.bott_oracle(*nums)
    elif q == "witness" and len(args) in (2, 3):
        S = load_space(args[0], ws)
        i = int(args[2]) if len(args) == 3 else 0
        f = S.require_field().fields[i]
        sol = orc.exhaustive_witness(f.images, f.ring, int(args[1]))
        val = None if sol.empty else str(sol.particular)
        rep = orc.OracleReport(f"v(theta) = 1 on chart {i} of {S.X.name}", "exhaustive linear solve",
                               {"particular": val, "kernel_dim": len(sol.kernel)})
    else:
        raise InputError(f"unknown oracle query {q} {' '.join(args)}")
    out.put("query", rep.query)
    out.put("method", rep.method)
    out.put("value", rep.value if not isinstance(rep.value, tuple) else list(rep.value))
    out.put("seed", rep.seed)
    out.line(f"{rep.query} = {rep.value}  [{rep.method}, seed {rep.seed}]")
    return SUCCESS


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="superquot", description="A^{0|1}-quotients, Pi-projectivity and 1|1-embeddability.")
    p.add_argument("--workspace", default=".superquot", help="directory for saved objects (default .superquot)")
    p.add_argument("--json", action="store_true", help="print a structured document instead of text")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def space_cmd(name, fn, helptext, k=False, save=False):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("space_pos", nargs="?", metavar="SPACE", help="space spec, e.g. proj:2,3 or grass:1,0,2,2")
        s.add_argument("--space", help="same as the positional SPACE")
        s.add_argument("-D", type=int, default=3, help="degree bound (default 3)")
        if k:
            s.add_argument("--k", default="1", help="twist: n, or n1,n2 on products (default 1)")
        if save:
            s.add_argument("--save", metavar="NAME")
        s.set_defaults(fn=fn)
        return s

    s = sub.add_parser("ring", help="declare a superring and normalize expressions")
    s.add_argument("--even", default="")
    s.add_argument("--odd", default="")
    s.add_argument("--invertible", default="")
    s.add_argument("--nil", type=int)
    s.add_argument("--eval", action="append", metavar="EXPR")
    s.add_argument("--save", metavar="NAME")
    s.set_defaults(fn=cmd_ring)

    space_cmd("field-check", cmd_field_check, "check the odd symmetry field is homological and glues")
    s = space_cmd("freeness", cmd_freeness, "decide freeness of the odd symmetry action")
    s.add_argument("--charts-only", action="store_true", help="skip overlaps (large supergrassmannians)")
    s = space_cmd("quotient", cmd_quotient, "build and certify the quotient atlas", save=True)
    s.add_argument("--brief", action="store_true")

    s = sub.add_parser("atlas", help="build atlases: proj, grass, quotient, truncate, iso, cy")
    s.add_argument("what", choices=["proj", "grass", "quotient", "truncate", "iso", "cy"])
    s.add_argument("args", nargs="*")
    s.add_argument("-D", type=int, default=3)
    s.add_argument("--brief", action="store_true")
    s.add_argument("--charts-only", action="store_true")
    s.add_argument("--save", metavar="NAME")
    s.set_defaults(fn=cmd_atlas)

    space_cmd("bundle", cmd_bundle, "standard line bundle cocycle", k=True, save=True)
    space_cmd("connection", cmd_connection, "solve for a v-connection", k=True)
    space_cmd("curvature", cmd_curvature, "curvature of the v-connection", k=True)
    space_cmd("descend", cmd_descend, "descend a line bundle along the quotient", k=True)

    s = sub.add_parser("gq1", help="arithmetic in GQ(1)")
    s.add_argument("elements", nargs="+", metavar="POLY")
    s.add_argument("--even", default="")
    s.add_argument("--odd", default="")
    s.add_argument("--invertible", default="")
    s.set_defaults(fn=cmd_gq1)

    s = sub.add_parser("bott", help="H^q(P^n, Omega^j(m))")
    for name in ("n", "j", "m"):
        s.add_argument(name, type=int)
    s.set_defaults(fn=cmd_bott)
    s = sub.add_parser("grpieces", help="graded pieces of the structure sheaf of G(1|1,n|n)")
    s.add_argument("n", type=int)
    s.add_argument("k", type=int)
    s.set_defaults(fn=cmd_grpieces)
    s = sub.add_parser("h1report", help="H^1 of every graded piece of G(1|1,n|n)")
    s.add_argument("n", type=int)
    s.add_argument("--twist", default="0,0", help="O(a) x O(b) on the reduced space, e.g. --twist=-1,1")
    s.set_defaults(fn=cmd_h1report)
    s = sub.add_parser("cech", help="windowed Cech cohomology")
    s.add_argument("space")
    s.add_argument("sheaf", help="O, ker or twist:K")
    s.add_argument("window", type=int, nargs="?", default=6, help="window radius (default 6)")
    s.set_defaults(fn=cmd_cech)

    s = sub.add_parser("facts", help="edit the facts database")
    s.add_argument("action", choices=["add", "close", "show"])
    s.add_argument("--space")
    s.add_argument("--predicate", choices=cr.PREDICATES)
    s.add_argument("--cite")
    s.add_argument("--check", choices=sorted(cr.CHECKS))
    s.add_argument("--other")
    s.set_defaults(fn=cmd_facts)
    s = sub.add_parser("verdict", help="derive a claim with its proof trace")
    s.add_argument("space")
    s.add_argument("claim", choices=cr.PREDICATES)
    s.set_defaults(fn=cmd_verdict)
    s = sub.add_parser("catalog", help="load or run the regression catalog")
    s.add_argument("action", choices=["load", "run", "list"])
    s.add_argument("--stretch", action="store_true")
    s.set_defaults(fn=cmd_catalog)
    s = sub.add_parser("oracle", help="brute-force verifiers: h0 n m | p1 m | bott n j m q | witness SPACE D [CHART]")
    s.add_argument("query", choices=["h0", "p1", "bott", "witness"])
    s.add_argument("args", nargs="*")
    s.set_defaults(fn=cmd_oracle)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else INPUT_ERROR
    if hasattr(a, "space_pos"):
        a.space = a.space or a.space_pos
        if not a.space:
            print(f"superquot {a.cmd}: error: a space is required", file=sys.stderr)
            return INPUT_ERROR
    out = Out(a.json)
    ws = Workspace(a.workspace)
    try:
        code = a.fn(a, ws, out)
    except (InputError, cr.InconsistentFacts, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except at.GluingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NEGATIVE
    out.flush()
    return code


def main() -> None:
    sys.exit(run())
