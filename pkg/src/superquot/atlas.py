"""Superschemes as atlases of free chart rings glued by verified transitions.

A chart is a free (Laurent) superring.  The overlap of charts ``i`` and ``j``
is seen from chart ``i`` as its ring with a few even generators inverted, and
the transition ``phi[i, j]`` sends the generators of chart ``j`` into that
overlap ring.  Frame-type atlases (projective superspaces, supergrassmannians)
also remember, per chart, the matrix whose columns span the tautological
subspace; the odd symmetry action is computed from it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Mapping, Sequence

from . import linalg
from .homological import (ChartQuotient, Free, HomologicalField, NotFree, OddDerivation, Undecided,
                          chart_quotient, decompose, freeness)
from .superalgebra import (NotInvertible, Ring, RingHom, RingMismatch, SuperMatrix, SuperPoly, det_even,
                           invert_even, is_invertible, super_inverse)


class GluingError(ValueError):
    pass


def _vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass
class Chart:
    label: str
    ring: Ring
    weights: dict | None = None  # generator -> integer weight vector
    frame: SuperMatrix | None = None
    rows: tuple = ()  # rows of the frame forming the identity block
    coords: dict = field(default_factory=dict)  # generator -> (row, col) in the frame


class Atlas:
    """Charts, overlap inversions and transition homomorphisms.

    ``inv[i, j]`` is the set of chart-``i`` generators inverted on the overlap
    with chart ``j``; ``phi[i, j]`` maps chart ``j`` (localized at
    ``inv[j, i]``) to chart ``i`` localized at ``inv[i, j]``.
    """

    def __init__(self, name: str, charts: Sequence[Chart], inv: Mapping, phi: Mapping,
                 row_par: Sequence[int] = (), meta: Mapping | None = None):
        self.name = name
        self.charts = list(charts)
        self.inv = {k: frozenset(v) for k, v in inv.items()}
        self.phi = dict(phi)
        self.row_par = list(row_par)
        self.meta = dict(meta or {})
        self._homs: dict = {}

    def __len__(self):
        return len(self.charts)

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.charts]

    def ring(self, i: int) -> Ring:
        return self.charts[i].ring

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.phi)

    def has_overlap(self, i: int, j: int) -> bool:
        return i == j or (i, j) in self.phi

    def ring_at(self, i: int, others: Sequence[int]) -> Ring:
        """Chart ``i`` localized to its intersection with the charts ``others``."""
        names = set()
        for k in others:
            if k != i:
                names |= self.inv[i, k]
        return self.ring(i).localized(names)

    def overlap_ring(self, i: int, j: int) -> Ring:
        return self.ring_at(i, [j])

    def hom(self, i: int, j: int, others: Sequence[int] = ()) -> RingHom:
        """``phi[i, j]`` extended to the intersection with the charts ``others``."""
        key = (i, j, tuple(sorted(set(others) - {i, j})))
        h = self._homs.get(key)
        if h is None:
            if i == j:
                r = self.ring_at(i, key[2])
                h = RingHom(r, r, r.gens_dict(), check=False)
            else:
                src = self.ring_at(j, (i,) + key[2])
                tgt = self.ring_at(i, (j,) + key[2])
                base = self.phi[i, j]
                h = RingHom(src, tgt, {g: f.coerce(tgt) for g, f in base.images.items()})
            self._homs[key] = h
        return h

    def triples(self) -> list[tuple[int, int, int]]:
        out = []
        n = len(self)
        for i, j, k in permutations(range(n), 3):
            if (i, j) in self.phi and (j, k) in self.phi and (i, k) in self.phi:
                out.append((i, j, k))
        return out

    # -------------------------------------------------------------- certification
    def check(self, triples: bool = True) -> list[str]:
        """List of gluing failures (empty when the atlas is certified)."""
        bad = []
        for (i, j) in self.pairs():
            if (j, i) not in self.phi:
                bad.append(f"overlap ({i},{j}) has no reverse transition")
                continue
            back = self.hom(j, i)
            fwd = self.hom(i, j)
            for g in self.ring(j).gens:
                if back(fwd(self.ring(j).gen(g))) != self.ring_at(j, [i]).gen(g):
                    bad.append(f"phi[{j},{i}] o phi[{i},{j}] != id on {g}")
        if triples:
            for i, j, k in self.triples():
                if not (i < k):
                    continue
                outer = self.hom(i, j, [k])
                inner = self.hom(j, k, [i])
                direct = self.hom(i, k, [j])
                for g in self.ring(k).gens:
                    x = self.ring(k).gen(g)
                    if outer(inner(x)) != direct(x):
                        bad.append(f"cocycle fails on ({i},{j},{k}) at {g}")
        bad.extend(self.check_weights())
        return bad

    def certify(self, triples: bool = True) -> "Atlas":
        bad = self.check(triples)
        if bad:
            raise GluingError("; ".join(bad[:5]))
        return self

    def check_weights(self) -> list[str]:
        if any(c.weights is None for c in self.charts):
            return []
        bad = []
        for (i, j), h in self.phi.items():
            wi = self.charts[i].weights
            for g, img in h.images.items():
                want = self.charts[j].weights[g]
                for key in img.terms:
                    if monomial_weight(self.ring(i), wi, key) != want:
                        bad.append(f"phi[{i},{j}]({g}) is not homogeneous of weight {want}")
                        break
        return bad

    def reduced_dims(self) -> list[tuple[int, int]]:
        return [(len(c.ring.even), len(c.ring.odd)) for c in self.charts]

    # -------------------------------------------------------------- io
    def to_doc(self) -> dict:
        charts = []
        for c in self.charts:
            d = {"label": c.label, "ring": c.ring.to_doc()}
            if c.weights is not None:
                d["weights"] = {g: list(w) for g, w in c.weights.items()}
            if c.frame is not None:
                d["frame"] = [[x.to_doc() for x in r] for r in c.frame.entries]
                d["frame_cols"] = list(c.frame.col_par)
                d["rows"] = list(c.rows)
            if c.coords:
                d["coords"] = {g: list(rc) for g, rc in c.coords.items()}
            charts.append(d)
        return {
            "kind": "atlas",
            "name": self.name,
            "charts": charts,
            "row_par": list(self.row_par),
            "overlaps": [{"i": i, "j": j, "inv": sorted(self.inv[i, j]), "phi": self.phi[i, j].to_doc()}
                         for (i, j) in self.pairs()],
            "meta": self.meta,
        }

    @classmethod
    def from_doc(cls, doc) -> "Atlas":
        charts = []
        for d in doc["charts"]:
            ring = Ring.from_doc(d["ring"])
            w = {g: tuple(x) for g, x in d["weights"].items()} if "weights" in d else None
            frame = None
            if "frame" in d:
                frame = SuperMatrix([[SuperPoly.from_doc(ring, x) for x in r] for r in d["frame"]],
                                    doc["row_par"], d["frame_cols"], check=False)
            coords = {g: tuple(rc) for g, rc in d.get("coords", {}).items()}
            charts.append(Chart(d["label"], ring, w, frame, tuple(d.get("rows", ())), coords))
        inv, phi = {}, {}
        for o in doc["overlaps"]:
            inv[o["i"], o["j"]] = frozenset(o["inv"])
        for o in doc["overlaps"]:
            i, j = o["i"], o["j"]
            tgt = charts[i].ring.localized(inv[i, j])
            src = charts[j].ring.localized(inv.get((j, i), ()))
            phi[i, j] = RingHom(src, tgt, {g: SuperPoly.from_doc(tgt, t) for g, t in o["phi"].items()})
        return cls(doc["name"], charts, inv, phi, doc.get("row_par", ()), doc.get("meta"))


def monomial_weight(ring: Ring, weights: Mapping[str, tuple], key) -> tuple:
    exps, odd = key
    dim = len(next(iter(weights.values()))) if weights else 0
    w = (0,) * dim
    for g, e in zip(ring.even, exps):
        if e:
            w = tuple(a + e * b for a, b in zip(w, weights[g]))
    for i in odd:
        w = _vec_add(w, weights[ring.odd[i]])
    return w


def poly_weight(f: SuperPoly, weights: Mapping[str, tuple]):
    """The common weight of the terms of ``f``, or None if ``f`` is not homogeneous."""
    ws = {monomial_weight(f.ring, weights, k) for k in f.terms}
    return ws.pop() if len(ws) == 1 else None


# ---------------------------------------------------------------- frame atlases

def _monomial_support(f: SuperPoly) -> set[str] | None:
    """Generators of a unit monomial times a constant, or None if ``f`` is not one."""
    if len(f.terms) != 1:
        return None
    ((exps, odd), _), = f.terms.items()
    if odd:
        return None
    return {g for g, e in zip(f.ring.even, exps) if e}


def _frame_transitions(charts: list[Chart], row_par: list[int], pairs=None):
    """Transitions between frame charts where the change of frame has monomial determinants."""
    inv, phi = {}, {}
    n = len(charts)
    for i, j in (pairs or permutations(range(n), 2)):
        ci, cj = charts[i], charts[j]
        top = ci.frame.rows(list(cj.rows))
        A, B, C, D, _ = top.blocks()
        names: set = set()
        ok = True
        for blk in (A, D):
            if blk:
                s = _monomial_support(det_even(blk, ci.ring).reduced())
                if s is None:
                    ok = False
                    break
                names |= s
        if not ok:
            continue
        names &= set(ci.ring.even)
        tgt = ci.ring.localized(names)
        F = ci.frame.map(lambda x: x.coerce(tgt))
        Tinv = super_inverse(F.rows(list(cj.rows)))
        Fn = F @ Tinv
        images = {g: Fn[r, c] for g, (r, c) in cj.coords.items()}
        inv[i, j] = frozenset(names)
        phi[i, j] = images
    # sources need the reverse inversion sets
    homs = {}
    for (i, j), images in phi.items():
        if (j, i) not in phi:
            continue
        src = charts[j].ring.localized(inv[j, i])
        tgt = charts[i].ring.localized(inv[i, j])
        homs[i, j] = RingHom(src, tgt, images)
    inv = {k: v for k, v in inv.items() if k in homs}
    return inv, homs


def build_projective_superspace(m: int, n: int) -> Atlas:
    """P^{m|n} with charts ``x_i != 0``: even ``u<j> = x_j/x_i``, odd ``e<k> = theta_k/x_i``."""
    if m < 0 or n < 0:
        raise ValueError("dimensions must be nonnegative")
    rows = m + 1 + n
    row_par = [0] * (m + 1) + [1] * n
    dim = m + 1 + n
    unit = lambda r: tuple(1 if s == r else 0 for s in range(dim))
    charts = []
    for i in range(m + 1):
        even = tuple(f"u{j}" for j in range(m + 1) if j != i)
        odd = tuple(f"e{k}" for k in range(n))
        ring = Ring(even, odd)
        col = []
        coords = {}
        for r in range(rows):
            if r == i:
                col.append(ring.one())
            elif r <= m:
                col.append(ring.gen(f"u{r}"))
                coords[f"u{r}"] = (r, 0)
            else:
                col.append(ring.gen(f"e{r - m - 1}"))
                coords[f"e{r - m - 1}"] = (r, 0)
        frame = SuperMatrix([[x] for x in col], row_par, [0])
        weights = {g: _vec_sub(unit(r), unit(i)) for g, (r, _) in coords.items()}
        charts.append(Chart(str(i), ring, weights, frame, (i,), coords))
    inv, phi = _frame_transitions(charts, row_par)
    atlas = Atlas(f"P^{m}|{n}", charts, inv, phi, row_par, {"kind": "proj", "params": [m, n]})
    return atlas.certify()


def grass_coordinate_count(a: int, b: int, m: int, n: int) -> tuple[int, int]:
    return a * (m - a) + b * (n - b), a * (n - b) + b * (m - a)


def build_supergrassmannian(a: int, b: int, m: int, n: int, overlaps: bool = True,
                            certify: bool = True) -> Atlas:
    """G(a|b, m|n) covered by graph charts.

    Rows ``0..m-1`` of ``V`` are even and ``m..m+n-1`` odd.  A chart chooses
    ``a`` even and ``b`` odd rows where the frame is the identity; the other
    entries ``f<r>_<c>`` are the coordinates.  Only overlaps whose change of
    frame has monomial reduced determinants are glued (adjacent charts);
    ``overlaps=False`` skips gluing altogether.
    """
    if not (0 <= a <= m and 0 <= b <= n):
        raise ValueError("need 0 <= a <= m and 0 <= b <= n")
    row_par = [0] * m + [1] * n
    col_par = [0] * a + [1] * b
    dim = m + n
    unit = lambda r: tuple(1 if s == r else 0 for s in range(dim))
    charts = []
    for I in combinations(range(m), a):
        for J in combinations(range(m, m + n), b):
            sel = I + J
            even, odd, coords = [], [], {}
            for r in range(dim):
                if r in sel:
                    continue
                for c in range(a + b):
                    name = f"f{r}_{c}"
                    (odd if (row_par[r] + col_par[c]) % 2 else even).append(name)
                    coords[name] = (r, c)
            ring = Ring(tuple(even), tuple(odd))
            entries = []
            for r in range(dim):
                if r in sel:
                    entries.append([ring.one() if sel[c] == r else ring.zero() for c in range(a + b)])
                else:
                    entries.append([ring.gen(f"f{r}_{c}") for c in range(a + b)])
            frame = SuperMatrix(entries, row_par, col_par)
            weights = {g: _vec_sub(unit(r), unit(sel[c])) for g, (r, c) in coords.items()}
            label = ",".join(map(str, I)) + "|" + ",".join(map(str, J))
            charts.append(Chart(label, ring, weights, frame, sel, coords))
    if overlaps:
        inv, phi = _frame_transitions(charts, row_par)
    else:
        inv, phi = {}, {}
    atlas = Atlas(f"G({a}|{b},{m}|{n})", charts, inv, phi, row_par, {"kind": "grass", "params": [a, b, m, n]})
    return atlas.certify() if certify else atlas


def relabel(X: Atlas, order: Sequence[int]) -> Atlas:
    """The same atlas with charts listed in the given order."""
    pos = {old: new for new, old in enumerate(order)}
    charts = [X.charts[k] for k in order]
    inv = {(pos[i], pos[j]): s for (i, j), s in X.inv.items()}
    phi = {(pos[i], pos[j]): h for (i, j), h in X.phi.items()}
    return Atlas(X.name, charts, inv, phi, X.row_par, X.meta)


def map_weights(X: Atlas, fn) -> Atlas:
    """Copy of ``X`` with every weight vector replaced by ``fn(vector)``."""
    charts = [Chart(c.label, c.ring, None if c.weights is None else {g: tuple(fn(w)) for g, w in c.weights.items()},
                    c.frame, c.rows, c.coords) for c in X.charts]
    return Atlas(X.name, charts, X.inv, X.phi, X.row_par, X.meta)


def pi_weights(X: Atlas) -> Atlas:
    """Weights on an ``n|n`` frame space with odd row ``k`` folded onto even row ``k``.

    The odd symmetry swaps ``x_k`` and ``theta_k``, so only these weights make
    its field homogeneous.
    """
    m = X.row_par.count(0)
    if X.row_par.count(1) != m:
        raise ValueError("Pi weights need as many odd rows as even rows")
    return map_weights(X, lambda w: tuple(w[k] + w[m + k] for k in range(m)))


def product_atlas(X: Atlas, Y: Atlas, prefixes=("a_", "b_")) -> Atlas:
    """``X x Y`` with charts indexed by pairs; generator names get prefixes."""
    pa, pb = prefixes
    charts, index = [], {}
    for i, cx in enumerate(X.charts):
        for k, cy in enumerate(Y.charts):
            ring = Ring(tuple(pa + g for g in cx.ring.even) + tuple(pb + g for g in cy.ring.even),
                        tuple(pa + g for g in cx.ring.odd) + tuple(pb + g for g in cy.ring.odd))
            w = None
            if cx.weights is not None and cy.weights is not None:
                dx = len(next(iter(cx.weights.values()))) if cx.weights else 0
                dy = len(next(iter(cy.weights.values()))) if cy.weights else 0
                w = {pa + g: tuple(v) + (0,) * dy for g, v in cx.weights.items()}
                w.update({pb + g: (0,) * dx + tuple(v) for g, v in cy.weights.items()})
            index[i, k] = len(charts)
            charts.append(Chart(f"{cx.label}x{cy.label}", ring, w))
    inv, phi = {}, {}
    for (i, k), s in index.items():
        for (j, l), t in index.items():
            if s == t or not X.has_overlap(i, j) or not Y.has_overlap(k, l):
                continue
            names = {pa + g for g in X.inv.get((i, j), ())} | {pb + g for g in Y.inv.get((k, l), ())}
            inv[s, t] = frozenset(names)
    for (i, k), s in index.items():
        for (j, l), t in index.items():
            if (s, t) not in inv:
                continue
            tgt = charts[s].ring.localized(inv[s, t])
            src = charts[t].ring.localized(inv[t, s])
            images = {}
            for side, Z, a, b, pre in ((0, X, i, j, pa), (1, Y, k, l, pb)):
                for g in Z.ring(b).gens:
                    img = Z.phi[a, b].images[g] if a != b else Z.ring(a).gen(g)
                    images[pre + g] = embed_factor(img, tgt, pre)
            phi[s, t] = RingHom(src, tgt, images)
    out = Atlas(f"{X.name}x{Y.name}", charts, inv, phi, meta={"kind": "product", "factors": [X.name, Y.name]})
    out.meta["index"] = [[i, k] for (i, k) in sorted(index, key=index.get)]
    return out


def embed_factor(f: SuperPoly, target: Ring, prefix: str) -> SuperPoly:
    """Rename the generators of ``f`` with ``prefix`` and place it in ``target``."""
    src = f.ring
    ev = [target.even.index(prefix + g) for g in src.even]
    od = [target.odd.index(prefix + g) for g in src.odd]
    terms = {}
    for (exps, odd), c in f.terms.items():
        e = [0] * len(target.even)
        for k, x in zip(ev, exps):
            e[k] = x
        # the prefixed odd indices keep their relative order, so no sign appears
        terms[(tuple(e), tuple(od[t] for t in odd))] = c
    return SuperPoly(target, terms)


# ---------------------------------------------------------------- global fields

class GlobalField:
    """One homological field per chart, compatible with the transitions."""

    def __init__(self, atlas: Atlas, fields: Sequence[OddDerivation], check: bool = True):
        self.atlas = atlas
        self.fields = [f if isinstance(f, HomologicalField) else HomologicalField.certify(f) for f in fields]
        self._loc: dict = {}
        if check:
            bad = self.incompatibilities()
            if bad:
                raise GluingError("; ".join(bad[:5]))

    def at(self, i: int, others: Sequence[int] = ()) -> OddDerivation:
        """The field of chart ``i`` on its intersection with ``others``."""
        ring = self.atlas.ring_at(i, others)
        v = self._loc.get((i, ring))
        if v is None:
            v = self.fields[i] if ring == self.fields[i].ring else self.fields[i].localized(ring)
            self._loc[i, ring] = v
        return v

    def incompatibilities(self) -> list[str]:
        bad = []
        X = self.atlas
        for (i, j) in X.pairs():
            h = X.hom(i, j)
            vi = self.at(i, [j])
            for g in X.ring(j).gens:
                lhs = vi(h.images[g])
                rhs = h(self.fields[j].images[g])
                if lhs != rhs:
                    bad.append(f"field not compatible on ({i},{j}) at {g}")
        return bad

    def __add__(self, other: "GlobalField") -> "GlobalField":
        return GlobalField(self.atlas, [a + b for a, b in zip(self.fields, other.fields)])

    def to_doc(self) -> dict:
        return {"kind": "field", "atlas": self.atlas.name, "charts": [f.to_doc() for f in self.fields]}

    @classmethod
    def from_doc(cls, atlas: Atlas, doc) -> "GlobalField":
        return cls(atlas, [HomologicalField.from_doc(d) for d in doc["charts"]])


def standard_pi(row_par: Sequence[int]) -> list[list[Fraction]]:
    """The symmetry ``x_k -> theta_k``, ``theta_k -> -x_k`` as a matrix acting on frames."""
    m = list(row_par).count(0)
    if list(row_par).count(1) != m:
        raise ValueError("odd symmetry needs an n|n space")
    N = len(row_par)
    P = [[Fraction(0)] * N for _ in range(N)]
    for k in range(m):
        P[k][m + k] = Fraction(1)
        P[m + k][k] = Fraction(-1)
    return P


def check_pi(P, row_par) -> None:
    N = len(row_par)
    for r in range(N):
        for c in range(N):
            if P[r][c] and row_par[r] == row_par[c]:
                raise ValueError("p must be odd")
            sq = sum(P[r][k] * P[k][c] for k in range(N))
            if sq != (-1 if r == c else 0):
                raise ValueError("p must square to -id")


def _chart_pi_field(chart: Chart, row_par, P) -> HomologicalField:
    ring = chart.ring
    psi = "psi_"
    while psi in ring.gens:
        psi += "_"
    ext = Ring(ring.even, (psi,) + ring.odd, ring.invertible, ring.nil)
    lift = RingHom(ring, ext, {g: ext.gen(g) for g in ring.gens}, check=False)
    F = chart.frame.map(lift)
    ps = ext.gen(psi)
    N, K = F.shape
    moved = []
    for r in range(N):
        row = []
        for c in range(K):
            s = ext.zero()
            for k in range(N):
                if P[r][k]:
                    s = s + F[k, c].scale(P[r][k])
            row.append(F[r, c] + ps * s)
        moved.append(row)
    Fm = SuperMatrix(moved, F.row_par, F.col_par, check=False)
    Fn = Fm @ super_inverse(Fm.rows(list(chart.rows)))
    images = {}
    for g, (r, c) in chart.coords.items():
        x = Fn[r, c]
        out = {}
        for (exps, odd), coef in x.terms.items():
            if odd and odd[0] == 0:
                out[(exps, tuple(i - 1 for i in odd[1:]))] = coef
        images[g] = SuperPoly(ring, out)
    return HomologicalField(ring, images)


def pi_action_field(X: Atlas, P=None, check: bool = True) -> GlobalField:
    """The field of the odd symmetry ``p`` (default :func:`standard_pi`) on a frame atlas."""
    if any(c.frame is None for c in X.charts):
        raise ValueError("the odd symmetry needs a frame atlas")
    if P is None:
        P = standard_pi(X.row_par)
    P = [[Fraction(x) for x in r] for r in P]
    check_pi(P, X.row_par)
    return GlobalField(X, [_chart_pi_field(c, X.row_par, P) for c in X.charts], check=check)


def pi_witness_hint(chart: Chart, row_par, P=None) -> SuperPoly:
    """Supertrace of ``p12 f``, whose field value is a constant on graph charts of G(a|b, n|n) with a != b."""
    if P is None:
        P = standard_pi(row_par)
    ring = chart.ring
    sel = list(chart.rows)
    rest = [r for r in range(len(row_par)) if r not in sel]
    K = len(sel)
    out = ring.zero()
    for c in range(K):
        s = ring.zero()
        for r in rest:
            coef = Fraction(P[sel[c]][r])
            if coef:
                s = s + chart.frame[r, c].scale(coef)
        out = out + (s if chart.frame.col_par[c] == 0 else -s)
    return out


def product_field(X: Atlas, left: GlobalField | None, right: GlobalField | None,
                  prefixes=("a_", "b_")) -> GlobalField:
    """``v1 + v2`` on a product atlas (either side may be None)."""
    fields = []
    for s, (i, k) in enumerate(X.meta["index"]):
        ring = X.ring(s)
        images = {g: ring.zero() for g in ring.gens}
        for fld, idx, pre in ((left, i, prefixes[0]), (right, k, prefixes[1])):
            if fld is None:
                continue
            for g, img in fld.fields[idx].images.items():
                images[pre + g] = embed_factor(img, ring, pre)
        fields.append(HomologicalField(ring, images))
    return GlobalField(X, fields)


# ---------------------------------------------------------------- freeness

@dataclass
class GlobalFree:
    witnesses: list

    def __bool__(self):
        return True


@dataclass
class GlobalNotFree:
    chart: int
    point: dict

    def __bool__(self):
        return False


@dataclass
class GlobalUndecided:
    chart: int
    bound: int

    def __bool__(self):
        return False


def global_freeness(X: Atlas, v: GlobalField, D: int = 3, P=None):
    """Chart-wise freeness; free iff free on every chart."""
    witnesses = []
    for i, chart in enumerate(X.charts):
        hints = []
        if chart.frame is not None and X.row_par.count(0) == X.row_par.count(1):
            hints.append(pi_witness_hint(chart, X.row_par, P))
        res = freeness(v.fields[i], D, hints)
        if isinstance(res, NotFree):
            return GlobalNotFree(i, res.point)
        if isinstance(res, Undecided):
            return GlobalUndecided(i, D)
        witnesses.append(res.witness)
    return GlobalFree(witnesses)


# ---------------------------------------------------------------- weights

def weight_matrix_solve(ring: Ring, weights: Mapping[str, tuple], target: tuple):
    """The unique even exponent vector of weight ``target``, or None.

    The even weight vectors must be linearly independent, which makes every
    weight space of a chart ring finite dimensional.
    """
    dim = len(target)
    rows = []
    for k in range(dim):
        rows.append({g: weights[g][k] for g in ring.even if weights[g][k]})
    sol = linalg.solve(rows, list(target))
    if sol is None:
        return None
    exps = []
    for g in ring.even:
        x = sol.get(g, Fraction(0))
        if x.denominator != 1 or (x < 0 and g not in ring.invertible):
            return None
        exps.append(int(x))
    return tuple(exps)


def weights_separate(X: Atlas) -> bool:
    """True when every chart has linearly independent even weights, so that
    every weight space of every overlap ring is finite dimensional."""
    for c in X.charts:
        if c.weights is None:
            return False
        rows = [{k: Fraction(x) for k, x in enumerate(c.weights[g]) if x} for g in c.ring.even]
        if linalg.rank(rows) != len(c.ring.even):
            return False
    return True


def monomials_of_weight(ring: Ring, weights: Mapping[str, tuple], target: tuple, parity: int | None = None) -> list:
    """All monomial keys of the given weight (at most one per odd subset)."""
    out = []
    no = len(ring.odd)
    top = no if ring.nil is None else min(no, ring.nil - 1)
    for r in range(top + 1):
        if parity is not None and r % 2 != parity:
            continue
        for odd in combinations(range(no), r):
            w = tuple(target)
            for i in odd:
                w = _vec_sub(w, weights[ring.odd[i]])
            exps = weight_matrix_solve(ring, weights, w)
            if exps is not None:
                out.append((exps, odd))
    return out


# ---------------------------------------------------------------- quotients

class QuotientAtlas(Atlas):
    """Quotient by a free global field, with every chart represented upstairs.

    ``quotients[i]`` is the chart quotient of chart ``i``; ``local[i, j]`` is its
    localization on the overlap with chart ``j``.  ``tilde[i, j]`` records the
    invariant functions ``f + v(f) theta`` of the inverted generators.
    """

    base: Atlas
    field: GlobalField
    quotients: list
    local: dict
    tilde: dict


def quotient_atlas(X: Atlas, v: GlobalField, D: int = 3, witnesses=None, prefix: str = "q_") -> QuotientAtlas:
    if witnesses is None:
        res = global_freeness(X, v, D)
        if not isinstance(res, GlobalFree):
            raise ValueError(f"field is not free at bound {D}: {res}")
        witnesses = res.witnesses
    quotients = [chart_quotient(v.fields[i], witnesses[i], prefix=prefix) for i in range(len(X))]
    local, tilde, inv = {}, {}, {}
    for (i, j) in X.pairs():
        q = quotients[i].localized(sorted(X.inv[i, j]))
        local[i, j] = q
        inv[i, j] = q.ring.invertible
        th = q.theta
        tl = {}
        for f in sorted(X.inv[i, j]):
            g = q.field.ring.gen(f)
            ft = g + q.field(g) * th
            e = q.express(ft)
            if not is_invertible(e):
                raise GluingError(f"{f}~ is not invertible on the quotient overlap ({i},{j})")
            tl[f] = e
        tilde[i, j] = tl
    phi = {}
    for (i, j) in X.pairs():
        h = X.hom(i, j)
        src = local[j, i].ring
        images = {}
        for n in quotients[j].ring.gens:
            up = h(quotients[j].embedding.images[n])
            images[n] = local[i, j].express(up)
        phi[i, j] = RingHom(src, local[i, j].ring, images)
    charts = []
    for i, q in enumerate(quotients):
        w = None
        base_w = X.charts[i].weights
        if base_w is not None:
            w = {}
            for n in q.ring.gens:
                pw = poly_weight(q.embedding.images[n], base_w)
                if pw is None:
                    w = None
                    break
                w[n] = pw
        charts.append(Chart(X.charts[i].label, q.ring, w))
    Q = QuotientAtlas(f"{X.name}/v", charts, inv, phi, meta={"kind": "quotient", "base": X.name})
    Q.base, Q.field, Q.quotients, Q.local, Q.tilde = X, v, quotients, local, tilde
    return Q.certify()


def quotient_invariance_report(Q: QuotientAtlas) -> list[str]:
    """Failures of the upstairs checks: generators invariant and torsor round trips exact."""
    bad = []
    for i, q in enumerate(Q.quotients):
        for n, e in q.embedding.images.items():
            if q.field(e):
                bad.append(f"chart {i}: {n} is not invariant")
        for g in q.field.ring.gens:
            x = q.field.ring.gen(g)
            a, b = decompose(q.field, q.theta, x)
            if a + b * q.theta != x or q.field(a) or q.field(b):
                bad.append(f"chart {i}: decomposition of {g} is not exact")
    return bad


# ---------------------------------------------------------------- truncation

def truncate_atlas(X: Atlas, k: int) -> Atlas:
    """Reduce every chart and transition modulo the ``k``-th power of the odd ideal."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return _reduced_atlas(X)
    charts = []
    for c in X.charts:
        ring = c.ring.truncated(k)
        frame = c.frame.map(lambda x: x.coerce(ring)) if c.frame is not None else None
        charts.append(Chart(c.label, ring, c.weights, frame, c.rows, c.coords))
    phi = {}
    for (i, j), h in X.phi.items():
        tgt = charts[i].ring.localized(X.inv[i, j])
        src = charts[j].ring.localized(X.inv[j, i])
        phi[i, j] = RingHom(src, tgt, {g: f.coerce(tgt) for g, f in h.images.items()})
    meta = dict(X.meta, truncated=min(k, X.meta.get("truncated", k)))
    return Atlas(f"{X.name} mod N^{k}" if "truncated" not in X.meta else X.name, charts, X.inv, phi,
                 X.row_par, meta).certify()


def _reduced_atlas(X: Atlas) -> Atlas:
    """The underlying even scheme: odd generators dropped."""
    def red(r: Ring) -> Ring:
        return Ring(r.even, (), r.invertible)

    charts = [Chart(c.label, red(c.ring), None if c.weights is None else {g: c.weights[g] for g in c.ring.even})
              for c in X.charts]
    phi = {}
    for (i, j), h in X.phi.items():
        tgt = red(h.target)
        phi[i, j] = RingHom(red(h.source), tgt,
                            {g: SuperPoly(tgt, dict(h.images[g].reduced().terms)) for g in h.source.even})
    name = X.name if X.meta.get("truncated") == 1 else f"{X.name}_red"
    return Atlas(name, charts, X.inv, phi, meta=dict(X.meta, truncated=1)).certify()


def build_CY_truncation(n: int, lam=1) -> Atlas:
    """P^n with odd coordinates transforming as ``du``, glued modulo ``N^3`` with the even twist.

    The even transition ``f -> f + lam * c_ij ^ df`` uses the Cech cocycle
    ``c_ij = dlog(x_j / x_i)`` of the first Chern class of ``O(1)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    lam = Fraction(lam)
    unit = lambda r: tuple(1 if s == r else 0 for s in range(n + 1))
    charts = []
    for i in range(n + 1):
        others = [j for j in range(n + 1) if j != i]
        ring = Ring(tuple(f"u{j}" for j in others), tuple(f"e{j}" for j in others), nil=3)
        w = {}
        for j in others:
            w[f"u{j}"] = w[f"e{j}"] = _vec_sub(unit(j), unit(i))
        charts.append(Chart(str(i), ring, w))
    inv, phi = {}, {}
    for i in range(n + 1):
        for j in range(n + 1):
            if i != j:
                inv[i, j] = frozenset({f"u{j}"})
    for i in range(n + 1):
        for j in range(n + 1):
            if i == j:
                continue
            tgt = charts[i].ring.localized(inv[i, j])
            d = OddDerivation(tgt, {**{f"u{k}": tgt.gen(f"e{k}") for k in range(n + 1) if k != i},
                                    **{f"e{k}": tgt.zero() for k in range(n + 1) if k != i}})
            uj = tgt.gen(f"u{j}")
            ujinv = invert_even(uj)
            c = tgt.gen(f"e{j}") * ujinv
            images = {}
            for k in range(n + 1):
                if k == j:
                    continue
                g = ujinv if k == i else tgt.gen(f"u{k}") * ujinv
                dg = d(g)
                images[f"u{k}"] = g + (c * dg).scale(lam)
                images[f"e{k}"] = dg
            src = charts[j].ring.localized(inv[j, i])
            phi[i, j] = RingHom(src, tgt, images)
    return Atlas(f"X(P^{n},c1(O(1)))", charts, inv, phi, meta={"kind": "cy", "params": [n], "lambda": str(lam),
                                                               "truncated": 3}).certify()


# ---------------------------------------------------------------- isomorphisms

@dataclass
class Iso:
    order: list  # chart i of X corresponds to chart order[i] of Y
    maps: list  # per chart: Y generator -> element of the X chart ring

    def __bool__(self):
        return True


@dataclass
class NoneUpTo:
    bound: int
    reason: str = ""

    def __bool__(self):
        return False


def _positional(Xr: Ring, Yr: Ring) -> dict[str, str]:
    return dict(zip(Yr.even + Yr.odd, Xr.even + Xr.odd))


def _alpha_hom(X: Atlas, Y: Atlas, i: int, others, alpha) -> RingHom:
    src = Y.ring_at(i, others)
    tgt = X.ring_at(i, others)
    return RingHom(src, tgt, {g: f.coerce(tgt) for g, f in alpha[i].items()}, check=False)


def _residual(X: Atlas, Y: Atlas, alpha, k: int, pairs=None) -> dict:
    """Odd-order-``k`` part of ``alpha_i o phiY_ij - phiX_ij o alpha_j`` on all generators."""
    out = {}
    for (i, j) in (pairs or X.pairs()):
        ai = _alpha_hom(X, Y, i, [j], alpha)
        aj = _alpha_hom(X, Y, j, [i], alpha)
        hx = X.hom(i, j)
        for g, img in Y.phi[i, j].images.items():
            r = ai(img) - hx(aj(Y.ring_at(j, [i]).gen(g)))
            for key, c in r.odd_order_part(k).terms.items():
                out[(i, j, g, key)] = c
    return out


def _stage_unknowns(X: Atlas, Y: Atlas, k: int, D: int) -> list:
    unknowns = []
    for i in range(len(X)):
        Xr, Yr = X.ring(i), Y.ring(i)
        keys = []
        for odd in combinations(range(len(Xr.odd)), k):
            for deg in range(D + 1):
                for exps in _exps_of_degree(deg, len(Xr.even)):
                    keys.append((exps, odd))
        for g in Yr.gens:
            if (1 if Yr.is_odd_gen(g) else 0) == k % 2:
                for key in keys:
                    unknowns.append((i, g, key))
    return unknowns


def _exps_of_degree(deg: int, n: int):
    if n == 0:
        if deg == 0:
            yield ()
        return
    for e in range(deg + 1):
        for rest in _exps_of_degree(deg - e, n - 1):
            yield (e,) + rest


def _with_update(X, alpha, updates: Mapping) -> list:
    new = [dict(a) for a in alpha]
    for (i, g, key), c in updates.items():
        new[i][g] = new[i][g] + SuperPoly(X.ring(i), {key: Fraction(c)})
    return new


def _linear_system(X, Y, alpha, unknowns, k):
    """Columns of the stage-``k`` residual, which is affine in the unknowns."""
    base = _residual(X, Y, alpha, k)
    cols = []
    for u in unknowns:
        i = u[0]
        pairs = [p for p in X.pairs() if i in p]
        r = _residual(X, Y, _with_update(X, alpha, {u: 1}), k, pairs)
        b = {key: c for key, c in base.items() if key[0] == i or key[1] == i}
        col = {}
        for key in set(r) | set(b):
            d = r.get(key, 0) - b.get(key, 0)
            if d:
                col[key] = d
        cols.append(col)
    return base, cols


def _odd_block_invertible(X: Atlas, Y: Atlas, alpha) -> bool:
    for i in range(len(X)):
        Xr, Yr = X.ring(i), Y.ring(i)
        mat = []
        for g in Yr.odd:
            img = alpha[i][g]
            row = []
            for t in range(len(Xr.odd)):
                coef = {}
                for (exps, odd), c in img.terms.items():
                    if odd == (t,):
                        coef[(exps, ())] = c
                row.append(SuperPoly(Xr, coef))
            mat.append(row)
        if mat and not is_invertible(det_even(mat, Xr)):
            return False
    return True


def _sqrt_fraction(s: Fraction):
    from math import isqrt
    if s <= 0:
        return None
    p, q = s.numerator, s.denominator
    rp, rq = isqrt(p), isqrt(q)
    return Fraction(rp, rq) if rp * rp == p and rq * rq == q else None


def _scale_order_one(X, alpha, t: Fraction):
    out = []
    for i, a in enumerate(alpha):
        new = {}
        for g, f in a.items():
            terms = {k: (c * t if len(k[1]) == 1 else c) for k, c in f.terms.items()}
            new[g] = SuperPoly(X.ring(i), {k: c for k, c in terms.items() if c})
        out.append(new)
    return out


def _iso_for_order(X: Atlas, Y: Atlas, D: int):
    n = len(X)
    for (i, j) in Y.pairs():
        if (i, j) not in X.phi:
            return None, "overlap pattern differs"
    alpha = []
    for i in range(n):
        ren = _positional(X.ring(i), Y.ring(i))
        for j in range(n):
            if (i, j) in Y.inv and {ren[g] for g in Y.inv[i, j]} != set(X.inv[i, j]):
                return None, "overlap localizations differ"
        alpha.append({g: (X.ring(i).zero() if Y.ring(i).is_odd_gen(g) else X.ring(i).gen(ren[g]))
                      for g in Y.ring(i).gens})
    if any(_residual(X, Y, alpha, 0).values()):
        return None, "reduced spaces differ under the positional identification"
    nil = min([r.nil for r in (X.ring(0), Y.ring(0)) if r.nil is not None], default=None)
    top = max(len(X.ring(i).odd) for i in range(n))
    kmax = top if nil is None else min(top, nil - 1)
    for k in range(1, kmax + 1):
        unknowns = _stage_unknowns(X, Y, k, D)
        if k == 1:
            ident = _with_update(X, alpha, {})
            for i in range(n):
                ren = _positional(X.ring(i), Y.ring(i))
                for g in Y.ring(i).odd:
                    ident[i][g] = X.ring(i).gen(ren[g])
            if not any(_residual(X, Y, ident, 1).values()):
                alpha = ident
                continue
            base, cols = _linear_system(X, Y, alpha, unknowns, 1)
            keys = sorted({key for c in cols for key in c}, key=repr)
            rows = linalg.columns_to_rows(cols)
            basis = linalg.nullspace(rows, list(range(len(unknowns))))
            found = None
            for coeffs in _small_combinations(len(basis)):
                vec = {}
                for c, b in zip(coeffs, basis):
                    for idx, x in b.items():
                        vec[idx] = vec.get(idx, 0) + c * x
                cand = _with_update(X, alpha, {unknowns[idx]: x for idx, x in vec.items() if x})
                if _odd_block_invertible(X, Y, cand):
                    found = cand
                    break
            if found is None:
                return None, f"no invertible odd linear part of degree <= {D}"
            alpha = found
            continue
        base, cols = _linear_system(X, Y, alpha, unknowns, k)
        if k == 2:
            zero_odd = _scale_order_one(X, alpha, Fraction(0))
            rx = _residual(X, Y, zero_odd, 2)
            ry = {key: base.get(key, 0) - rx.get(key, 0) for key in set(base) | set(rx)}
            ry = {key: c for key, c in ry.items() if c}
            rows = linalg.columns_to_rows(cols + [ry])
            sidx = len(cols)
            keys = list({key for c in cols + [ry] for key in c} | set(rx))
            rowmap: dict = {}
            for j, col in enumerate(cols + [ry]):
                for key, c in col.items():
                    rowmap.setdefault(key, {})[j] = c
            eqs = [rowmap.get(key, {}) for key in keys]
            rhs = [-rx.get(key, 0) for key in keys]
            sol = linalg.solve(eqs + [{sidx: 1}], rhs + [1])
            if sol is None:
                sol = linalg.solve(eqs, rhs)
                if sol is None:
                    return None, f"no correction at odd order 2 with degree <= {D}"
                s = sol.get(sidx, Fraction(0))
                t = _sqrt_fraction(s)
                if t is None:
                    return None, f"order-2 correction needs the non-square scale {s}"
            else:
                t = Fraction(1)
            alpha = _scale_order_one(X, alpha, t)
            alpha = _with_update(X, alpha, {unknowns[idx]: x for idx, x in sol.items() if idx != sidx and x})
            continue
        keys = list({key for c in cols for key in c} | set(base))
        rowmap = {}
        for j, col in enumerate(cols):
            for key, c in col.items():
                rowmap.setdefault(key, {})[j] = c
        sol = linalg.solve([rowmap.get(key, {}) for key in keys], [-base.get(key, 0) for key in keys])
        if sol is None:
            return None, f"no correction at odd order {k} with degree <= {D}"
        alpha = _with_update(X, alpha, {unknowns[idx]: x for idx, x in sol.items() if x})
    for k in range(0, kmax + 1):
        if any(_residual(X, Y, alpha, k).values()):
            return None, "final verification failed"
    if not _odd_block_invertible(X, Y, alpha):
        return None, "odd linear part not invertible"
    return alpha, ""


def _small_combinations(m: int):
    if m == 0:
        return
    for k in range(m):
        yield tuple(1 if t == k else 0 for t in range(m))
    yield (1,) * m
    for coeffs in product((-1, 0, 1, 2), repeat=min(m, 6)):
        if any(coeffs):
            yield tuple(coeffs) + (0,) * (m - min(m, 6))


def iso_check(X: Atlas, Y: Atlas, D: int = 3):
    """Search for an isomorphism ``X -> Y`` chart by chart, order by order in the odd ideal.

    The reduced part of every chart map is the positional identity after the
    chart matching; the identity matching is tried first and all matchings
    only when there are at most six charts.  Positive answers are verified
    exactly; a negative answer only rules out maps of even degree ``<= D``.
    """
    if len(X) != len(Y):
        return NoneUpTo(D, "chart counts differ")
    orders = [list(range(len(X)))]
    if len(X) <= 6:
        orders += [list(p) for p in permutations(range(len(X))) if list(p) != orders[0]]
    reasons = []
    for order in orders:
        Yo = relabel(Y, order)
        if Yo.reduced_dims() != X.reduced_dims():
            reasons.append("chart dimensions differ")
            continue
        alpha, why = _iso_for_order(X, Yo, D)
        if alpha is not None:
            return Iso(order, alpha)
        reasons.append(why)
    # the identity matching is the informative one
    return NoneUpTo(D, reasons[0])


# ---------------------------------------------------------------- odd line fibrations

@dataclass
class FibrationData:
    """Transitions ``t_j -> a_ij t_i + psi_ij`` of the fibre coordinate."""
    a: dict
    psi: dict

    def to_doc(self) -> dict:
        return {"a": [[i, j, f.to_doc()] for (i, j), f in sorted(self.a.items())],
                "psi": [[i, j, f.to_doc()] for (i, j), f in sorted(self.psi.items())]}


def _extend_ring(r: Ring, fiber: str) -> Ring:
    return Ring(r.even, r.odd + (fiber,), r.invertible, r.nil)


def _lift(f: SuperPoly, ring: Ring) -> SuperPoly:
    # the fibre coordinate is the last odd generator, so base keys stay valid
    return SuperPoly(ring, dict(f.terms))


def fibration_cocycle_failures(X: Atlas, data: FibrationData) -> list[str]:
    bad = []
    for i, j, k in X.triples():
        h = X.hom(i, j, [k])
        tgt = h.target
        aij = data.a[i, j].coerce(tgt)
        ajk = h(data.a[j, k].coerce(h.source))
        if ajk * aij != data.a[i, k].coerce(tgt):
            bad.append(f"a fails the cocycle condition on ({i},{j},{k})")
        lhs = ajk * data.psi[i, j].coerce(tgt) + h(data.psi[j, k].coerce(h.source))
        if lhs != data.psi[i, k].coerce(tgt):
            bad.append(f"psi fails the cocycle condition on ({i},{j},{k})")
    return bad


def build_fibration(X: Atlas, data: FibrationData, fiber: str = "t", fiber_weight=None) -> Atlas:
    bad = fibration_cocycle_failures(X, data)
    if bad:
        raise GluingError("; ".join(bad[:3]))
    charts = [Chart(c.label, _extend_ring(c.ring, fiber),
                    None if c.weights is None or fiber_weight is None else {**c.weights, fiber: tuple(fiber_weight)})
              for c in X.charts]
    phi = {}
    for (i, j), h in X.phi.items():
        tgt = _extend_ring(h.target, fiber)
        src = _extend_ring(h.source, fiber)
        images = {g: _lift(f, tgt) for g, f in h.images.items()}
        images[fiber] = _lift(data.a[i, j], tgt) * tgt.gen(fiber) + _lift(data.psi[i, j], tgt)
        phi[i, j] = RingHom(src, tgt, images)
    return Atlas(f"{X.name}[{fiber}]", charts, X.inv, phi, meta={"kind": "fibration", "base": X.name,
                                                                   "fiber": fiber}).certify()


def classify_fibration(F: Atlas, X: Atlas, fiber: str = "t") -> FibrationData:
    """Read off ``(a_ij, psi_ij)`` from an atlas whose fibre transitions are affine in ``fiber``."""
    a, psi = {}, {}
    for (i, j), h in F.phi.items():
        base = X.phi[i, j]
        ring = h.target
        if ring.odd[-1] != fiber:
            raise ValueError("the fibre coordinate must be the last odd generator")
        t = len(ring.odd) - 1
        for g, f in base.images.items():
            if h.images[g] != _lift(f, ring):
                raise ValueError(f"transition ({i},{j}) does not cover the base transition at {g}")
        lin, const = {}, {}
        for (exps, odd), c in h.images[fiber].terms.items():
            if t in odd:
                if odd[-1] != t:
                    raise ValueError("unexpected fibre position")
                lin[(exps, odd[:-1])] = c
            else:
                const[(exps, odd)] = c
        a[i, j] = SuperPoly(base.target, lin)
        psi[i, j] = SuperPoly(base.target, const)
        if not a[i, j].is_even() or not is_invertible(a[i, j]):
            raise ValueError(f"transition ({i},{j}) is not affine in the fibre coordinate")
    return FibrationData(a, psi)


def torsor_data(Q: QuotientAtlas) -> FibrationData:
    """The odd-line torsor ``X -> X/v`` in quotient coordinates, with fibre coordinate the witness."""
    a, psi = {}, {}
    for (i, j) in Q.pairs():
        X = Q.base
        h = X.hom(i, j)
        thj = h(Q.quotients[j].theta.coerce(h.source))
        diff = thj - Q.local[i, j].theta
        psi[i, j] = Q.local[i, j].express(diff)
        a[i, j] = Q.phi[i, j].target.one()
    return FibrationData(a, psi)


def splitting_solve(X: Atlas, data: FibrationData, weight: tuple):
    """Odd 0-cochain ``s`` of the given weight with ``psi_ij = a_ij s_i - phi_ij(s_j)``, or None."""
    unknowns = []
    for i, c in enumerate(X.charts):
        for key in monomials_of_weight(c.ring, c.weights, weight, parity=1):
            unknowns.append((i, key))
    rows: dict = {}
    rhs: dict = {}
    for (i, j) in X.pairs():
        h = X.hom(i, j)
        for idx, (k, key) in enumerate(unknowns):
            if k == i:
                img = data.a[i, j] * SuperPoly(h.target, {key: Fraction(1)})
            elif k == j:
                img = -h(SuperPoly(h.source, {key: Fraction(1)}))
            else:
                continue
            for m, c in img.terms.items():
                rows.setdefault((i, j, m), {})[idx] = c
        for m, c in data.psi[i, j].terms.items():
            rhs[(i, j, m)] = c
            rows.setdefault((i, j, m), {})
    keys = list(rows)
    sol = linalg.solve([rows[k] for k in keys], [rhs.get(k, 0) for k in keys])
    if sol is None:
        return None
    out = [c.ring.zero() for c in X.charts]
    for idx, x in sol.items():
        i, key = unknowns[idx]
        out[i] = out[i] + SuperPoly(X.ring(i), {key: x})
    return out
