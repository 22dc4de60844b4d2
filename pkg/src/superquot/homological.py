"""Odd derivations, homological vector fields and quotients of free charts.

The action of the odd line on ``Spec A`` is written ``a -> a + psi*v(a)`` with the
odd parameter on the left, and derivations obey

    v(ab) = v(a) b + (-1)^{|a|} a v(b).

With a witness ``theta`` (``v(theta) = 1``) every homogeneous ``f`` splits as
``f = a + b*theta`` with ``b = (-1)^{|f|+1} v(f)`` and ``a = f - b*theta``, both killed
by ``v``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Sequence

from . import linalg
from .superalgebra import (NotInvertible, Ring, RingHom, RingMismatch, SuperPoly, invert_even,
                           is_invertible)


class NotHomological(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class OddDerivation:
    """Odd derivation of a free superring, given by the images of the generators."""

    def __init__(self, ring: Ring, images: Mapping[str, SuperPoly]):
        self.ring = ring
        self.images = {}
        for g in ring.gens:
            img = images.get(g, ring.zero())
            if img.ring != ring:
                img = img.coerce(ring)
            want = 0 if ring.is_odd_gen(g) else 1
            if img and img.parity() != want:
                raise ValueError(f"v({g}) = {img} must have parity {want}")
            self.images[g] = img
        self._even = [self.images[g] for g in ring.even]
        self._odd = [self.images[g] for g in ring.odd]
        self._cache: dict = {}

    def localized(self, ring: Ring) -> "OddDerivation":
        """Same derivation on a ring with more generators inverted (or truncated)."""
        return type(self)(ring, {g: f.coerce(ring) for g, f in self.images.items()})

    def _monomial(self, key) -> SuperPoly:
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        ring = self.ring
        exps, odd = key
        out = ring.zero()
        odd_part = SuperPoly(ring, {((0,) * len(exps), odd): Fraction(1)})
        for k, e in enumerate(exps):
            if e and self._even[k]:
                lower = list(exps)
                lower[k] -= 1
                out = out + SuperPoly(ring, {(tuple(lower), ()): Fraction(e)}) * self._even[k] * odd_part
        if odd:
            even_part = SuperPoly(ring, {(exps, ()): Fraction(1)})
            for t, i in enumerate(odd):
                if not self._odd[i]:
                    continue
                before = SuperPoly(ring, {((0,) * len(exps), odd[:t]): Fraction(1)})
                after = SuperPoly(ring, {((0,) * len(exps), odd[t + 1:]): Fraction(1)})
                term = even_part * before * self._odd[i] * after
                out = out + term if t % 2 == 0 else out - term
        self._cache[key] = out
        return out

    def __call__(self, f: SuperPoly) -> SuperPoly:
        if f.ring != self.ring:
            if f.ring.gens != self.ring.gens:
                raise RingMismatch("element is not in the derivation's ring")
            f = f.coerce(self.ring)
        acc: dict = {}
        for key, c in f.terms.items():
            for m, x in self._monomial(key).terms.items():
                s = acc.get(m, 0) + c * x
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        return SuperPoly(self.ring, acc)

    def square_on_generators(self) -> dict[str, SuperPoly]:
        return {g: self(self.images[g]) for g in self.ring.gens}

    def __add__(self, other: "OddDerivation") -> "OddDerivation":
        return OddDerivation(self.ring, {g: self.images[g] + other.images[g] for g in self.ring.gens})

    def to_doc(self) -> dict:
        return {"ring": self.ring.to_doc(), "images": {g: f.to_doc() for g, f in self.images.items()}}

    def __repr__(self):
        return "v{" + ", ".join(f"{g} -> {f}" for g, f in self.images.items()) + "}"


class HomologicalField(OddDerivation):
    """Odd derivation certified to square to zero."""

    def __init__(self, ring: Ring, images: Mapping[str, SuperPoly]):
        super().__init__(ring, images)
        ok, witness = is_homological(self)
        if not ok:
            raise NotHomological(f"v^2({witness}) != 0", witness)

    @classmethod
    def certify(cls, v: OddDerivation) -> "HomologicalField":
        return cls(v.ring, v.images)

    def __add__(self, other):
        return HomologicalField(self.ring, {g: self.images[g] + other.images[g] for g in self.ring.gens})

    @classmethod
    def from_doc(cls, doc) -> "HomologicalField":
        ring = Ring.from_doc(doc["ring"])
        return cls(ring, {g: SuperPoly.from_doc(ring, t) for g, t in doc["images"].items()})


def derive(v: OddDerivation, f: SuperPoly) -> SuperPoly:
    return v(f)


def is_homological(v: OddDerivation) -> tuple[bool, str | None]:
    """v^2 is an even derivation, so checking generators suffices."""
    for g, img in v.images.items():
        if v(img):
            return False, g
    return True, None


def anticommute(v: OddDerivation, w: OddDerivation) -> bool:
    return all(not (v(w.images[g]) + w(v.images[g])) for g in v.ring.gens)


# ---------------------------------------------------------------- gradings and slices

def weighted_degree(ring: Ring, weights: Mapping[str, int], key) -> int:
    exps, odd = key
    return sum(e * weights[g] for g, e in zip(ring.even, exps)) + sum(weights[ring.odd[i]] for i in odd)


def homogeneous_shift(v: OddDerivation, weights: Mapping[str, int]) -> int | None:
    """The degree shift of ``v`` for the grading, or None if ``v`` is not homogeneous."""
    shifts = set()
    for g, img in v.images.items():
        for key in img.terms:
            shifts.add(weighted_degree(v.ring, weights, key) - weights[g])
    if len(shifts) > 1:
        return None
    return shifts.pop() if shifts else 0


def detect_grading(v: OddDerivation) -> tuple[dict[str, int], int] | None:
    """An integer grading with positive even weights for which ``v`` is homogeneous.

    Tries the standard grading (even generators 1, odd 0) first, then searches
    small combinations of the solution space of the homogeneity equations.
    """
    ring = v.ring
    std = {g: (0 if ring.is_odd_gen(g) else 1) for g in ring.gens}
    s = homogeneous_shift(v, std)
    if s is not None:
        return std, s
    unknowns = list(ring.gens) + ["__shift"]
    rows = []
    for g, img in v.images.items():
        for exps, odd in img.terms:
            row: dict = {}
            for name, e in zip(ring.even, exps):
                if e:
                    row[name] = row.get(name, 0) + e
            for i in odd:
                row[ring.odd[i]] = row.get(ring.odd[i], 0) + 1
            row[g] = row.get(g, 0) - 1
            row["__shift"] = row.get("__shift", 0) - 1
            rows.append({k: c for k, c in row.items() if c})
    basis = linalg.nullspace(rows, unknowns)
    if not basis or len(basis) > 5:
        return None
    for coeffs in product(range(-2, 3), repeat=len(basis)):
        vec = {u: sum(c * b.get(u, 0) for c, b in zip(coeffs, basis)) for u in unknowns}
        if all(vec[g] > 0 for g in ring.even):
            den = 1
            for x in vec.values():
                den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
            w = {g: int(vec[g] * den) for g in ring.gens}
            shift = homogeneous_shift(v, w)
            if shift is not None:
                return w, shift
    return None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass
class GradedSlice:
    degree: int
    parity: int
    weights: dict
    basis: list  # monomial keys

    def __len__(self):
        return len(self.basis)


def slice_basis(ring: Ring, weights: Mapping[str, int], d: int, parity: int) -> GradedSlice:
    if ring.invertible:
        raise ValueError("graded slices are only defined on polynomial rings")
    if any(weights[g] <= 0 for g in ring.even):
        raise ValueError("even weights must be positive")
    ne = len(ring.even)
    out = []
    for r in range(parity, len(ring.odd) + 1, 2):
        if ring.nil is not None and r >= ring.nil:
            break
        for odd in combinations(range(len(ring.odd)), r):
            rest = d - sum(weights[ring.odd[i]] for i in odd)
            if rest < 0:
                continue
            for exps in _compositions(rest, [weights[g] for g in ring.even]):
                out.append((exps, odd))
    out.sort()
    return GradedSlice(d, parity, dict(weights), out)


def _compositions(total: int, wts: list[int]):
    if not wts:
        if total == 0:
            yield ()
        return
    w = wts[0]
    for e in range(total // w + 1):
        for rest in _compositions(total - e * w, wts[1:]):
            yield (e,) + rest


def _images_as_columns(v: OddDerivation, basis) -> list[dict]:
    return [dict(v(SuperPoly(v.ring, {key: Fraction(1)})).terms) for key in basis]


@dataclass
class SliceDims:
    degree: int
    parity: int
    kernel: int
    image: int
    grading: dict
    shift: int

    @property
    def equal(self) -> bool:
        return self.kernel == self.image


def ker_im_dims(v: OddDerivation, d: int, parity: int, grading=None) -> SliceDims:
    """Dimensions of ``ker v`` and ``im v`` inside one graded slice."""
    if grading is None:
        found = detect_grading(v)
        if found is None:
            raise ValueError("no grading with positive even weights makes v homogeneous")
        weights, shift = found
    else:
        weights = dict(grading)
        shift = homogeneous_shift(v, weights)
        if shift is None:
            raise ValueError("v is not homogeneous for the given grading")
    sl = slice_basis(v.ring, weights, d, parity)
    ker = len(sl) - linalg.rank_of_columns(_images_as_columns(v, sl.basis))
    pre = slice_basis(v.ring, weights, d - shift, 1 - parity) if d - shift >= 0 else GradedSlice(d - shift, 1 - parity, weights, [])
    im = linalg.rank_of_columns(_images_as_columns(v, pre.basis))
    return SliceDims(d, parity, ker, im, weights, shift)


# ---------------------------------------------------------------- freeness

@dataclass
class Free:
    witness: SuperPoly

    def __bool__(self):
        return True


@dataclass
class NotFree:
    point: dict  # even generator -> Fraction

    def __bool__(self):
        return False


@dataclass
class Undecided:
    bound: int

    def __bool__(self):
        return False


def odd_monomials(ring: Ring, D: int) -> list:
    out = []
    ne = len(ring.even)
    for r in range(1, len(ring.odd) + 1, 2):
        if ring.nil is not None and r >= ring.nil:
            break
        for odd in combinations(range(len(ring.odd)), r):
            for deg in range(D + 1):
                for exps in _compositions(deg, [1] * ne):
                    out.append((exps, odd))
    return out


def normalize_witness(v: OddDerivation, theta: SuperPoly) -> SuperPoly | None:
    """``f^{-1} theta`` with ``f = v(theta)`` when ``f`` is invertible, else None."""
    f = v(theta)
    if not is_invertible(f):
        return None
    w = invert_even(f) * theta
    return w if v(w) == v.ring.one() else None


def solve_witness(v: OddDerivation, D: int) -> SuperPoly | None:
    """Solve ``v(theta) = 1`` over odd monomials of even degree <= D."""
    ring = v.ring
    unknowns = odd_monomials(ring, D)
    cols = _images_as_columns(v, unknowns)
    rows: dict = {}
    for j, col in enumerate(cols):
        for key, c in col.items():
            rows.setdefault(key, {})[j] = c
    one = ring.unit_monomial()
    rows.setdefault(one, {})
    keys = list(rows)
    sol = linalg.solve([rows[k] for k in keys], [1 if k == one else 0 for k in keys])
    if sol is None:
        return None
    theta = SuperPoly.from_terms(ring, {unknowns[j]: c for j, c in sol.items()})
    assert v(theta) == ring.one()
    return theta


def reduced_zero(v: OddDerivation, search: int = 2) -> dict | None:
    """A rational point where the reduced images of all generators vanish.

    Even generators have odd images, whose reduced part is always zero, so only
    the odd generators matter.
    """
    ring = v.ring
    polys = [img.reduced() for g, img in v.images.items() if ring.is_odd_gen(g)]
    polys = [p for p in polys if p]
    ne = len(ring.even)

    def candidates():
        yield (0,) * ne
        if ne <= 4:
            rng = range(-search, search + 1)
            yield from product(rng, repeat=ne)
        else:
            for k in range(ne):
                for s in (1, -1):
                    pt = [0] * ne
                    pt[k] = s
                    yield tuple(pt)

    for pt in candidates():
        if any(pt[k] == 0 and g in ring.invertible for k, g in enumerate(ring.even)):
            continue
        if all(_eval_reduced(p, pt) == 0 for p in polys):
            return {g: Fraction(x) for g, x in zip(ring.even, pt)}
    return None


def _eval_reduced(p: SuperPoly, pt) -> Fraction:
    total = Fraction(0)
    for (exps, _), c in p.terms.items():
        term = c
        for x, e in zip(pt, exps):
            term *= Fraction(x) ** e
        total += term
    return total


def freeness(v: OddDerivation, D: int = 3, hints: Sequence[SuperPoly] = ()):
    """Decide whether ``v`` admits a witness ``theta`` with ``v(theta) = 1``.

    Returns :class:`Free` (verified witness), :class:`NotFree` (a reduced point
    where the ideal generated by the image of ``v`` cannot be the unit ideal) or
    :class:`Undecided` at the bound.
    """
    ring = v.ring
    candidates = list(hints) + [ring.gen(g) for g in ring.odd]
    for h in candidates:
        w = normalize_witness(v, h)
        if w is not None:
            return Free(w)
    point = reduced_zero(v)
    if point is not None:
        return NotFree(point)
    w = solve_witness(v, D)
    if w is not None:
        return Free(w)
    return Undecided(D)


def check_not_free_certificate(v: OddDerivation, point: Mapping[str, Fraction]) -> bool:
    pt = tuple(point[g] for g in v.ring.even)
    return all(_eval_reduced(img.reduced(), pt) == 0 for img in v.images.values())


# ---------------------------------------------------------------- decomposition

def decompose(v: OddDerivation, theta: SuperPoly, f: SuperPoly) -> tuple[SuperPoly, SuperPoly]:
    """Split ``f = a + b*theta`` with ``v(a) = v(b) = 0``."""
    if v(theta) != v.ring.one():
        raise ValueError("theta is not a witness: v(theta) != 1")
    a_tot = v.ring.zero()
    b_tot = v.ring.zero()
    for par in (0, 1):
        fp = f.part(par)
        if not fp:
            continue
        b = v(fp) if par == 1 else -v(fp)
        a_tot = a_tot + (fp - b * theta)
        b_tot = b_tot + b
    return a_tot, b_tot


def _span_solve(vectors: list[SuperPoly], target: SuperPoly) -> dict | None:
    """Coefficients expressing ``target`` as a combination of ``vectors`` (index -> c)."""
    rows: dict = {}
    for j, vec in enumerate(vectors):
        for key, c in vec.terms.items():
            rows.setdefault(key, {})[j] = c
    for key in target.terms:
        rows.setdefault(key, {})
    keys = list(rows)
    return linalg.solve([rows[k] for k in keys], [target.terms.get(k, 0) for k in keys])


def invariant_generators(v: OddDerivation, theta: SuperPoly, prefix: str = "q_") -> list[tuple[str, SuperPoly]]:
    """Generators of ``ker v`` from decomposing each ring generator, without linear repeats."""
    return [(n, e) for n, e, _ in _invariant_candidates(v, theta, prefix)[0]]


def _invariant_candidates(v, theta, prefix):
    ring = v.ring
    cands = []
    for g in ring.gens:
        a, b = decompose(v, theta, ring.gen(g))
        cands.append((f"{prefix}{g}", a, g, "a"))
    for g in ring.gens:
        a, b = decompose(v, theta, ring.gen(g))
        cands.append((f"d{prefix}{g}", b, g, "b"))
    kept: list = []
    exprs: dict = {}
    one = ring.one()
    for name, c, g, which in cands:
        basis = [one] + [e for _, e, _ in kept]
        sol = _span_solve(basis, c)
        if sol is None:
            kept.append((name, c, c.parity()))
            exprs[(g, which)] = {len(kept): Fraction(1)}
        else:
            exprs[(g, which)] = sol
    return kept, exprs


@dataclass
class ChartQuotient:
    """Quotient of one chart by a free field, represented upstairs.

    ``ring`` is the free superring on the invariant generators, ``embedding``
    maps it into the chart ring, and ``split_ring`` adjoins an odd generator for
    the witness so that ``to_split`` is the inverse of the torsor isomorphism
    ``ring[theta] -> chart``.
    """
    field: OddDerivation
    theta: SuperPoly
    names: list
    ring: Ring
    split_ring: Ring
    embedding: RingHom
    from_split: RingHom
    to_split: RingHom
    witness_name: str

    def express(self, f: SuperPoly) -> SuperPoly:
        """Rewrite an invariant element of the chart ring in quotient generators."""
        g = self.to_split(f)
        if f.ring != self.field.ring:
            raise RingMismatch("element is not in the chart ring")
        k = len(self.ring.odd)
        out = {}
        for (exps, odd), c in g.terms.items():
            if k in odd:
                raise ValueError(f"element is not invariant: {f}")
            out[(exps, odd)] = c
        return SuperPoly(self.ring, out)

    def split(self, f: SuperPoly) -> SuperPoly:
        return self.to_split(f)

    def localized(self, names: Sequence[str]) -> "ChartQuotient":
        """Quotient data after inverting chart generators ``names``."""
        A = self.field.ring.localized(names)
        return chart_quotient(self.field.localized(A), self.theta.coerce(A), prefix=None, _names=self.names,
                              _witness_name=self.witness_name)


def chart_quotient(v: OddDerivation, theta: SuperPoly, prefix: str | None = "q_", _names=None,
                   _witness_name: str = "th") -> ChartQuotient:
    A = v.ring
    kept, exprs = _invariant_candidates(v, theta, prefix or "q_")
    if _names is not None:
        if len(_names) != len(kept):
            raise ValueError("localization changed the invariant generators")
        kept = [(n, e, p) for n, (_, e, p) in zip(_names, kept)]
    names = [n for n, _, _ in kept]
    even = tuple(n for n, _, p in kept if p == 0)
    odd = tuple(n for n, _, p in kept if p == 1)
    wn = _witness_name
    while wn in names:
        wn += "_"
    split = Ring(even, odd + (wn,), frozenset(), A.nil)
    one = split.one()

    def lin(sol: dict) -> SuperPoly:
        out = split.zero()
        for idx, c in sol.items():
            out = out + (one.scale(c) if idx == 0 else split.gen(kept[idx - 1][0]).scale(c))
        return out

    images = {}
    for g in A.gens:
        images[g] = lin(exprs[(g, "a")]) + lin(exprs[(g, "b")]) * split.gen(wn)
    # invert, in the split ring, whatever the chart ring inverts
    inv_names = set()
    for g in A.invertible:
        red = images[g].reduced()
        if len(red.terms) != 1:
            raise NotInvertible(f"image of {g} has non-monomial reduced part {red}")
        ((exps, _), _), = red.terms.items()
        inv_names |= {n for n, e in zip(split.even, exps) if e}
    split = split.localized(inv_names)
    images = {g: f.coerce(split) for g, f in images.items()}
    B = Ring(even, odd, frozenset(inv_names), A.nil)
    emb_images = {n: e for n, e, _ in kept}
    embedding = RingHom(B, A, emb_images)
    from_split = RingHom(split, A, dict(emb_images, **{wn: theta}))
    to_split = RingHom(A, split, images)
    for g in A.gens:
        if from_split(to_split(A.gen(g))) != A.gen(g):
            raise ValueError(f"torsor map fails to invert on {g}")
    for n in split.gens:
        if to_split(from_split(split.gen(n))) != split.gen(n):
            raise ValueError(f"torsor map fails to invert on {n}")
    for n, e in emb_images.items():
        if v(e):
            raise AssertionError(f"generator {n} is not invariant")
    return ChartQuotient(v, theta, names, B, split, embedding, from_split, to_split, wn)


def restrict_field(q: ChartQuotient, w: OddDerivation) -> OddDerivation:
    """A field anticommuting with ``q.field``, written on the quotient ring."""
    return OddDerivation(q.ring, {n: q.express(w(q.embedding.images[n])) for n in q.ring.gens})


def quotient_multi(fields: Sequence[OddDerivation], D: int = 3) -> list[tuple[str, SuperPoly]]:
    """Iterated quotient by pairwise anticommuting free fields.

    Returns the final invariant generators with their embeddings in the
    original ring.
    """
    fields = list(fields)
    for i in range(len(fields)):
        for j in range(i + 1, len(fields)):
            if not anticommute(fields[i], fields[j]):
                raise ValueError(f"fields {i} and {j} do not anticommute")
    if not fields:
        raise ValueError("no fields")
    A = fields[0].ring
    to_top = RingHom(A, A, A.gens_dict(), check=False)  # current ring -> A
    current = list(fields)
    for step in range(len(fields)):
        v = current[0]
        res = freeness(v, D)
        if not isinstance(res, Free):
            raise ValueError(f"step {step}: field is not free at bound {D}: {res}")
        q = chart_quotient(v, res.witness, prefix=f"q{step}_")
        current = [restrict_field(q, w) for w in current[1:]]
        to_top = to_top.compose(q.embedding) if step else q.embedding
    return [(n, to_top.images[n]) for n in to_top.source.gens]


def in_subalgebra(gens: Sequence[SuperPoly], f: SuperPoly, degree: int) -> bool:
    """Whether ``f`` lies in the span of products of ``gens`` with at most ``degree`` factors."""
    ring = f.ring
    prods = [ring.one()]
    layer = [ring.one()]
    for _ in range(degree):
        layer = [p * g for p in layer for g in gens]
        prods.extend(layer)
    return _span_solve(prods, f) is not None
