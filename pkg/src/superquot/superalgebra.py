"""Exact supercommutative Laurent polynomial arithmetic over the rationals.

A :class:`Ring` is a free superring ``Q[x_1..x_p, x_k^-1 (k invertible) | t_1..t_q]``,
optionally truncated modulo the ``nil``-th power of the ideal generated by the
odd generators.  Elements are :class:`SuperPoly` objects holding a sparse map
from monomials to nonzero :class:`~fractions.Fraction` coefficients.

A monomial is a pair ``(exps, odd)`` where ``exps`` is a tuple of integer
exponents of the even generators and ``odd`` a strictly increasing tuple of
odd generator indices.  The element it denotes is ``x^exps * t_odd[0] * t_odd[1] ...``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence


class RingMismatch(ValueError):
    pass


class NotInvertible(ValueError):
    pass


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    return Fraction(c)


def frac_str(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class Ring:
    even: tuple[str, ...]
    odd: tuple[str, ...] = ()
    invertible: frozenset[str] = field(default_factory=frozenset)
    nil: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "even", tuple(self.even))
        object.__setattr__(self, "odd", tuple(self.odd))
        object.__setattr__(self, "invertible", frozenset(self.invertible))
        names = self.even + self.odd
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        if not self.invertible <= set(self.even):
            raise ValueError("invertible generators must be even")
        if self.nil is not None and self.nil < 1:
            raise ValueError("nil must be >= 1")

    @property
    def gens(self) -> tuple[str, ...]:
        return self.even + self.odd

    def is_odd_gen(self, name: str) -> bool:
        return name in self.odd

    def index(self, name: str) -> tuple[bool, int]:
        """(is_odd, position) of a generator."""
        if name in self.even:
            return False, self.even.index(name)
        if name in self.odd:
            return True, self.odd.index(name)
        raise KeyError(name)

    def localized(self, names: Iterable[str]) -> "Ring":
        return Ring(self.even, self.odd, self.invertible | frozenset(names), self.nil)

    def truncated(self, k: int) -> "Ring":
        nil = k if self.nil is None else min(k, self.nil)
        return Ring(self.even, self.odd, self.invertible, nil)

    def renamed(self, mapping: Mapping[str, str]) -> "Ring":
        r = lambda n: mapping.get(n, n)
        return Ring(tuple(map(r, self.even)), tuple(map(r, self.odd)),
                    frozenset(map(r, self.invertible)), self.nil)

    def with_invertible(self, names: Iterable[str]) -> "Ring":
        return Ring(self.even, self.odd, frozenset(names), self.nil)

    # ring elements
    def zero(self) -> "SuperPoly":
        return SuperPoly(self, {})

    def one(self) -> "SuperPoly":
        return self.const(1)

    def const(self, c) -> "SuperPoly":
        c = _frac(c)
        if c == 0:
            return self.zero()
        return SuperPoly(self, {self.unit_monomial(): c})

    def unit_monomial(self):
        return ((0,) * len(self.even), ())

    def gen(self, name: str) -> "SuperPoly":
        is_odd, i = self.index(name)
        if is_odd:
            if self.nil == 1:
                return self.zero()
            return SuperPoly(self, {((0,) * len(self.even), (i,)): Fraction(1)})
        exps = [0] * len(self.even)
        exps[i] = 1
        return SuperPoly(self, {(tuple(exps), ()): Fraction(1)})

    def gens_dict(self) -> dict[str, "SuperPoly"]:
        return {g: self.gen(g) for g in self.gens}

    def monomial(self, exps: Sequence[int], odd: Sequence[int] = (), coeff=1) -> "SuperPoly":
        """Element ``coeff * x^exps * t_odd`` with ``odd`` in any order (sign applied)."""
        sign, srt = _sort_sign(tuple(odd))
        if sign == 0:
            return self.zero()
        return SuperPoly.from_terms(self, {(tuple(exps), srt): sign * _frac(coeff)})

    def to_doc(self) -> dict:
        doc = {"even": list(self.even), "odd": list(self.odd),
               "invertible": sorted(self.invertible)}
        if self.nil is not None:
            doc["nil"] = self.nil
        return doc

    @classmethod
    def from_doc(cls, doc: Mapping) -> "Ring":
        return cls(tuple(doc["even"]), tuple(doc.get("odd", ())),
                   frozenset(doc.get("invertible", ())), doc.get("nil"))


def _sort_sign(odd: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``odd`` (0 if an index repeats)."""
    if len(set(odd)) != len(odd):
        return 0, ()
    inv = 0
    for a in range(len(odd)):
        for b in range(a + 1, len(odd)):
            if odd[a] > odd[b]:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(odd))


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]):
    """Koszul sign and merged index tuple for ``t_a * t_b``; None if they overlap."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    out = []
    i = j = 0
    inv = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        elif a[i] > b[j]:
            # b[j] jumps over the remaining la - i entries of a
            inv += la - i
            out.append(b[j])
            j += 1
        else:
            return None
    out.extend(a[i:])
    out.extend(b[j:])
    return (-1 if inv & 1 else 1), tuple(out)


class SuperPoly:
    """Element of a :class:`Ring`.  Treated as immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    @classmethod
    def from_terms(cls, ring: Ring, terms: Mapping) -> "SuperPoly":
        """Validated constructor: drops zeros, checks Laurent exponents and truncation."""
        out = {}
        ne = len(ring.even)
        for (exps, odd), c in terms.items():
            exps = tuple(int(e) for e in exps)
            odd = tuple(odd)
            if len(exps) != ne:
                raise ValueError("exponent vector has wrong length")
            if list(odd) != sorted(set(odd)) or any(not 0 <= i < len(ring.odd) for i in odd):
                raise ValueError(f"odd index list {odd} not strictly increasing/in range")
            for k, e in enumerate(exps):
                if e < 0 and ring.even[k] not in ring.invertible:
                    raise ValueError(f"negative exponent on non-invertible {ring.even[k]}")
            if ring.nil is not None and len(odd) >= ring.nil:
                continue
            c = _frac(c)
            if c:
                out[(exps, odd)] = out.get((exps, odd), 0) + c
        return cls(ring, {k: v for k, v in out.items() if v})

    # ------------------------------------------------------------ basics
    def _check(self, other: "SuperPoly"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> "SuperPoly":
        if isinstance(other, SuperPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, SuperPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SuperPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPoly(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SuperPoly":
        c = _frac(c)
        if not c:
            return self.ring.zero()
        return SuperPoly(self.ring, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SuperPoly):
            return NotImplemented
        self._check(other)
        nil = self.ring.nil
        out: dict = {}
        for (ea, oa), ca in self.terms.items():
            for (eb, ob), cb in other.terms.items():
                if nil is not None and len(oa) + len(ob) >= nil:
                    continue
                m = _merge_sign(oa, ob)
                if m is None:
                    continue
                sign, odd = m
                key = (tuple(x + y for x, y in zip(ea, eb)), odd)
                s = out.get(key, 0) + (ca * cb if sign > 0 else -ca * cb)
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return SuperPoly(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return invert_even(self) ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ------------------------------------------------------------ grading
    def parity(self) -> int | None:
        """0 or 1 for homogeneous elements (0 for zero), None if mixed."""
        ps = {len(o) & 1 for (_, o) in self.terms}
        if not ps:
            return 0
        if len(ps) == 1:
            return ps.pop()
        return None

    def is_even(self) -> bool:
        return self.parity() == 0

    def is_odd(self) -> bool:
        return self.parity() == 1 and bool(self.terms)

    def part(self, parity: int) -> "SuperPoly":
        return SuperPoly(self.ring, {k: c for k, c in self.terms.items() if len(k[1]) & 1 == parity})

    def reduced(self) -> "SuperPoly":
        """Terms with no odd factor."""
        return SuperPoly(self.ring, {k: c for k, c in self.terms.items() if not k[1]})

    def odd_order_part(self, k: int) -> "SuperPoly":
        return SuperPoly(self.ring, {m: c for m, c in self.terms.items() if len(m[1]) == k})

    def up_to_odd_order(self, k: int) -> "SuperPoly":
        return SuperPoly(self.ring, {m: c for m, c in self.terms.items() if len(m[1]) <= k})

    def is_constant(self) -> bool:
        return all(m == self.ring.unit_monomial() for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring.unit_monomial(), Fraction(0))

    def even_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def coerce(self, ring: Ring) -> "SuperPoly":
        """Reinterpret in a ring with the same generators and more inverted ones."""
        if ring == self.ring:
            return self
        if ring.even != self.ring.even or ring.odd != self.ring.odd:
            raise RingMismatch("coerce needs identical generator lists")
        if not self.ring.invertible <= ring.invertible:
            raise RingMismatch("coerce cannot drop inverted generators")
        if ring.nil is not None and (self.ring.nil is None or ring.nil < self.ring.nil):
            return SuperPoly(ring, {k: c for k, c in self.terms.items() if len(k[1]) < ring.nil})
        return SuperPoly(ring, dict(self.terms))

    # ------------------------------------------------------------ display / io
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1]))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (exps, odd), c in self.sorted_terms():
            fac = []
            for name, e in zip(self.ring.even, exps):
                if e == 1:
                    fac.append(name)
                elif e:
                    fac.append(f"{name}^{e}")
            fac.extend(self.ring.odd[i] for i in odd)
            mono = "*".join(fac)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_doc(self) -> list:
        return [[list(e), list(o), frac_str(c)] for (e, o), c in self.sorted_terms()]

    @classmethod
    def from_doc(cls, ring: Ring, doc) -> "SuperPoly":
        return cls.from_terms(ring, {(tuple(e), tuple(o)): Fraction(c) for e, o, c in doc})


# ---------------------------------------------------------------- operations

def mul(f: SuperPoly, g: SuperPoly) -> SuperPoly:
    return f * g


def _unit_monomial_inverse(r: SuperPoly) -> SuperPoly:
    if len(r.terms) != 1:
        raise NotInvertible(f"reduced part {r} is not a unit monomial")
    ((exps, odd), c), = r.terms.items()
    ring = r.ring
    for name, e in zip(ring.even, exps):
        if e and name not in ring.invertible:
            raise NotInvertible(f"{name} is not invertible in this ring")
    return SuperPoly(ring, {(tuple(-e for e in exps), ()): 1 / c})


def is_invertible(f: SuperPoly) -> bool:
    if not f.is_even():
        return False
    try:
        _unit_monomial_inverse(f.reduced())
    except NotInvertible:
        return False
    return True


def invert_even(f: SuperPoly) -> SuperPoly:
    """Inverse of an even element whose reduced part is a unit Laurent monomial."""
    if not f.is_even():
        raise NotInvertible("only even elements are inverted")
    r = f.reduced()
    rinv = _unit_monomial_inverse(r)
    n = f - r
    step = -(rinv * n)
    total = f.ring.one()
    power = f.ring.one()
    while True:
        power = power * step
        if power.is_zero():
            break
        total = total + power
    return rinv * total


class RingHom:
    """Ring homomorphism determined by generator images."""

    def __init__(self, source: Ring, target: Ring, images: Mapping[str, SuperPoly], check: bool = True):
        self.source = source
        self.target = target
        self.images = dict(images)
        if check:
            self._validate()
        self._even = [self.images[n] for n in source.even]
        self._odd = [self.images[n] for n in source.odd]
        self._pow_cache: dict = {}

    def _validate(self):
        for n in self.source.gens:
            if n not in self.images:
                raise ValueError(f"no image for generator {n}")
            img = self.images[n]
            if img.ring != self.target:
                raise RingMismatch(f"image of {n} lives in the wrong ring")
            want = 1 if self.source.is_odd_gen(n) else 0
            if not img.is_zero() and img.parity() != want:
                raise ValueError(f"image of {n} has wrong parity: {img}")
        for n in self.source.invertible:
            if not is_invertible(self.images[n]):
                raise NotInvertible(f"image of invertible generator {n} is not invertible: {self.images[n]}")

    def _even_power(self, k: int, e: int) -> SuperPoly:
        key = (k, e)
        p = self._pow_cache.get(key)
        if p is None:
            if e == 0:
                p = self.target.one()
            elif e > 0:
                p = self._even_power(k, e - 1) * self._even[k] if e > 1 else self._even[k]
            else:
                if (k, -1) not in self._pow_cache:
                    self._pow_cache[(k, -1)] = invert_even(self._even[k])
                p = self._pow_cache[(k, -1)] if e == -1 else self._even_power(k, e + 1) * self._pow_cache[(k, -1)]
            self._pow_cache[key] = p
        return p

    def __call__(self, f: SuperPoly) -> SuperPoly:
        if f.ring != self.source:
            # allow elements of a ring that only differs by truncation / fewer inversions
            if f.ring.even != self.source.even or f.ring.odd != self.source.odd or \
                    not f.ring.invertible <= self.source.invertible:
                raise RingMismatch("element is not in the source ring")
        out = self.target.zero()
        acc: dict = {}
        for (exps, odd), c in f.terms.items():
            term = self.target.const(c)
            for k, e in enumerate(exps):
                if e:
                    term = term * self._even_power(k, e)
                    if term.is_zero():
                        break
            else:
                for i in odd:
                    term = term * self._odd[i]
                    if term.is_zero():
                        break
            for m, v in term.terms.items():
                s = acc.get(m, 0) + v
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        out = SuperPoly(self.target, acc)
        return out

    def compose(self, inner: "RingHom") -> "RingHom":
        """``self ∘ inner``: apply ``inner`` first."""
        if inner.target.gens != self.source.gens:
            raise RingMismatch("homomorphisms are not composable")
        return RingHom(inner.source, self.target, {n: self(img) for n, img in inner.images.items()}, check=False)

    def with_source(self, source: Ring) -> "RingHom":
        return RingHom(source, self.target, self.images)

    def with_target(self, target: Ring) -> "RingHom":
        return RingHom(self.source, target, {n: f.coerce(target) for n, f in self.images.items()})

    def __eq__(self, other):
        return isinstance(other, RingHom) and self.source == other.source and \
            self.target == other.target and self.images == other.images

    def to_doc(self) -> dict:
        return {n: self.images[n].to_doc() for n in self.source.gens}


def hom_apply(assignment: Mapping[str, SuperPoly], f: SuperPoly, target: Ring | None = None) -> SuperPoly:
    if target is None:
        target = next(iter(assignment.values())).ring
    return RingHom(f.ring, target, assignment)(f)


def identity_hom(ring: Ring) -> RingHom:
    return RingHom(ring, ring, ring.gens_dict(), check=False)


# ---------------------------------------------------------------- super matrices

class SuperMatrix:
    """Grid of :class:`SuperPoly` entries with row and column parities.

    Products are ordinary row-by-column products of entries (the matrix of a map
    is defined by ``T(e_j) = sum_i e_i a_ij``).
    """

    def __init__(self, entries: Sequence[Sequence[SuperPoly]], row_par: Sequence[int], col_par: Sequence[int],
                 check: bool = True):
        self.entries = [list(r) for r in entries]
        self.row_par = list(row_par)
        self.col_par = list(col_par)
        if check:
            if len(self.entries) != len(self.row_par):
                raise ValueError("row count mismatch")
            for r, row in enumerate(self.entries):
                if len(row) != len(self.col_par):
                    raise ValueError("column count mismatch")
                for c, x in enumerate(row):
                    want = (self.row_par[r] + self.col_par[c]) & 1
                    if not x.is_zero() and x.parity() != want:
                        raise ValueError(f"entry ({r},{c}) = {x} should have parity {want}")

    @property
    def ring(self) -> Ring:
        return self.entries[0][0].ring

    @property
    def shape(self):
        return len(self.row_par), len(self.col_par)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        if self.col_par != other.row_par:
            raise ValueError("inner parities do not match")
        ring = self.ring
        out = []
        for r in range(len(self.row_par)):
            row = []
            for c in range(len(other.col_par)):
                s = ring.zero()
                for k in range(len(self.col_par)):
                    a = self.entries[r][k]
                    if a:
                        b = other.entries[k][c]
                        if b:
                            s = s + a * b
                row.append(s)
            out.append(row)
        return SuperMatrix(out, self.row_par, other.col_par, check=False)

    def __add__(self, other):
        return SuperMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
                           self.row_par, self.col_par, check=False)

    def __sub__(self, other):
        return SuperMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
                           self.row_par, self.col_par, check=False)

    def __neg__(self):
        return SuperMatrix([[-a for a in r] for r in self.entries], self.row_par, self.col_par, check=False)

    def __eq__(self, other):
        return isinstance(other, SuperMatrix) and self.entries == other.entries and \
            self.row_par == other.row_par and self.col_par == other.col_par

    def map(self, fn) -> "SuperMatrix":
        return SuperMatrix([[fn(a) for a in r] for r in self.entries], self.row_par, self.col_par, check=False)

    def rows(self, idx: Sequence[int]) -> "SuperMatrix":
        return SuperMatrix([self.entries[i] for i in idx], [self.row_par[i] for i in idx], self.col_par, check=False)

    def cols(self, idx: Sequence[int]) -> "SuperMatrix":
        return SuperMatrix([[r[j] for j in idx] for r in self.entries], self.row_par,
                           [self.col_par[j] for j in idx], check=False)

    def blocks(self):
        """(A, B, C, D) with even rows/cols first; requires a square super shape."""
        re = [i for i, p in enumerate(self.row_par) if p == 0]
        ro = [i for i, p in enumerate(self.row_par) if p == 1]
        ce = [i for i, p in enumerate(self.col_par) if p == 0]
        co = [i for i, p in enumerate(self.col_par) if p == 1]
        sub = lambda R, C: [[self.entries[r][c] for c in C] for r in R]
        return sub(re, ce), sub(re, co), sub(ro, ce), sub(ro, co), (re, ro, ce, co)

    @classmethod
    def identity(cls, ring: Ring, parities: Sequence[int]) -> "SuperMatrix":
        n = len(parities)
        return cls([[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)],
                   parities, parities, check=False)

    def __repr__(self):
        return "SuperMatrix(" + repr(self.entries) + ")"


def _mat_mul(a, b, ring):
    n, k, m = len(a), len(b), (len(b[0]) if b else 0)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = ring.zero()
            for t in range(k):
                if a[i][t] and b[t][j]:
                    s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def det_even(m: list[list[SuperPoly]], ring: Ring) -> SuperPoly:
    """Determinant of a matrix with pairwise commuting (even) entries, by Laplace expansion."""
    n = len(m)
    if n == 0:
        return ring.one()
    if n == 1:
        return m[0][0]
    total = ring.zero()
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            d = m[0][j] * det_even(minor, ring)
            total = total + d if j % 2 == 0 else total - d
    return total


def inverse_even(m: list[list[SuperPoly]], ring: Ring) -> list[list[SuperPoly]]:
    """Inverse of a matrix with even entries via the adjugate."""
    n = len(m)
    if n == 0:
        return []
    dinv = invert_even(det_even(m, ring))
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:i] + row[i + 1:] for k, row in enumerate(m) if k != j]
            c = det_even(minor, ring)
            out[i][j] = (c if (i + j) % 2 == 0 else -c) * dinv
    return out


def berezinian(M: SuperMatrix) -> SuperPoly:
    A, B, C, D, _ = M.blocks()
    ring = M.ring
    if len(A) != len(A[0] if A else []) or len(D) != len(D[0] if D else []):
        raise ValueError("berezinian needs square even and odd blocks")
    if D:
        Dinv = inverse_even(D, ring)
        S = _mat_sub(A, _mat_mul(_mat_mul(B, Dinv, ring), C, ring)) if A else A
        return det_even(S, ring) * invert_even(det_even(D, ring))
    return det_even(A, ring)


def super_inverse(M: SuperMatrix) -> SuperMatrix:
    """Inverse of an even invertible super matrix by the block formula."""
    ring = M.ring
    A, B, C, D, (re, ro, ce, co) = M.blocks()
    if len(re) != len(ce) or len(ro) != len(co):
        raise ValueError("super matrix is not square in the super sense")
    if not A:
        Dinv = inverse_even(D, ring)
        Ai, Bi, Ci, Di = [], [], [], Dinv
    elif not D:
        Ai, Bi, Ci, Di = inverse_even(A, ring), [], [], []
    else:
        Ainv = inverse_even(A, ring)
        Dinv = inverse_even(D, ring)
        SA = inverse_even(_mat_sub(A, _mat_mul(_mat_mul(B, Dinv, ring), C, ring)), ring)
        SD = inverse_even(_mat_sub(D, _mat_mul(_mat_mul(C, Ainv, ring), B, ring)), ring)
        Ai = SA
        Bi = [[-x for x in r] for r in _mat_mul(_mat_mul(Ainv, B, ring), SD, ring)]
        Ci = [[-x for x in r] for r in _mat_mul(_mat_mul(Dinv, C, ring), SA, ring)]
        Di = SD
    # inverse maps rows-space back: its rows are indexed by M's columns
    n = len(M.row_par)
    out = [[ring.zero()] * n for _ in range(n)]
    for a, c in enumerate(ce):
        for b, r in enumerate(re):
            out[c][r] = Ai[a][b]
        for b, r in enumerate(ro):
            out[c][r] = Bi[a][b]
    for a, c in enumerate(co):
        for b, r in enumerate(re):
            out[c][r] = Ci[a][b]
        for b, r in enumerate(ro):
            out[c][r] = Di[a][b]
    return SuperMatrix(out, M.col_par, M.row_par, check=False)


# ---------------------------------------------------------------- serialization

def dumps(doc) -> str:
    """Canonical UTF-8 JSON text."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def poly_doc(f: SuperPoly) -> dict:
    return {"ring": f.ring.to_doc(), "terms": f.to_doc()}


def poly_from_doc(doc) -> SuperPoly:
    return SuperPoly.from_doc(Ring.from_doc(doc["ring"]), doc["terms"])


def parse_poly(ring: Ring, text: str) -> SuperPoly:
    """Parse a human-written expression such as ``"u^2 - 3/2*e0*e1 + 1"``.

    Products are left to right, so ``e1*e0`` picks up the Koszul sign.
    """
    import re
    text = re.sub(r"(?<!\^)-", "+-", text.replace(" ", ""))
    out = ring.zero()
    for chunk in filter(None, text.split("+")):
        sign = 1
        while chunk.startswith("-"):
            sign = -sign
            chunk = chunk[1:]
        term = ring.const(sign)
        for fac in chunk.split("*"):
            m = re.fullmatch(r"([A-Za-z_][\w\[\],./]*?)(\^(-?\d+))?", fac)
            if re.fullmatch(r"\d+(/\d+)?", fac):
                term = term.scale(Fraction(fac))
            elif m and m.group(1) in ring.gens:
                g = ring.gen(m.group(1))
                term = term * (g ** int(m.group(3)) if m.group(3) else g)
            else:
                raise ValueError(f"cannot parse factor {fac!r}")
        out = out + term
    return out
