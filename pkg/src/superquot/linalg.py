"""Sparse exact linear algebra over Q.

Matrices are lists of rows; a row is a ``{column: Fraction}`` dict.  Vectors use
the same dict form.  Nothing here knows about superalgebra.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence

Row = dict


class _Rhs:
    def __repr__(self):
        return "RHS"


_RHS = _Rhs()


def _axpy(target: Row, coef: Fraction, src: Row):
    for k, v in src.items():
        s = target.get(k, 0) - coef * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


def echelon(rows: Iterable[Row]) -> list[tuple[Hashable, Row]]:
    """Reduced row echelon form as a list of ``(pivot, row)`` with pivot entry 1."""
    pivots: dict = {}
    order: list = []
    for row in rows:
        r = {k: Fraction(v) for k, v in row.items() if v}
        # pivot rows are fully reduced, so one pass clears every pivot column
        for p in [k for k in r if k in pivots]:
            if p in r:
                _axpy(r, r[p], pivots[p])
        if not r:
            continue
        p = next((k for k in r if k is not _RHS), _RHS)
        c = r[p]
        if c != 1:
            r = {k: v / c for k, v in r.items()}
        for prow in pivots.values():
            if p in prow:
                _axpy(prow, prow[p], r)
        pivots[p] = r
        order.append(p)
    return [(p, pivots[p]) for p in order]


def rank(rows: Iterable[Row]) -> int:
    return len(echelon(rows))


def solve(rows: Sequence[Row], rhs: Sequence):
    """One solution ``x`` (dict) of ``rows . x = rhs`` with free variables zero, or None."""
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[_RHS] = Fraction(b)
        aug.append(r)
    sol = {}
    for p, r in echelon(aug):
        if p is _RHS:
            return None
        v = r.get(_RHS, 0)
        if v:
            sol[p] = v
    return sol


def nullspace(rows: Sequence[Row], unknowns: Sequence) -> list[Row]:
    """Basis of ``{x : rows · x = 0}`` over the listed unknowns."""
    ech = echelon(rows)
    pivot_set = {p for p, _ in ech}
    basis = []
    for f in unknowns:
        if f in pivot_set:
            continue
        vec = {f: Fraction(1)}
        for p, r in ech:
            c = r.get(f)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


def apply(rows: Sequence[Row], x: Row) -> list[Fraction]:
    return [sum((v * x.get(k, 0) for k, v in r.items()), Fraction(0)) for r in rows]


def columns_to_rows(columns: Sequence[Row]) -> list[Row]:
    """Transpose a list of sparse column vectors (keys are row labels) into sparse rows."""
    rows: dict = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                rows.setdefault(i, {})[j] = Fraction(v)
    return list(rows.values())


def rank_of_columns(columns: Sequence[Row]) -> int:
    return rank(columns_to_rows(columns))
