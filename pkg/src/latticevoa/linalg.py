"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``{index: Fraction}`` with no zero entries. Indices only
need to be mutually comparable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


def axpy(y: dict, a, x: dict) -> dict:
    """Return ``y + a*x`` as a new dict."""
    out = dict(y)
    for k, v in x.items():
        s = out.get(k, 0) + a * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incremental row-echelon basis; each stored row has a distinct leading index."""

    def __init__(self):
        self.rows: dict = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        v = {k: Fraction(c) for k, c in v.items() if c}
        while v:
            lead = min(v)
            row = self.rows.get(lead)
            if row is None:
                return v
            v = axpy(v, -v[lead], row)
        return v

    def add(self, v: dict) -> dict | None:
        """Insert ``v``; return its reduced (new) form, or None if already in the span."""
        r = self.reduce(v)
        if not r:
            return None
        lead = min(r)
        inv = 1 / r[lead]
        r = {k: c * inv for k, c in r.items()}
        self.rows[lead] = r
        return r

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def basis(self) -> list[dict]:
        return [self.rows[k] for k in sorted(self.rows)]


def rank(rows: Iterable[dict]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rank


def nullity(rows: Iterable[dict], n_unknowns: int, lower_bound: int = 0) -> int:
    """``n_unknowns - rank(rows)``.

    With ``lower_bound`` known a priori (e.g. scalars in a commutant), the scan
    stops as soon as the rank reaches ``n_unknowns - lower_bound``; the answer is
    then exact.
    """
    e = Echelon()
    target = n_unknowns - lower_bound
    for r in rows:
        if e.rank >= target:
            break
        e.add(r)
    return n_unknowns - e.rank


def nullspace(rows: Iterable[dict], unknowns: list) -> list[dict]:
    """Basis of ``{x : r . x = 0 for all rows}`` via a reduced echelon form."""
    e = Echelon()
    for r in rows:
        e.add(r)
    # back-substitute to reduced form
    leads = sorted(e.rows, reverse=True)
    red = {}
    for lead in leads:
        row = e.rows[lead]
        for k in list(row):
            if k != lead and k in red:
                row = axpy(row, -row[k], red[k])
        red[lead] = row
    free = [u for u in unknowns if u not in red]
    basis = []
    for f in free:
        vec = {f: Fraction(1)}
        for lead, row in red.items():
            c = row.get(f)
            if c:
                vec[lead] = -c
        basis.append(vec)
    return basis


def mat_vec(matrix: dict, v: dict) -> dict:
    """``matrix`` is column-major ``{col: {row: val}}``."""
    out: dict = {}
    for j, c in v.items():
        col = matrix.get(j)
        if col:
            for i, a in col.items():
                s = out.get(i, 0) + a * c
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
    return out


def transpose(matrix: dict) -> dict:
    out: dict = {}
    for j, col in matrix.items():
        for i, a in col.items():
            out.setdefault(i, {})[j] = a
    return out
