"""Graded dimensions and character tables of the double grading."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .fock import as_sector, fock_offset
from .lattice import EvenLattice
from .report import CheckReport
from .vertex import TruncationWindow


@lru_cache(maxsize=None)
def _partition_table(colors: int, upto: int) -> tuple[int, ...]:
    # coin-change DP: one factor 1/(1-q^k) per (part size k, color)
    table = [1] + [0] * upto
    for k in range(1, upto + 1):
        for _ in range(colors):
            for n in range(k, upto + 1):
                table[n] += table[n - k]
    return tuple(table)


def colored_partition_count(n: int, colors: int) -> int:
    """Coefficient of ``q^n`` in ``prod_{k>=1} (1 - q^k)^(-colors)``."""
    if n < 0:
        return 0
    if colors == 0:
        return int(n == 0)
    size = max(32, 1 << (n.bit_length()))
    return _partition_table(colors, size)[n]


def graded_dimension(L: EvenLattice, sector, weight) -> int:
    off = fock_offset(L, as_sector(sector), weight)
    return 0 if off is None else colored_partition_count(off, L.rank)


@dataclass
class CharacterSeries:
    """Table ``(sector, weight) -> dim`` with zero cells omitted."""

    entries: dict = field(default_factory=dict)
    max_weight: Fraction = Fraction(0)

    def total_by_weight(self) -> dict:
        out: dict = {}
        for (_, w), d in self.entries.items():
            out[w] = out.get(w, 0) + d
        return dict(sorted(out.items()))

    def __add__(self, other: "CharacterSeries") -> "CharacterSeries":
        out = dict(self.entries)
        for k, d in other.entries.items():
            out[k] = out.get(k, 0) + d
        return CharacterSeries(out, max(self.max_weight, other.max_weight))

    def rows(self) -> list[tuple]:
        return sorted(self.entries.items(), key=lambda kv: (kv[0][1], _sector_text(kv[0][0])))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["sector", "weight", "dimension"])
        for (s, w), d in self.rows():
            writer.writerow([_sector_text(s), str(w), d])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "max_weight": str(self.max_weight),
            "cells": [{"sector": _sector_text(s), "weight": str(w), "dimension": d} for (s, w), d in self.rows()],
        }


def _sector_text(s) -> str:
    if s and isinstance(s[0], tuple):
        return " | ".join(_sector_text(x) for x in s)
    return " ".join(str(x) for x in s)


def character_series(ctx, win: TruncationWindow) -> CharacterSeries:
    """Count basis vectors of every cell inside the window."""
    entries = {}
    for sector, weight in ctx.cells(win):
        d = len(ctx.basis(sector, weight))
        if d:
            entries[(sector, weight)] = d
    return CharacterSeries(entries, win.max_weight)


def factor_dimension(ctx, sector, weight) -> int:
    """Cell dimension of a lattice-module context from the partition-count DP."""
    if not ctx.contains_sector(sector):
        return 0
    return graded_dimension(ctx.lattice, sector, weight)


def character_convolution_check(W1, W2, win: TruncationWindow) -> CheckReport:
    """Tensor character (by tensor basis enumeration) versus the convolution of factor characters.

    ``W1`` and ``W2`` are lattice-module contexts; ``win`` is a window on the
    tensor product with tuple sectors.
    """
    from .tensor import TensorModule

    report = CheckReport("character_convolution")
    T = TensorModule((W1, W2))
    lhs = character_series(T, win)
    rhs = {}
    for (s1, s2), w in T.cells(win):
        lo1, lo2 = W1.min_weight(s1), W2.min_weight(s2)
        total = 0
        w1 = lo1
        while w1 <= w - lo2:
            total += factor_dimension(W1, s1, w1) * factor_dimension(W2, s2, w - w1)
            w1 += 1
        if total:
            rhs[((s1, s2), w)] = total
    for cell in sorted(set(lhs.entries) | set(rhs), key=repr):
        report.record({"sector": _sector_text(cell[0]), "weight": str(cell[1])},
                      lhs.entries.get(cell, 0), rhs.get(cell, 0))
    report.details["cells"] = len(lhs.entries)
    return report
