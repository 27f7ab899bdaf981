"""Even lattices, dual cosets and the sign cocycle of the lattice vertex algebra.

Coordinates are always taken in the lattice basis ``b_1, ..., b_r``. Vectors of
the dual lattice have rational coordinates ``lam`` with ``gram @ lam`` integral.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Sequence

Vector = tuple  # tuple of int or Fraction coordinates


class LatticeError(ValueError):
    """Base class for invalid lattice input."""


class NotSymmetric(LatticeError):
    pass


class NotEven(LatticeError):
    pass


class Degenerate(LatticeError):
    pass


class NotInDual(LatticeError):
    pass


def integer_determinant(mat: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination; exact for integer matrices."""
    a = [list(row) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(mat: Sequence[Sequence[int]]):
    """Return ``(diag, P, Q)`` with ``P @ mat @ Q`` diagonal and P, Q unimodular.

    The diagonal entries are nonnegative and each divides the next.
    """
    a = [list(row) for row in mat]
    n, m = len(a), len(a[0]) if a else 0
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Q = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        P[dst] = [x + k * y for x, y in zip(P[dst], P[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in Q:
            row[dst] += k * row[src]

    for t in range(min(n, m)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, n) for j in range(t, m) if a[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            piv = a[t][t]
            clean = True
            for i in range(t + 1, n):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // piv))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, m):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // piv))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, m) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            P[t] = [-x for x in P[t]]
    diag = [a[i][i] for i in range(min(n, m))]
    return diag, P, Q


@dataclass(frozen=True)
class DualCoset:
    """A class ``rep + L`` of the discriminant group ``L°/L``."""

    rep: tuple[Fraction, ...]
    order: int

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.rep) + ")"


@dataclass(frozen=True)
class EvenLattice:
    """Nondegenerate even lattice given by its integer Gram matrix."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.gram
        r = len(g)
        if r == 0 or any(len(row) != r for row in g):
            raise NotSymmetric("Gram matrix must be square and nonempty")
        if any(g[i][j] != g[j][i] for i in range(r) for j in range(r)):
            raise NotSymmetric("Gram matrix is not symmetric")
        if any(g[i][i] % 2 for i in range(r)):
            raise NotEven("diagonal entries must be even")
        if integer_determinant(g) == 0:
            raise Degenerate("Gram matrix is singular")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return integer_determinant(self.gram)

    @cached_property
    def zero(self) -> tuple[Fraction, ...]:
        return (Fraction(0),) * self.rank

    def basis_vector(self, i: int, scale=1) -> tuple[Fraction, ...]:
        return tuple(Fraction(scale if j == i else 0) for j in range(self.rank))

    def apply_gram(self, x: Vector) -> tuple:
        return tuple(sum(gij * xj for gij, xj in zip(row, x)) for row in self.gram)

    def pair(self, x: Vector, y: Vector):
        """Bilinear form in lattice coordinates."""
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(len(x)) if x[i] for j in range(len(y)) if y[j])

    def norm(self, x: Vector):
        return self.pair(x, x)

    @cached_property
    def inverse_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        r = self.rank
        aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(r)]
               for i, row in enumerate(self.gram)]
        for col in range(r):
            piv = next(i for i in range(col, r) if aug[i][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [v * inv for v in aug[col]]
            for i in range(r):
                if i != col and aug[i][col]:
                    f = aug[i][col]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
        return tuple(tuple(row[r:]) for row in aug)

    @cached_property
    def _snf(self):
        return smith_normal_form(self.gram)

    @property
    def elementary_divisors(self) -> list[int]:
        return list(self._snf[0])

    def in_dual(self, x: Vector) -> bool:
        return all(Fraction(v).denominator == 1 for v in self.apply_gram(x))

    def in_lattice(self, x: Vector) -> bool:
        return all(Fraction(v).denominator == 1 for v in x)

    def coset_label(self, x: Vector) -> tuple[int, ...]:
        """Coordinates of ``x + L`` in the decomposition of ``L°/L`` into cyclic groups."""
        if not self.in_dual(x):
            raise NotInDual(f"{tuple(str(v) for v in x)} is not in the dual lattice")
        diag, P, _ = self._snf
        y = [int(v) for v in self.apply_gram(x)]
        u = [sum(p * yj for p, yj in zip(row, y)) for row in P]
        return tuple(ui % d for ui, d in zip(u, diag))

    def _rep_from_label(self, z: Sequence[int]) -> tuple[Fraction, ...]:
        diag, _, Q = self._snf
        scaled = [Fraction(zi, d) for zi, d in zip(z, diag)]
        return tuple(sum(q * s for q, s in zip(row, scaled)) for row in Q)

    def coset_rep(self, x: Vector) -> tuple[Fraction, ...]:
        """Canonical representative of ``x + L``; ``x - coset_rep(x)`` is in L."""
        return self._rep_from_label(self.coset_label(x))

    def coset(self, x: Vector) -> DualCoset:
        z = self.coset_label(x)
        diag = self.elementary_divisors
        order = 1
        for zi, d in zip(z, diag):
            order = lcm(order, d // gcd(zi, d))
        return DualCoset(self._rep_from_label(z), order)

    def describe(self) -> str:
        rows = "; ".join(" ".join(str(v) for v in row) for row in self.gram)
        return f"rank {self.rank}, det {self.det}, gram {rows}"

    def to_json(self) -> str:
        return json.dumps({"gram": [list(row) for row in self.gram]})


def build_even_lattice(gram: Sequence[Sequence[int]]) -> EvenLattice:
    rows = []
    for row in gram:
        out = []
        for v in row:
            if isinstance(v, bool) or int(v) != v:
                raise LatticeError("Gram entries must be integers")
            out.append(int(v))
        rows.append(tuple(out))
    return EvenLattice(tuple(rows))


def orthogonal_sum(*lattices: EvenLattice) -> EvenLattice:
    r = sum(L.rank for L in lattices)
    g = [[0] * r for _ in range(r)]
    off = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                g[off + i][off + j] = L.gram[i][j]
        off += L.rank
    return build_even_lattice(g)


def discriminant_group(L: EvenLattice) -> list[DualCoset]:
    """All classes of ``L°/L``, zero class first, in a fixed order."""
    diag = L.elementary_divisors
    out = []
    for z in itertools.product(*(range(d) for d in diag)):
        order = 1
        for zi, d in zip(z, diag):
            order = lcm(order, d // gcd(zi, d))
        out.append(DualCoset(L._rep_from_label(z), order))
    return out


@dataclass(frozen=True)
class EpsilonCocycle:
    """Bimultiplicative sign ``eps(a, b) = prod_{i > j} (-1)^(a_i b_j <b_i, b_j>)``.

    A dual-lattice second argument ``b`` is replaced by its lattice part
    ``b - coset_rep(b)``, which keeps the twisted group algebra action on each
    coset module associative.
    """

    lattice: EvenLattice

    def __call__(self, a: Vector, b: Vector) -> int:
        L = self.lattice
        if not L.in_lattice(b):
            rep = L.coset_rep(b)
            b = tuple(x - y for x, y in zip(b, rep))
        g = L.gram
        exponent = 0
        for i in range(L.rank):
            if a[i]:
                for j in range(i):
                    exponent += a[i] * b[j] * g[i][j]
        return -1 if int(exponent) % 2 else 1


def epsilon(c: EpsilonCocycle, a: Vector, b: Vector) -> int:
    return c(a, b)
