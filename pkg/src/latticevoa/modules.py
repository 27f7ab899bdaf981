"""Module contexts: ``V_M`` for a union ``M`` of cosets of ``L`` in ``L°``.

A context bundles everything the checkers need: the algebra it is a module
for, mode actions, weights and sectors of basis keys, the cell structure of
the double grading and the Cartan zero modes ``h(0)``.

The tensor-product context in :mod:`latticevoa.tensor` has the same surface.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property

from .fock import (
    FockMonomial,
    StateVector,
    as_sector,
    basis_of,
    heisenberg_act,
    vacuum,
    weight_of,
)
from .lattice import DualCoset, EvenLattice, NotInDual, discriminant_group
from .vertex import TruncationWindow, conformal_vector, general_vertex_mode


def l1_box(rank: int, radius: int):
    """Integer vectors with L1 norm at most ``radius``, in a fixed order."""
    out = []
    for c in itertools.product(range(-radius, radius + 1), repeat=rank):
        if sum(abs(x) for x in c) <= radius:
            out.append(c)
    out.sort(key=lambda c: (sum(abs(x) for x in c), [-x for x in c]))
    return out


class LatticeModule:
    """The strongly graded ``V_L``-module ``⊕_{gamma in cosets} V_{L+gamma}``.

    With the single zero coset this is ``V_L`` itself; with no cosets it is
    the zero module.
    """

    def __init__(self, lattice: EvenLattice, cosets: tuple[DualCoset, ...]):
        self.lattice = lattice
        reps = []
        for c in cosets:
            rep = as_sector(c.rep)
            if not lattice.in_dual(rep):
                raise NotInDual(f"{c} is not in the dual lattice")
            if lattice.coset_rep(rep) in reps:
                raise ValueError(f"coset {c} listed twice")
            reps.append(lattice.coset_rep(rep))
        self.cosets = tuple(DualCoset(r, lattice.coset(r).order) for r in reps)

    def __repr__(self) -> str:
        return f"LatticeModule({self.lattice.describe()}; cosets {[str(c) for c in self.cosets]})"

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticeModule) and (self.lattice, self.cosets) == (other.lattice, other.cosets)

    def __hash__(self) -> int:
        return hash((self.lattice, self.cosets))

    # -- algebra side ---------------------------------------------------
    @cached_property
    def algebra(self) -> "LatticeModule":
        zero = discriminant_group(self.lattice)[0]
        if self.cosets == (zero,):
            return self
        return LatticeModule(self.lattice, (zero,))

    @property
    def is_algebra(self) -> bool:
        return self.algebra is self

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def vacuum(self) -> StateVector:
        return vacuum(self.lattice)

    def conformal_vector(self) -> StateVector:
        return conformal_vector(self.lattice)

    def zero_sector(self):
        return self.lattice.zero

    def generators(self) -> list[tuple[str, StateVector]]:
        """Heisenberg generators ``b_i(-1)1`` and lattice states ``e^{±b_i}``."""
        L = self.lattice
        out = []
        for i in range(L.rank):
            out.append((f"b{i + 1}(-1)1", StateVector.basis(FockMonomial(((1, i),), L.zero))))
        for i in range(L.rank):
            for s in (1, -1):
                name = f"e^({'+' if s > 0 else '-'}b{i + 1})"
                out.append((name, StateVector.basis(FockMonomial((), L.basis_vector(i, s)))))
        return out

    # -- grading --------------------------------------------------------
    def weight(self, key: FockMonomial) -> Fraction:
        return weight_of(self.lattice, key)

    def sector(self, key: FockMonomial):
        return key.sector

    def min_weight(self, sector) -> Fraction:
        return Fraction(self.lattice.norm(sector)) / 2

    def add_sectors(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def contains_sector(self, sector) -> bool:
        L = self.lattice
        if not L.in_dual(sector):
            return False
        return L.coset_rep(sector) in {c.rep for c in self.cosets}

    def coset_of(self, sector) -> tuple:
        return self.lattice.coset_rep(sector)

    def sectors(self, radius: int = 1) -> list:
        out = []
        for c in self.cosets:
            for shift in l1_box(self.rank, radius):
                out.append(tuple(r + s for r, s in zip(c.rep, shift)))
        return out

    def window(self, max_weight, radius: int = 1) -> TruncationWindow:
        return TruncationWindow(Fraction(max_weight), frozenset(self.sectors(radius)))

    def basis(self, sector, weight) -> list[FockMonomial]:
        if not self.contains_sector(sector):
            return []
        return basis_of(self.lattice, sector, weight)

    def cells(self, win: TruncationWindow) -> list[tuple]:
        """Nonzero cells ``(sector, weight)`` inside the window, deterministically ordered."""
        sectors = win.sectors if win.sectors is not None else self.sectors(1)
        out = []
        for s in sorted(sectors):
            if not self.contains_sector(s):
                continue
            w = self.min_weight(s)
            while w <= win.max_weight:
                out.append((s, w))
                w += 1
        return out

    # -- actions --------------------------------------------------------
    def mode(self, v: StateVector, m: int, w: StateVector, win: TruncationWindow | None = None) -> StateVector:
        return general_vertex_mode(self.lattice, v, m, w, win)

    def h_basis(self) -> list[tuple]:
        return [self.lattice.basis_vector(i) for i in range(self.rank)]

    def pairing(self, h, sector):
        return self.lattice.pair(h, sector)

    def zero_mode(self, h, w: StateVector) -> StateVector:
        return heisenberg_act(self.lattice, h, 0, w)

    def sector_from_eigenvalues(self, eigenvalues) -> tuple:
        """Invert ``sector -> (<b_i, sector>)_i`` using the nondegenerate form."""
        ginv = self.lattice.inverse_gram
        return tuple(sum(g * Fraction(e) for g, e in zip(row, eigenvalues)) for row in ginv)

    def basis_vector(self, key) -> StateVector:
        return StateVector.basis(key)

    def new_vector(self, terms: dict) -> StateVector:
        return StateVector(terms)

    def max_mode(self, v, w) -> int | None:
        """Largest ``m`` with ``v_m w`` possibly nonzero (lower truncation bound)."""
        alg = self.algebra
        best = None
        for vk in v.keys():
            for wk in w.keys():
                s = self.add_sectors(alg.sector(vk), self.sector(wk))
                b = alg.weight(vk) + self.weight(wk) - 1 - self.min_weight(s)
                b = int(b // 1)
                best = b if best is None else max(best, b)
        return best


def build_coset_module(L: EvenLattice, beta) -> LatticeModule:
    """``V_{L+beta}`` for ``beta`` in the dual lattice (a DualCoset or coordinates)."""
    rep = beta.rep if isinstance(beta, DualCoset) else as_sector(beta)
    if not L.in_dual(rep):
        raise NotInDual(f"{tuple(str(x) for x in rep)} is not in the dual lattice")
    return LatticeModule(L, (L.coset(rep),))


def dual_lattice_module(L: EvenLattice) -> LatticeModule:
    """``V_{L°}`` presented as one module, not split into cosets."""
    return LatticeModule(L, tuple(discriminant_group(L)))


def lattice_algebra(L: EvenLattice) -> LatticeModule:
    return build_coset_module(L, L.zero)


def zero_module(L: EvenLattice) -> LatticeModule:
    return LatticeModule(L, ())
