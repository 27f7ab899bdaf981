"""Fock monomials ``b_c1(-n1)...b_ck(-nk) e^lam`` and exact sparse state vectors.

A monomial stores its creation modes as a tuple of ``(n, color)`` pairs sorted
in descending order, so that equal monomials compare equal structurally.
Colors are 0-based indices into the lattice basis; text rendering is 1-based.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from .lattice import EvenLattice

Modes = tuple  # tuple[tuple[int, int], ...]


class FockMonomial(NamedTuple):
    modes: Modes
    sector: tuple

    def render(self) -> str:
        parts = [f"b{c + 1}(-{n})" for n, c in self.modes]
        beta = ",".join(str(x) for x in self.sector)
        return " ".join(parts + [f"| e({beta})"])


class DoubleDegree(NamedTuple):
    weight: Fraction
    sector: tuple


def canonical_modes(modes: Iterable[tuple[int, int]]) -> Modes:
    return tuple(sorted(modes, reverse=True))


def merge_modes(a: Modes, b: Modes) -> Modes:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


def remove_mode(modes: Modes, mode: tuple[int, int], count: int = 1) -> Modes:
    out = list(modes)
    for _ in range(count):
        out.remove(mode)
    return tuple(out)


class Sector(tuple):
    """Tuple of Fraction coordinates that remembers its hash.

    Equal to (and hashing like) the plain tuple; Fraction hashing is slow and
    sectors sit inside every basis key.
    """

    def __new__(cls, coords):
        self = super().__new__(cls, coords)
        self._hash = tuple.__hash__(self)
        return self

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return tuple.__repr__(self)

    def __reduce__(self):
        return (Sector, (tuple(self),))


def as_sector(coords) -> tuple[Fraction, ...]:
    if type(coords) is Sector:
        return coords
    return Sector(Fraction(x) for x in coords)


class SparseVector:
    """Finite linear combination of hashable basis keys with Fraction coefficients.

    Instances are treated as immutable; arithmetic returns new vectors.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                if c:
                    clean[k] = clean.get(k, 0) + Fraction(c)
            clean = {k: c for k, c in clean.items() if c}
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def items(self):
        return self.terms.items()

    def keys(self):
        return self.terms.keys()

    def coefficient(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def __iter__(self) -> Iterator:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparseVector):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._raw(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._raw({k: -c for k, c in self.terms.items()})

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return self._raw({})
        return self._raw({k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def is_multiple_of(self, other):
        """Return ``s`` with ``self == s * other`` or None."""
        if not other:
            return Fraction(0) if not self else None
        if not self:
            return Fraction(0)
        if self.terms.keys() != other.terms.keys():
            return None
        k0 = next(iter(other.terms))
        s = self.terms[k0] / other.terms[k0]
        return s if all(self.terms[k] == s * c for k, c in other.terms.items()) else None

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*[{_render_key(k)}]" for k, c in sorted(self.terms.items(), key=lambda kc: repr(kc[0])))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.render()})"


def _render_key(k) -> str:
    if isinstance(k, FockMonomial):
        return k.render()
    return " (x) ".join(_render_key(x) for x in k)


class StateVector(SparseVector):
    """Element of ``V_L`` or of a module ``V_{L+beta}``."""

    __slots__ = ()

    @classmethod
    def basis(cls, mono: FockMonomial, coeff=1) -> "StateVector":
        return cls({mono: coeff})


def monomial(modes: Iterable[tuple[int, int]], sector) -> FockMonomial:
    """Build a canonical monomial from ``(color, n)`` pairs, colors 0-based."""
    return FockMonomial(canonical_modes((n, c) for c, n in modes), as_sector(sector))


def state(modes=(), sector=None, coeff=1, lattice: EvenLattice | None = None) -> StateVector:
    if sector is None:
        sector = lattice.zero
    return StateVector.basis(monomial(modes, sector), coeff)


def vacuum(L: EvenLattice) -> StateVector:
    return StateVector.basis(FockMonomial((), L.zero))


def weight_of(L: EvenLattice, m: FockMonomial) -> Fraction:
    return sum((n for n, _ in m.modes), Fraction(0)) + Fraction(L.norm(m.sector)) / 2


def double_degree(L: EvenLattice, m: FockMonomial) -> DoubleDegree:
    return DoubleDegree(weight_of(L, m), m.sector)


def heisenberg_act_monomial(L: EvenLattice, h, n: int, mono: FockMonomial) -> dict:
    """``h(n)`` on one monomial, as a raw ``{monomial: coeff}`` dict."""
    out: dict = {}
    if n < 0:
        for c, hc in enumerate(h):
            if hc:
                key = FockMonomial(merge_modes(mono.modes, ((-n, c),)), mono.sector)
                out[key] = out.get(key, 0) + Fraction(hc)
    elif n == 0:
        val = L.pair(h, mono.sector)
        if val:
            out[mono] = Fraction(val)
    else:
        hg = L.apply_gram(h)
        for (k, c), mult in Counter(mono.modes).items():
            if k == n and hg[c]:
                key = FockMonomial(remove_mode(mono.modes, (k, c)), mono.sector)
                out[key] = out.get(key, 0) + Fraction(mult * n) * hg[c]
    return out


def heisenberg_act(L: EvenLattice, h, n: int, v: StateVector) -> StateVector:
    """Action of ``h(n)`` for ``h`` in the Cartan space (lattice coordinates)."""
    out: dict = {}
    for mono, coeff in v.items():
        for key, c in heisenberg_act_monomial(L, h, n, mono).items():
            out[key] = out.get(key, 0) + coeff * c
    return StateVector({k: c for k, c in out.items() if c})


@lru_cache(maxsize=None)
def colored_partitions(total: int, colors: int, bound: tuple[int, int] | None = None) -> tuple:
    """All multisets of ``(n, color)`` parts with sum ``total``, each sorted descending."""
    if total == 0:
        return ((),)
    if bound is None:
        bound = (total, colors - 1)
    out = []
    for n in range(min(total, bound[0]), 0, -1):
        top = bound[1] if n == bound[0] else colors - 1
        for c in range(top, -1, -1):
            for rest in colored_partitions(total - n, colors, (n, c)):
                out.append(((n, c),) + rest)
    return tuple(out)


def fock_offset(L: EvenLattice, sector, weight):
    """Return ``weight - <beta,beta>/2`` as an int, or None if not a nonnegative integer."""
    off = Fraction(weight) - Fraction(L.norm(sector)) / 2
    if off.denominator != 1 or off < 0:
        return None
    return int(off)


def basis_of(L: EvenLattice, sector, weight) -> list[FockMonomial]:
    sector = as_sector(sector)
    off = fock_offset(L, sector, weight)
    if off is None:
        return []
    return [FockMonomial(p, sector) for p in colored_partitions(off, L.rank)]


def project_degree(L: EvenLattice, v: StateVector, d: DoubleDegree) -> StateVector:
    w, s = Fraction(d.weight), as_sector(d.sector)
    return StateVector._raw({m: c for m, c in v.items() if m.sector == s and weight_of(L, m) == w})
