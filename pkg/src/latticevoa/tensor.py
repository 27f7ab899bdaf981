"""Tensor products of lattice algebras and their modules.

Basis keys are tuples of factor monomials; sectors are tuples of factor
sectors; weights add. The vertex operator of a pure tensor is the product of
the factor fields, so

    (v1 (x) ... (x) vp)_m = sum_{i1 + ... + ip = m - p + 1} (v1)_{i1} (x) ... (x) (vp)_{ip},

a sum that is finite on any fixed vector by lower truncation in each slot.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import cached_property, reduce

from .fock import SparseVector, StateVector
from .modules import l1_box
from .report import CheckReport
from .vertex import TruncationWindow


class TensorVector(SparseVector):
    """Element of ``W_1 (x) ... (x) W_p`` keyed by tuples of factor monomials."""

    __slots__ = ()


def pure_tensor(*factors: StateVector) -> TensorVector:
    out: dict = {}
    for combo in itertools.product(*(f.items() for f in factors)):
        key = tuple(k for k, _ in combo)
        c = Fraction(1)
        for _, fc in combo:
            c *= fc
        out[key] = out.get(key, 0) + c
    return TensorVector(out)


class TensorModule:
    """``W_1 (x) ... (x) W_p`` over ``V_1 (x) ... (x) V_p``.

    The Cartan space is ``h_1 ⊕ ... ⊕ h_p`` with pairing
    ``<h, beta> = sum_i <h_i, beta_i>_i``.
    """

    def __init__(self, factors):
        if not factors:
            raise ValueError("need at least one factor")
        self.factors = tuple(factors)

    def __repr__(self) -> str:
        return "TensorModule(" + " (x) ".join(repr(f) for f in self.factors) + ")"

    def __eq__(self, other):
        return isinstance(other, TensorModule) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    @cached_property
    def algebra(self) -> "TensorModule":
        algs = tuple(f.algebra for f in self.factors)
        if algs == self.factors:
            return self
        return TensorModule(algs)

    @property
    def is_algebra(self) -> bool:
        return self.algebra is self

    @property
    def grading_ranks(self) -> tuple[int, ...]:
        return tuple(f.rank for f in self.factors)

    def vacuum(self) -> TensorVector:
        return pure_tensor(*(f.vacuum() for f in self.factors))

    def conformal_vector(self) -> TensorVector:
        total = TensorVector()
        for i in range(len(self.factors)):
            parts = [f.vacuum() for f in self.factors]
            parts[i] = self.factors[i].conformal_vector()
            total = total + pure_tensor(*parts)
        return total

    def zero_sector(self):
        return tuple(f.zero_sector() for f in self.factors)

    def embed(self, i: int, v: StateVector) -> TensorVector:
        """``1 (x) ... (x) v (x) ... (x) 1`` with ``v`` in slot ``i``."""
        parts = [f.vacuum() for f in self.factors]
        parts[i] = v
        return pure_tensor(*parts)

    def generators(self) -> list[tuple[str, TensorVector]]:
        out = []
        for i, f in enumerate(self.factors):
            for name, v in f.generators():
                out.append((f"[{i + 1}]{name}", self.embed(i, v)))
        return out

    # -- grading --------------------------------------------------------
    def weight(self, key) -> Fraction:
        return sum((f.weight(k) for f, k in zip(self.factors, key)), Fraction(0))

    def sector(self, key):
        return tuple(f.sector(k) for f, k in zip(self.factors, key))

    def min_weight(self, sector) -> Fraction:
        return sum((f.min_weight(s) for f, s in zip(self.factors, sector)), Fraction(0))

    def add_sectors(self, a, b):
        return tuple(f.add_sectors(x, y) for f, x, y in zip(self.factors, a, b))

    def contains_sector(self, sector) -> bool:
        return all(f.contains_sector(s) for f, s in zip(self.factors, sector))

    def coset_of(self, sector):
        return tuple(f.coset_of(s) for f, s in zip(self.factors, sector))

    def sectors(self, radius: int = 1) -> list:
        """Coset representatives shifted by the L1-ball of the orthogonal-sum lattice."""
        ranks = self.grading_ranks
        out = []
        for reps in itertools.product(*([c.rep for c in f.cosets] for f in self.factors)):
            for shift in l1_box(sum(ranks), radius):
                sec, off = [], 0
                for rep, r in zip(reps, ranks):
                    sec.append(tuple(x + s for x, s in zip(rep, shift[off:off + r])))
                    off += r
                out.append(tuple(sec))
        return out

    def window(self, max_weight, radius: int = 1) -> TruncationWindow:
        return TruncationWindow(Fraction(max_weight), frozenset(self.sectors(radius)))

    def basis(self, sector, weight) -> list[tuple]:
        if not self.contains_sector(sector):
            return []
        weight = Fraction(weight)
        mins = [f.min_weight(s) for f, s in zip(self.factors, sector)]
        extra = weight - sum(mins)
        if extra < 0 or extra.denominator != 1:
            return []
        out = []
        for split in _compositions(int(extra), len(self.factors)):
            pieces = [f.basis(s, mw + k) for f, s, mw, k in zip(self.factors, sector, mins, split)]
            out.extend(itertools.product(*pieces))
        return out

    def cells(self, win: TruncationWindow) -> list[tuple]:
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
    def _slot_modes(self, vkey, m: int, wkey) -> dict:
        """``(u_1 (x) ... (x) u_p)_m`` on one basis tensor, by left-folded slot sums."""
        p = len(self.factors)
        his = []
        for f, u, w in zip(self.factors, vkey, wkey):
            hi = f.max_mode(StateVector.basis(u), StateVector.basis(w))
            his.append(hi)
        total = m - (p - 1)
        # partial results: {(prefix key tuple): coeff}, indexed by the mode sum used so far
        partial = {0: {(): Fraction(1)}}
        for i, (f, u, w) in enumerate(zip(self.factors, vkey, wkey)):
            rest_hi = sum(his[i + 1:])
            new: dict = {}
            for used, prefix in partial.items():
                if i == p - 1:
                    choices = [total - used]
                else:
                    lo = total - used - rest_hi
                    choices = range(lo, his[i] + 1)
                for j in choices:
                    if j > his[i]:
                        continue
                    out = f.mode(StateVector.basis(u), j, StateVector.basis(w))
                    if not out:
                        continue
                    bucket = new.setdefault(used + j, {})
                    for pk, pc in prefix.items():
                        for k, c in out.items():
                            key = pk + (k,)
                            bucket[key] = bucket.get(key, 0) + pc * c
            partial = new
            if not partial:
                return {}
        return {k: c for k, c in partial.get(total, {}).items() if c}

    def mode(self, v: TensorVector, m: int, w: TensorVector, win: TruncationWindow | None = None) -> TensorVector:
        out: dict = {}
        for vk, vc in v.items():
            for wk, wc in w.items():
                for key, c in self._slot_modes(vk, m, wk).items():
                    val = out.get(key, 0) + vc * wc * c
                    if val:
                        out[key] = val
                    else:
                        out.pop(key, None)
        if win is not None:
            for key in out:
                win.guard(self.weight(key), self.sector(key), "tensor_mode_action")
        return TensorVector._raw(out)

    def h_basis(self) -> list[tuple]:
        out = []
        for i, f in enumerate(self.factors):
            for h in f.h_basis():
                out.append(tuple(h if j == i else g.lattice.zero for j, g in enumerate(self.factors)))
        return out

    def pairing(self, h, sector):
        return sum(f.pairing(hi, si) for f, hi, si in zip(self.factors, h, sector))

    def zero_mode(self, h, w: TensorVector) -> TensorVector:
        """``sum_i h_i(0)`` acting slotwise."""
        out: dict = {}
        for key, c in w.items():
            val = self.pairing(h, self.sector(key))
            if val:
                out[key] = c * val
        return TensorVector(out)

    def sector_from_eigenvalues(self, eigenvalues) -> tuple:
        out, off = [], 0
        for f in self.factors:
            out.append(f.sector_from_eigenvalues(eigenvalues[off:off + f.rank]))
            off += f.rank
        return tuple(out)

    def basis_vector(self, key) -> TensorVector:
        return TensorVector({key: 1})

    def new_vector(self, terms: dict) -> TensorVector:
        return TensorVector(terms)

    def max_mode(self, v, w) -> int | None:
        alg = self.algebra
        best = None
        for vk in v.keys():
            for wk in w.keys():
                s = self.add_sectors(alg.sector(vk), self.sector(wk))
                b = int((alg.weight(vk) + self.weight(wk) - 1 - self.min_weight(s)) // 1)
                best = b if best is None else max(best, b)
        return best


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _as_module(x):
    from .lattice import EvenLattice
    from .modules import lattice_algebra

    if isinstance(x, EvenLattice):
        return lattice_algebra(x)
    return x


def tensor_algebra(factors) -> TensorModule:
    """``V_1 (x) ... (x) V_p`` from lattices or algebra contexts (folded left-associatively)."""
    mods = [_as_module(f).algebra for f in factors]
    return reduce(lambda acc, f: TensorModule(acc.factors + (f,)), mods[1:], TensorModule((mods[0],)))


def tensor_module(modules) -> TensorModule:
    mods = [_as_module(f) for f in modules]
    return reduce(lambda acc, f: TensorModule(acc.factors + (f,)), mods[1:], TensorModule((mods[0],)))


def tensor_mode_action(ctx: TensorModule, v: TensorVector, m: int, w: TensorVector,
                       win: TruncationWindow | None = None) -> TensorVector:
    return ctx.mode(v, m, w, win)


def expand_tensor_mode(ctx: TensorModule, head: TensorVector, last: StateVector, m: int,
                       target: TensorVector, win: TruncationWindow | None = None) -> CheckReport:
    """Compare ``(a (x) b)_m target`` with its residue expansion.

    ``head`` lives in the first ``p - 1`` slots (given as a tensor over those
    slots) and ``last`` in slot ``p``. With ``A = head (x) 1`` and ``B = 1 (x) last``:

        (A (x) B)_m = sum_{k>=0} A_{-1-k} B_{m+k} + sum_{k>=0} B_{m-1-k} A_k,

    each sum cut off where lower truncation on ``target`` kills it.
    """
    p = len(ctx.factors)
    alg = ctx.algebra
    one_last = ctx.factors[-1].vacuum()
    a = TensorVector({hk + (lk,): hc * lc for hk, hc in head.items() for lk, lc in one_last.items()})
    b = alg.embed(p - 1, last)
    full = TensorVector({hk + (lk,): hc * lc for hk, hc in head.items() for lk, lc in last.items()})
    report = CheckReport("residue_expansion")
    direct = ctx.mode(full, m, target, win)
    expansion = TensorVector()
    kb = ctx.max_mode(b, target)
    if kb is not None:
        for k in range(0, max(kb - m, -1) + 1):
            expansion = expansion + ctx.mode(a, -1 - k, ctx.mode(b, m + k, target))
    ka = ctx.max_mode(a, target)
    if ka is not None:
        for k in range(0, max(ka, -1) + 1):
            expansion = expansion + ctx.mode(b, m - 1 - k, ctx.mode(a, k, target))
    report.record(
        {"m": m, "head": head.render(), "last": last.render(), "target": target.render()},
        direct, expansion,
    )
    report.details["nonzero"] = int(bool(direct))
    return report


def check_residue_expansion(ctx: TensorModule, count: int = 50, seed: int = 0, max_weight=3,
                            modes=range(-3, 4)) -> CheckReport:
    """Seeded sample of :func:`expand_tensor_mode` instances.

    Heads and last-slot vectors are algebra basis vectors of weight at most 2;
    targets are module basis vectors of weight at most ``max_weight``.
    """
    from .axioms import window_basis

    alg = ctx.algebra
    p = len(ctx.factors)
    head_ctx = TensorModule(alg.factors[:-1])
    heads = window_basis(head_ctx, head_ctx.window(2, 1))
    lasts = window_basis(alg.factors[-1], alg.factors[-1].window(2, 1))
    targets = window_basis(ctx, ctx.window(max_weight, 1))
    rng = random.Random(seed)
    report = CheckReport("residue_expansion")
    modes = list(modes)
    nonzero = 0
    for _ in range(count):
        head, last = rng.choice(heads), rng.choice(lasts)
        m, target = rng.choice(modes), rng.choice(targets)
        one = expand_tensor_mode(ctx, head, last, m, target)
        report.merge(one)
        nonzero += one.details["nonzero"]
    report.details["nonzero"] = nonzero
    report.details["factors"] = p
    report.details["seed"] = seed
    return report
