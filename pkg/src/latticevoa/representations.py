"""Irreducibility, commutants, classification and decomposition at a window.

Everything here works with the compression of the sampled mode operators to
a finite window: each operator becomes an exact sparse matrix on the window
basis, with components leaving the window dropped. Verdicts are therefore
statements about the windowed operator algebra only ("irreducible-at-window").
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Any

from .characters import CharacterSeries, character_series
from .lattice import DualCoset, EvenLattice, discriminant_group, orthogonal_sum
from .linalg import Echelon, mat_vec, nullity, nullspace, transpose
from .modules import LatticeModule, build_coset_module
from .report import CheckReport, jsonable
from .tensor import TensorModule
from .vertex import ModeOperator, TruncationWindow


class InsufficientSample(RuntimeError):
    """The sampled closure neither spans the window nor yields a certificate."""


class NotDecomposableAtWindow(RuntimeError):
    """A coset-grouped piece failed the irreducibility check."""


@dataclass(frozen=True)
class OperatorSample:
    """Finite generating sample of module mode operators.

    ``closure_depth`` bounds the number of breadth-first rounds (word length)
    used when closing a subspace under the generators.
    """

    generators: tuple[ModeOperator, ...]
    closure_depth: int = 64
    labels: tuple[str, ...] = ()

    def describe(self) -> dict:
        return {"size": len(self.generators), "closure_depth": self.closure_depth, "labels": list(self.labels)}


def _window_span(ctx, win: TruncationWindow) -> int:
    cells = ctx.cells(win)
    if not cells:
        return 0
    return int(ceil(win.max_weight - min(w for _, w in cells)))


def default_sample(ctx, win: TruncationWindow, closure_depth: int = 64, virasoro_range: int = 2) -> OperatorSample:
    """Heisenberg modes ``h(n)``, lattice modes of ``e^{±b_i}`` and ``L(n)`` for ``|n| <= virasoro_range``.

    Modes are kept when their weight shift is at most the weight span ``N``
    of the window, so ``h(n)`` runs over ``|n| <= N``.
    """
    alg = ctx.algebra
    span = _window_span(ctx, win)
    gens, labels = [], []
    for name, g in alg.generators():
        wt = int(alg.weight(next(iter(g.keys()))))
        for m in range(wt - 1 - span, wt + span):
            gens.append(ModeOperator(ctx, g, m))
            labels.append(f"{name}_{m}")
    omega = alg.conformal_vector()
    for n in range(-virasoro_range, virasoro_range + 1):
        gens.append(ModeOperator(ctx, omega, n + 1))
        labels.append(f"L({n})")
    return OperatorSample(tuple(gens), closure_depth, tuple(labels))


class NotDoublyHomogeneous(ValueError):
    pass


@dataclass
class WindowedOperators:
    """Sample operators compressed to a window, as column-major sparse matrices."""

    keys: list
    index: dict
    cell_of: list
    cells: list
    matrices: list
    labels: list
    degrees: list
    dropped: int = 0

    @property
    def dim(self) -> int:
        return len(self.keys)

    def cell_indices(self, cell) -> list[int]:
        return [i for i, c in enumerate(self.cell_of) if c == cell]

    def vector(self, ctx, v: dict):
        return ctx.new_vector({self.keys[i]: c for i, c in v.items()})


def compress(ctx, sample: OperatorSample, win: TruncationWindow) -> WindowedOperators:
    """Matrices of every sampled operator on the window basis.

    Only blocks whose target cell lies in the window are computed; the
    double grading of each generator is checked on the fly.
    """
    cells = ctx.cells(win)
    keys, cell_of = [], []
    for cell in cells:
        for k in ctx.basis(*cell):
            keys.append(k)
            cell_of.append(cell)
    index = {k: i for i, k in enumerate(keys)}
    cell_set = set(cells)
    alg = ctx.algebra
    matrices, degrees, dropped = [], [], 0
    for op in sample.generators:
        wts = {alg.weight(k) for k in op.source.keys()}
        secs = {alg.sector(k) for k in op.source.keys()}
        if len(wts) != 1 or len(secs) != 1:
            raise NotDoublyHomogeneous(f"sample source {op.source.render()} is not doubly homogeneous")
        shift, alpha = wts.pop() - op.mode - 1, secs.pop()
        degrees.append((shift, alpha))
        mat: dict = {}
        for j, k in enumerate(keys):
            s, w = cell_of[j]
            target = (ctx.add_sectors(alpha, s), w + shift)
            if target not in cell_set:
                continue
            out = ctx.mode(op.source, op.mode, ctx.basis_vector(k))
            col = {}
            for key, c in out.items():
                i = index.get(key)
                if i is None:
                    dropped += 1
                    continue
                if cell_of[i] != target:
                    raise NotDoublyHomogeneous(f"{op.source.render()}_{op.mode} left its degree on {k}")
                col[i] = c
            if col:
                mat[j] = col
        matrices.append(mat)
    return WindowedOperators(keys, index, cell_of, cells, matrices, list(sample.labels), degrees, dropped)


def _closure(mats: list, start: list[dict], depth: int) -> tuple[Echelon, bool]:
    """Span of ``start`` closed under ``mats``; flag says whether it stabilized within ``depth`` rounds."""
    ech = Echelon()
    frontier = [r for r in (ech.add(v) for v in start) if r is not None]
    for _ in range(depth):
        if not frontier:
            return ech, True
        nxt = []
        for v in frontier:
            for mat in mats:
                image = mat_vec(mat, v)
                if image:
                    r = ech.add(image)
                    if r is not None:
                        nxt.append(r)
        frontier = nxt
    return ech, not frontier


def _pivot_cell(ops: WindowedOperators):
    dims = {}
    for c in ops.cell_of:
        dims[c] = dims.get(c, 0) + 1
    return min(dims, key=lambda c: (dims[c], c[1], c[0]))


@dataclass
class IrreducibilityVerdict:
    verdict: str
    certificate: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def irreducible(self) -> bool:
        return self.verdict == "irreducible-at-window"

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "certificate": jsonable(self.certificate), "details": jsonable(self.details)}


def irreducibility_check(ctx, sample: OperatorSample | None = None, win: TruncationWindow | None = None,
                         ops: WindowedOperators | None = None) -> IrreducibilityVerdict:
    """Certify irreducibility of the windowed operator algebra, or exhibit an invariant subspace.

    With a pivot cell ``P`` (smallest, lowest cell) the window is irreducible iff
    (A) the closure of ``P`` is everything, (B) every nonzero vector reaches ``P``
    (the co-closure of ``P``'s coordinate functionals spans the dual), and
    (C) words returning to ``P`` act irreducibly on it (full matrix algebra).
    """
    win = win or ctx.window(4, 1)
    sample = sample or default_sample(ctx, win)
    ops = ops or compress(ctx, sample, win)
    details = {"window": {"max_weight": win.max_weight, "cells": len(ops.cells), "dim": ops.dim},
               "sample_size": len(sample.generators), "closure_depth": sample.closure_depth}
    if ops.dim == 0:
        return IrreducibilityVerdict("zero", [], details)
    pivot = _pivot_cell(ops)
    pidx = ops.cell_indices(pivot)
    details["pivot"] = {"sector": pivot[0], "weight": pivot[1], "dim": len(pidx)}
    depth = sample.closure_depth

    # (A) forward closure of the pivot cell
    fwd, stable = _closure(ops.matrices, [{i: Fraction(1)} for i in pidx], depth)
    details["forward_rank"] = fwd.rank
    if fwd.rank < ops.dim:
        if not stable:
            raise InsufficientSample(f"forward closure not stable after {depth} rounds (rank {fwd.rank}/{ops.dim})")
        cert = [ops.vector(ctx, v) for v in fwd.basis()]
        details["failed"] = "forward_closure"
        return IrreducibilityVerdict("reducible", cert, details)

    # (B) every nonzero vector maps into the pivot cell
    tmats = [transpose(m) for m in ops.matrices]
    back, stable = _closure(tmats, [{i: Fraction(1)} for i in pidx], depth)
    details["co_closure_rank"] = back.rank
    if back.rank < ops.dim:
        if not stable:
            raise InsufficientSample(f"co-closure not stable after {depth} rounds (rank {back.rank}/{ops.dim})")
        cert = [ops.vector(ctx, v) for v in nullspace(back.basis(), list(range(ops.dim)))]
        details["failed"] = "co_closure"
        return IrreducibilityVerdict("reducible", cert, details)

    # (C) local irreducibility on the pivot cell, by Burnside
    d = len(pidx)
    if d > 1:
        rank = _return_algebra_rank(ops, pidx, depth)
        details["return_algebra_rank"] = rank
        if rank < d * d:
            raise InsufficientSample(
                f"words returning to the pivot cell span {rank} < {d * d} matrices; no rational certificate derived")
    return IrreducibilityVerdict("irreducible-at-window", [], details)


def _return_algebra_rank(ops: WindowedOperators, pidx: list[int], depth: int) -> int:
    """Dimension of the span of ``P W P`` over sampled words ``W``.

    Words act diagonally on ``d`` copies of the window; the tuple
    ``(e_1, ..., e_d)`` of pivot basis vectors is closed and each member
    projected back to the pivot cell.
    """
    d, n = len(pidx), ops.dim
    start = {slot * n + i: Fraction(1) for slot, i in enumerate(pidx)}

    def lift(mat):
        out = {}
        for j, col in mat.items():
            for slot in range(d):
                out[slot * n + j] = {slot * n + i: c for i, c in col.items()}
        return out

    big, _ = _closure([lift(m) for m in ops.matrices], [start], depth)
    proj = Echelon()
    pos = {i: r for r, i in enumerate(pidx)}
    for row in big.basis():
        vec = {}
        for k, c in row.items():
            slot, i = divmod(k, n)
            if i in pos:
                vec[(slot, pos[i])] = c
        if vec:
            proj.add(vec)
    return proj.rank


def commutant_dimension(ctx, sample: OperatorSample | None = None, win: TruncationWindow | None = None,
                        graded: bool = True, ops: WindowedOperators | None = None) -> int:
    """Dimension of the maps on the window commuting with every compressed sample operator.

    ``graded=True`` keeps each doubly homogeneous cell (maps in the graded
    endomorphism ring); ``graded=False`` only keeps ``L(0)``-eigenspaces, so
    sector-mixing maps are allowed.
    """
    win = win or ctx.window(4, 1)
    sample = sample or default_sample(ctx, win)
    ops = ops or compress(ctx, sample, win)
    if ops.dim == 0:
        return 0
    group = ops.cell_of if graded else [c[1] for c in ops.cell_of]
    members: dict = {}
    for i, g in enumerate(group):
        members.setdefault(g, []).append(i)
    unknowns = sum(len(v) ** 2 for v in members.values())

    def equations():
        # entry (i, j) of X A - A X is sum_k X_ik A_kj - sum_k A_ik X_kj
        for mat in ops.matrices:
            rows = transpose(mat)
            pairs = set()
            for j, col in mat.items():
                for k in col:
                    pairs.update((i, j) for i in members[group[k]])
            for i, row in rows.items():
                for k in row:
                    pairs.update((i, j) for j in members[group[k]])
            for i, j in sorted(pairs):
                eq: dict = {}
                for k, a in mat.get(j, {}).items():
                    if group[k] == group[i]:
                        eq[(i, k)] = eq.get((i, k), 0) + a
                for k, a in rows.get(i, {}).items():
                    if group[k] == group[j]:
                        eq[(k, j)] = eq.get((k, j), 0) - a
                eq = {u: c for u, c in eq.items() if c}
                if eq:
                    yield eq

    return nullity(equations(), unknowns, lower_bound=1)


def h0_eigenspace_grading(ctx, beta, win: TruncationWindow) -> CheckReport:
    """Check that the sector ``beta`` part of the window is the joint ``h(0)``-eigenspace for ``<h, beta>``.

    ``h(0)`` acts diagonally on the monomial basis, so the joint eigenspace for
    a given eigenvalue tuple is spanned by the basis vectors having it.
    """
    report = CheckReport("h0_eigenspace")
    hs = ctx.h_basis()
    expected = tuple(ctx.pairing(h, beta) for h in hs)
    by_sector: dict = {}
    for s, wt in ctx.cells(win):
        for k in ctx.basis(s, wt):
            v = ctx.basis_vector(k)
            eig = []
            for h in hs:
                hv = ctx.zero_mode(h, v)
                lam = hv.is_multiple_of(v) if hv else Fraction(0)
                report.record({"key": ctx.basis_vector(k).render(), "h": h}, lam is not None, True)
                eig.append(lam)
            eig = tuple(eig)
            in_eigenspace = eig == expected
            report.record({"key": v.render(), "sector": s}, in_eigenspace, s == beta)
            by_sector.setdefault(s, eig)
    # nondegeneracy: distinct windowed sectors have distinct eigenvalue tuples
    seen: dict = {}
    for s, eig in sorted(by_sector.items()):
        report.record({"sector": s, "eigenvalues": eig}, seen.get(eig, s), s)
        seen.setdefault(eig, s)
    report.details["eigenvalues"] = expected
    report.details["sectors"] = len(by_sector)
    return report


def character_fingerprint(ctx, win: TruncationWindow) -> dict:
    """Intrinsic summary: ``h(0)``-eigenvalues and dims of the lowest cell, and dims by weight."""
    series = character_series(ctx, win)
    if not series.entries:
        return {"digest": hashlib.sha256(b"zero").hexdigest()[:16], "lowest": None, "by_weight": {}}
    (s, w), d = min(series.entries.items(), key=lambda kv: (kv[0][1], kv[1], repr(kv[0][0])))
    eig = [ctx.pairing(h, s) for h in ctx.h_basis()]
    body = {"lowest": {"weight": w, "dim": d, "eigenvalues": eig},
            "by_weight": {str(k): v for k, v in series.total_by_weight().items()}}
    text = json.dumps(jsonable(body), sort_keys=True)
    body["digest"] = hashlib.sha256(text.encode()).hexdigest()[:16]
    return body


@dataclass
class IrreducibleClass:
    cosets: tuple[DualCoset, ...]
    module: Any
    verdict: IrreducibilityVerdict
    fingerprint: dict

    def to_dict(self) -> dict:
        return {"cosets": [list(c.rep) for c in self.cosets],
                "verdict": self.verdict.verdict,
                "fingerprint": self.fingerprint}


@dataclass
class Classification:
    classes: list
    expected_count: int
    bijection: bool
    indistinguishable: list
    window: TruncationWindow

    @property
    def passed(self) -> bool:
        return self.bijection and len(self.classes) == self.expected_count and all(
            c.verdict.irreducible for c in self.classes)

    def to_dict(self) -> dict:
        return jsonable({"classes": [c.to_dict() for c in self.classes], "expected_count": self.expected_count,
                         "bijection": self.bijection, "window_indistinguishable": self.indistinguishable,
                         "max_weight": self.window.max_weight, "passed": self.passed})


def classify_irreducibles_tensor(L1: EvenLattice, L2: EvenLattice, max_weight=4, radius: int = 1,
                                 closure_depth: int = 64) -> Classification:
    """All ``V_{L1+g1} (x) V_{L2+g2}``, checked against the discriminant group of ``L1 ⊕ L2``."""
    total = orthogonal_sum(L1, L2)
    labels = {total.coset_label(c.rep) for c in discriminant_group(total)}
    classes, seen = [], set()
    for g1 in discriminant_group(L1):
        for g2 in discriminant_group(L2):
            T = TensorModule((build_coset_module(L1, g1), build_coset_module(L2, g2)))
            win = T.window(max_weight, radius)
            verdict = irreducibility_check(T, default_sample(T, win, closure_depth), win)
            classes.append(IrreducibleClass((g1, g2), T, verdict, character_fingerprint(T, win)))
            seen.add(total.coset_label(tuple(g1.rep) + tuple(g2.rep)))
    bijection = seen == labels and len(classes) == len(labels)
    digests: dict = {}
    for c in classes:
        digests.setdefault(c.fingerprint["digest"], []).append([list(x.rep) for x in c.cosets])
    clash = [v for v in digests.values() if len(v) > 1]
    return Classification(classes, abs(total.det), bijection, clash, TruncationWindow(Fraction(max_weight)))


@dataclass
class Decomposition:
    ambient: LatticeModule
    summands: list
    verdicts: list
    reconciliation: CheckReport
    window: TruncationWindow

    def to_dict(self) -> dict:
        return jsonable({
            "ambient": repr(self.ambient),
            "max_weight": self.window.max_weight,
            "summands": [{"coset_rep": list(m.cosets[0].rep),
                          "min_weight": m.min_weight(m.cosets[0].rep),
                          "verdict": v.verdict} for m, v in zip(self.summands, self.verdicts)],
            "reconciliation": self.reconciliation.to_dict(),
        })

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def decompose_completely(W: LatticeModule, win: TruncationWindow | None = None,
                         radius: int = 1, closure_depth: int = 64) -> Decomposition:
    """Split ``W`` by ``h(0)``-eigenvalue sectors grouped modulo ``L``; check and reconcile each piece."""
    L = W.lattice
    win = win or W.window(4, radius)
    hs = W.h_basis()
    groups: dict = {}
    for s, wt in W.cells(win):
        if not W.basis(s, wt):
            continue
        eig = [W.pairing(h, s) for h in hs]
        sector = W.sector_from_eigenvalues(eig)
        groups.setdefault(L.coset_rep(sector), set()).add(sector)
    summands, verdicts = [], []
    for rep in sorted(groups):
        M = build_coset_module(L, rep)
        mwin = TruncationWindow(win.max_weight, frozenset(s for s in win.sectors if M.contains_sector(s))
                                if win.sectors is not None else None)
        v = irreducibility_check(M, default_sample(M, mwin, closure_depth), mwin)
        if not v.irreducible:
            raise NotDecomposableAtWindow(f"piece over coset {rep} is {v.verdict}")
        summands.append(M)
        verdicts.append(v)
    total = CharacterSeries()
    for M in summands:
        total = total + character_series(M, win)
    ambient = character_series(W, win)
    report = CheckReport("decomposition_characters")
    for cell in sorted(set(ambient.entries) | set(total.entries), key=repr):
        report.record({"cell": cell}, total.entries.get(cell, 0), ambient.entries.get(cell, 0))
    return Decomposition(W, summands, verdicts, report, win)
