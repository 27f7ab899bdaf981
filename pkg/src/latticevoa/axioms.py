"""Executable checks of the conformal vertex algebra and module axioms.

Everything is checked in mode (component) form on explicit vectors, since a
finite truncation only supports finite sums. All comparisons are exact.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

from .characters import graded_dimension
from .report import CheckReport, jsonable
from .vertex import TruncationWindow


class NonScalarDefect(ArithmeticError):
    """``[L(m),L(n)] - (m-n)L(m+n)`` is not a scalar: an implementation bug."""


def binom(a: int, i: int) -> Fraction:
    """Generalized binomial ``a(a-1)...(a-i+1)/i!`` for any integer ``a``."""
    num = 1
    for k in range(i):
        num *= a - k
    return Fraction(num, factorial(i))


def _memo_mode(memo, tag, ctx, v, m, w, win=None):
    if memo is None:
        return ctx.mode(v, m, w, win)
    key = (tag, m)
    out = memo.get(key)
    if out is None:
        out = memo[key] = ctx.mode(v, m, w, win)
    return out


def jacobi_sides(ctx, u, v, w, p: int, m: int, n: int, win=None, memo: dict | None = None):
    """Both sides of the component Jacobi identity, applied to ``w``.

    lhs = sum_i (-1)^i C(p,i) [u_{p+m-i} v_{n+i} w - (-1)^p v_{p+n-i} u_{m+i} w]
    rhs = sum_i C(m,i) (u_{p+i} v)_{m+n-i} w

    ``memo`` may be shared between calls with the same ``(u, v, w)``; it caches
    the intermediate mode products, which repeat heavily across index boxes.
    """
    alg = ctx.algebra
    zero = ctx.new_vector({})
    if not (u and v and w):
        return zero, zero
    if memo is not None and "bounds" in memo:
        top_v, top_u, top_uv = memo["bounds"]
    else:
        top_v, top_u, top_uv = ctx.max_mode(v, w), ctx.max_mode(u, w), alg.max_mode(u, v)
        if memo is not None:
            memo["bounds"] = (top_v, top_u, top_uv)
    lhs = zero
    imax = max(top_v - n, top_u - m)
    if p >= 0:
        imax = min(imax, p)
    sign_p = -1 if p % 2 else 1
    for i in range(0, imax + 1):
        c = binom(p, i) * (-1 if i % 2 else 1)
        if not c:
            continue
        if n + i <= top_v:
            vw = _memo_mode(memo, "vw", ctx, v, n + i, w, win)
            if vw:
                lhs = lhs + c * _memo_mode(memo, ("u.vw", n + i), ctx, u, p + m - i, vw, win)
        if m + i <= top_u:
            uw = _memo_mode(memo, "uw", ctx, u, m + i, w, win)
            if uw:
                lhs = lhs - (c * sign_p) * _memo_mode(memo, ("v.uw", m + i), ctx, v, p + n - i, uw, win)
    rhs = zero
    imax = top_uv - p
    if m >= 0:
        imax = min(imax, m)
    for i in range(0, imax + 1):
        c = binom(m, i)
        if not c:
            continue
        uv = _memo_mode(memo, "uv", alg, u, p + i, v)
        if uv:
            rhs = rhs + c * _memo_mode(memo, ("uv.w", p + i), ctx, uv, m + n - i, w, win)
    return lhs, rhs


def check_component_jacobi(ctx, u, v, w, p: int, m: int, n: int, win=None,
                           report: CheckReport | None = None, memo: dict | None = None) -> CheckReport:
    report = report or CheckReport("component_jacobi")
    lhs, rhs = jacobi_sides(ctx, u, v, w, p, m, n, win, memo)
    report.record({"u": u.render(), "v": v.render(), "w": w.render(), "p": p, "m": m, "n": n}, lhs, rhs)
    return report


def check_jacobi_box(ctx, triples, box=range(-3, 4), win=None) -> CheckReport:
    """Component Jacobi over every ``(p, m, n)`` in ``box^3`` for each ``(u, v, w)``."""
    report = CheckReport("component_jacobi")
    for u, v, w in triples:
        memo: dict = {}
        for p in box:
            for m in box:
                for n in box:
                    check_component_jacobi(ctx, u, v, w, p, m, n, win, report, memo)
    report.details["triples"] = len(triples)
    return report


def window_basis(ctx, win: TruncationWindow, max_weight=None) -> list:
    """Basis vectors of all window cells (optionally capped at a lower weight)."""
    out = []
    for s, wt in ctx.cells(win):
        if max_weight is not None and wt > max_weight:
            continue
        out.extend(ctx.basis_vector(k) for k in ctx.basis(s, wt))
    return out


def sample_triples(alg, ctx, win: TruncationWindow, max_weight, count: int, seed: int = 0):
    """Deterministic sample of ``(u, v, w)``: generators first, then seeded draws.

    ``u`` and ``v`` are algebra basis vectors, ``w`` a module basis vector, all of
    weight at most ``max_weight``.
    """
    alg_win = alg.window(max_weight, 1)
    pool_uv = window_basis(alg, alg_win)
    pool_w = window_basis(ctx, win, max_weight)
    rng = random.Random(seed)
    gens = [g for _, g in alg.generators()]
    out = []
    for g in gens:
        out.append((g, gens[(gens.index(g) + 1) % len(gens)], pool_w[min(len(pool_w) - 1, gens.index(g))]))
    while len(out) < count:
        out.append((rng.choice(pool_uv), rng.choice(pool_uv), rng.choice(pool_w)))
    return out[:count]


def virasoro_defect(ctx, m: int, n: int, w, win=None):
    om = ctx.algebra.conformal_vector()

    def L(k, x):
        return ctx.mode(om, k + 1, x, win)

    return L(m, L(n, w)) - L(n, L(m, w)) - (m - n) * L(m + n, w)


def check_virasoro(ctx, m: int, n: int, win: TruncationWindow):
    """Virasoro relation on every window basis vector.

    Returns ``(report, c)`` where ``c`` is the extracted central charge, or None
    when the central term vanishes identically for this ``(m, n)``.
    """
    report = CheckReport("virasoro")
    scalar = None
    expected_zero = (m + n != 0) or (m ** 3 - m == 0)
    for w in window_basis(ctx, win):
        d = virasoro_defect(ctx, m, n, w)
        s = d.is_multiple_of(w)
        if s is None:
            raise NonScalarDefect(f"defect for (m, n) = ({m}, {n}) on {w.render()} is {d.render()}")
        inputs = {"m": m, "n": n, "w": w.render()}
        if expected_zero:
            report.record(inputs, d, ctx.new_vector({}))
            continue
        if scalar is None:
            scalar = s
        report.record(inputs, s, scalar)
    c = None
    if not expected_zero and scalar is not None:
        c = 12 * scalar / (m ** 3 - m)
    report.details["central_charge"] = c
    return report, c


def central_charge(ctx, win: TruncationWindow | None = None):
    win = win or ctx.algebra.window(4, 1)
    _, c = check_virasoro(ctx.algebra, 2, -2, win)
    return c


def check_grading_axioms(ctx, win: TruncationWindow, seed: int = 0) -> CheckReport:
    """Lower bounds, finite cells, and sector additivity of sampled modes."""
    report = CheckReport("grading_axioms")
    lower = {}
    for s, wt in ctx.cells(win):
        basis = ctx.basis(s, wt)
        mw = ctx.min_weight(s)
        lower.setdefault(s, mw)
        for k in basis:
            report.record({"key": jsonable(k), "cell": [jsonable(s), str(wt)]},
                          (ctx.weight(k), ctx.sector(k)), (wt, s))
        # below the bound nothing may exist
        report.record({"sector": jsonable(s), "below": str(mw - 1)}, len(ctx.basis(s, mw - 1)), 0)
        if hasattr(ctx, "lattice"):
            report.record({"sector": jsonable(s), "weight": str(wt)}, len(basis),
                          graded_dimension(ctx.lattice, s, wt) if ctx.contains_sector(s) else 0)
    alg = ctx.algebra
    if ctx.is_algebra:
        vac = ctx.vacuum()
        om = ctx.conformal_vector()
        report.record({"vacuum": "degree"}, {(ctx.weight(k), ctx.sector(k)) for k in vac.keys()},
                      {(Fraction(0), ctx.zero_sector())})
        report.record({"omega": "degree"}, {(ctx.weight(k), ctx.sector(k)) for k in om.keys()},
                      {(Fraction(2), ctx.zero_sector())})
    rng = random.Random(seed)
    pool = window_basis(ctx, win, min(win.max_weight, min(w for _, w in ctx.cells(win)) + 2))
    for name, g in alg.generators():
        alpha = next(iter({alg.sector(k) for k in g.keys()}))
        for w in rng.sample(pool, min(4, len(pool))):
            beta = ctx.sector(next(iter(w.keys())))
            top = ctx.max_mode(g, w)
            for mm in range(top - 3, top + 1):
                out = ctx.mode(g, mm, w)
                got = {ctx.sector(k) for k in out.keys()}
                report.record({"generator": name, "m": mm, "w": w.render()}, got <= {ctx.add_sectors(alpha, beta)}, True)
    report.details["lower_bounds"] = {" ".join(str(x) for x in _flat(s)): str(b) for s, b in sorted(lower.items())}
    return report


def _flat(s):
    for x in s:
        if isinstance(x, tuple):
            yield from x
        else:
            yield x


def check_l_minus_one_derivative(ctx, v, m: int, win: TruncationWindow) -> CheckReport:
    """``(L(-1)v)_m = -m v_{m-1}`` on the window basis."""
    report = CheckReport("l_minus_one_derivative")
    alg = ctx.algebra
    lv = alg.mode(alg.conformal_vector(), 0, v)
    for w in window_basis(ctx, win):
        report.record({"v": v.render(), "m": m, "w": w.render()}, ctx.mode(lv, m, w), (-m) * ctx.mode(v, m - 1, w))
    return report


def check_vacuum_property(ctx, win: TruncationWindow, modes=range(-3, 4)) -> CheckReport:
    """``Y(1, x) = id``: ``1_m w = delta_{m,-1} w``."""
    report = CheckReport("vacuum_property")
    vac = ctx.algebra.vacuum()
    for w in window_basis(ctx, win):
        for m in modes:
            expected = w if m == -1 else ctx.new_vector({})
            report.record({"m": m, "w": w.render()}, ctx.mode(vac, m, w), expected)
    return report


def check_creation_property(alg, win: TruncationWindow) -> CheckReport:
    """``v_{-1} 1 = v`` and ``v_n 1 = 0`` for ``n >= 0``."""
    report = CheckReport("creation_property")
    vac = alg.vacuum()
    for v in window_basis(alg, win):
        report.record({"v": v.render(), "m": -1}, alg.mode(v, -1, vac), v)
        for n in range(0, 3):
            report.record({"v": v.render(), "m": n}, alg.mode(v, n, vac), alg.new_vector({}))
    return report
