"""Modes ``v_m`` of lattice vertex operators acting on ``V_L`` and its coset modules.

For a monomial ``v = b_{c1}(-n1)...b_{ck}(-nk) e^alpha`` the field is the free-field
normal-ordered product

    Y(v, x) = : d^(n1-1) b_{c1}(x) ... d^(nk-1) b_{ck}(x) Y(e^alpha, x) :,
    Y(e^alpha, x) = E^-(-alpha, x) E^+(-alpha, x) e_alpha x^{alpha(0)},

with divided derivatives ``d^(k)`` and the zero modes ``b(0)`` placed to the
right of ``e_alpha``. ``e_alpha e^lam = eps(alpha, lam) e^(alpha+lam)``.

Every coefficient of ``x^(-m-1)`` is computed exactly: annihilation parts act
on the (finite) input, and ``E^-`` only ever contributes a single x-power.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, perm
from typing import Any

from .fock import (
    FockMonomial,
    StateVector,
    as_sector,
    heisenberg_act,
    merge_modes,
    remove_mode,
    weight_of,
)
from .lattice import EpsilonCocycle, EvenLattice


class WindowOverflow(ArithmeticError):
    """A computed term falls outside the caller's truncation window."""


class NotInLattice(ValueError):
    pass


@dataclass(frozen=True)
class TruncationWindow:
    """Weight bound plus an optional finite set of admissible sectors."""

    max_weight: Fraction
    sectors: frozenset | None = None

    def admits(self, weight, sector) -> bool:
        return weight <= self.max_weight and (self.sectors is None or sector in self.sectors)

    def guard(self, weight, sector, what: Any = None) -> None:
        if not self.admits(weight, sector):
            raise WindowOverflow(f"term of weight {weight} in sector {sector} leaves the window ({what})")


def _poly_times_mode(poly: dict, mode, coeff) -> dict:
    out: dict = {}
    for modes, c in poly.items():
        key = merge_modes(modes, (mode,))
        out[key] = out.get(key, 0) + c * coeff
    return out


def _poly_add(acc: dict, poly: dict, scale=1) -> None:
    for k, c in poly.items():
        v = acc.get(k, 0) + c * scale
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


@lru_cache(maxsize=None)
def _e_minus_scaled(alpha: tuple, power: int) -> dict:
    """``power!`` times the coefficient of ``x^power`` in ``exp(sum_k alpha(-k) x^k / k)``.

    Integral by ``P E_P = sum_{k=1..P} alpha(-k) E_{P-k}``, so everything stays in ``int``.
    """
    if power == 0:
        return {(): 1}
    acc: dict = {}
    for k in range(1, power + 1):
        prev = _e_minus_scaled(alpha, power - k)
        # (P-1)!/(P-k)! rescales E_{P-k} to the common factor (P-1)!
        scale = perm(power - 1, k - 1)
        for c, a in enumerate(alpha):
            if a:
                _poly_add(acc, _poly_times_mode(prev, (k, c), a * scale))
    return acc


@lru_cache(maxsize=None)
def _left_poly(left: tuple, alpha: tuple, power: int) -> tuple[dict, int]:
    """Coefficient of ``x^power`` in ``prod d^(n-1) b_c(x)_- * E^-(-alpha, x)``.

    Returned as ``(integer polynomial, denominator)``.
    """
    denom = factorial(power)
    series = [
        {k: c * (denom // factorial(j)) for k, c in _e_minus_scaled(alpha, j).items()}
        for j in range(power + 1)
    ]
    for n, c in left:
        new = []
        for j in range(power + 1):
            acc: dict = {}
            for i in range(j + 1):
                k = j - i + n
                _poly_add(acc, _poly_times_mode(series[i], (k, c), comb(k - 1, n - 1)))
            new.append(acc)
        series = new
    return series[power], denom


def _exact(x):
    """Collapse integral fractions to ``int`` so the inner loops avoid Fraction overhead."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _apply_plus_field(L: EvenLattice, n: int, c: int, lam: tuple, terms: dict) -> dict:
    """Apply ``d^(n-1) b_c(x)_+`` (modes k >= 0) to ``{(xpow, modes): coeff}``."""
    sign = -1 if (n - 1) % 2 else 1
    zero_val = _exact(L.apply_gram(lam)[c])
    g = L.gram[c]
    out: dict = {}
    for (xp, modes), cf in terms.items():
        if zero_val:
            key = (xp - n, modes)
            out[key] = out.get(key, 0) + cf * sign * zero_val
        for (k, c2), mult in Counter(modes).items():
            if g[c2]:
                val = sign * comb(k + n - 1, n - 1) * mult * k * g[c2]
                key = (xp - k - n, remove_mode(modes, (k, c2)))
                out[key] = out.get(key, 0) + cf * val
    return {k: v for k, v in out.items() if v}


def _apply_e_plus(L: EvenLattice, alpha: tuple, terms: dict) -> dict:
    """``E^+(-alpha, x)`` substitutes ``b_c(-k) -> b_c(-k) - <alpha, b_c> x^(-k)``."""
    ag = [_exact(a) for a in L.apply_gram(alpha)]
    if not any(ag):
        return terms
    out: dict = {}
    for (xp, modes), cf in terms.items():
        choices = []
        for (k, c), mult in Counter(modes).items():
            a = ag[c]
            if a:
                choices.append([(t, k, c, comb(mult, t) * (-a) ** t) for t in range(mult + 1)])
        for combo in product(*choices):
            coeff, x_shift, rest = cf, 0, modes
            for t, k, c, w in combo:
                if t:
                    coeff *= w
                    x_shift -= k * t
                    rest = remove_mode(rest, (k, c), t)
            key = (xp + x_shift, rest)
            out[key] = out.get(key, 0) + coeff
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _mode_monomial(L: EvenLattice, v: FockMonomial, m: int, w: FockMonomial) -> tuple:
    alpha, lam = v.sector, w.sector
    if not L.in_lattice(alpha):
        raise NotInLattice(f"vertex operator source must lie in V_L, got sector {alpha}")
    alpha_int = tuple(int(a) for a in alpha)
    a_dot = _exact(L.pair(alpha, lam))
    eps = EpsilonCocycle(L)(alpha_int, lam)
    new_sector = as_sector(a + b for a, b in zip(alpha, lam))
    groups = sorted(Counter(v.modes).items())
    result: dict = {}
    pending = []
    for split in product(*(range(r + 1) for _, r in groups)):
        mult = 1
        left, right = [], []
        for (field, r), s in zip(groups, split):
            mult *= comb(r, s)
            left += [field] * s
            right += [field] * (r - s)
        terms = {(0, w.modes): mult}
        for n, c in right:
            terms = _apply_plus_field(L, n, c, lam, terms)
            if not terms:
                break
        if not terms:
            continue
        terms = _apply_e_plus(L, alpha_int, terms)
        left_t = tuple(sorted(left, reverse=True))
        for (xp, modes), cf in terms.items():
            power = -m - 1 - xp - a_dot
            if power >= 0:
                pending.append((left_t, int(power), modes, eps * cf))
    if not pending:
        return ()
    # accumulate over the common denominator top! and divide once at the end
    top = factorial(max(p for _, p, _, _ in pending))
    for left_t, power, modes, scale in pending:
        poly, denom = _left_poly(left_t, alpha_int, power)
        scale = scale * (top // denom)
        for lmodes, lc in poly.items():
            key = FockMonomial(merge_modes(lmodes, modes), new_sector)
            val = result.get(key, 0) + scale * lc
            if val:
                result[key] = val
            else:
                result.pop(key, None)
    return tuple((k, _exact(Fraction(v, top) if isinstance(v, int) else v / top)) for k, v in result.items())


def general_vertex_mode(
    L: EvenLattice, v: StateVector, m: int, w: StateVector, win: TruncationWindow | None = None
) -> StateVector:
    """``v_m w`` for ``v`` in ``V_L`` and ``w`` in ``V_L`` or a coset module."""
    out: dict = {}
    for vm, vc in v.items():
        for wm, wc in w.items():
            scale = _exact(vc * wc)
            for key, c in _mode_monomial(L, vm, m, wm):
                val = out.get(key, 0) + scale * c
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
    if win is not None:
        for key in out:
            win.guard(weight_of(L, key), key.sector, "general_vertex_mode")
    return StateVector._raw({k: Fraction(c) for k, c in out.items()})


def heisenberg_field_mode(L: EvenLattice, h, m: int, w: StateVector) -> StateVector:
    """Mode ``m`` of ``Y(h(-1)1, x) = sum h(n) x^(-n-1)``."""
    return heisenberg_act(L, h, m, w)


def lattice_state(L: EvenLattice, alpha, coeff=1) -> StateVector:
    return StateVector.basis(FockMonomial((), as_sector(alpha)), coeff)


def lattice_field_mode(
    L: EvenLattice, alpha, m: int, w: StateVector, win: TruncationWindow | None = None, sign: int = 1
) -> StateVector:
    """Mode ``m`` of ``Y(sign * e^alpha, x)``."""
    return general_vertex_mode(L, lattice_state(L, alpha, sign), m, w, win)


def conformal_vector(L: EvenLattice) -> StateVector:
    """``omega = 1/2 sum_ij (G^-1)_ij b_i(-1) b_j(-1) 1`` (dual-basis Casimir)."""
    ginv = L.inverse_gram
    out: dict = {}
    for i in range(L.rank):
        for j in range(L.rank):
            if ginv[i][j]:
                key = FockMonomial(tuple(sorted(((1, i), (1, j)), reverse=True)), L.zero)
                out[key] = out.get(key, 0) + ginv[i][j] / 2
    return StateVector(out)


def virasoro_mode(L: EvenLattice, n: int, w: StateVector, win: TruncationWindow | None = None) -> StateVector:
    """``L(n) = omega_{n+1}``."""
    return general_vertex_mode(L, conformal_vector(L), n + 1, w, win)


@dataclass(frozen=True)
class ModeOperator:
    """A single mode ``source_mode`` acting in a module context."""

    context: Any
    source: Any
    mode: int
    window: TruncationWindow | None = None

    def __call__(self, w):
        return self.context.mode(self.source, self.mode, w, self.window)

    def degree(self):
        """Weight and sector shift of the operator, for a doubly homogeneous source."""
        alg = self.context.algebra
        weights = {alg.weight(k) for k in self.source.keys()}
        sectors = {alg.sector(k) for k in self.source.keys()}
        if len(weights) != 1 or len(sectors) != 1:
            raise ValueError("source is not doubly homogeneous")
        return weights.pop() - self.mode - 1, sectors.pop()
