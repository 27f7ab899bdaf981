"""Independent reference computations used to freeze expected values.

None of these share code with the package beyond the lattice Gram matrix.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial


def euler_inverse_series(n_max: int) -> list[int]:
    """Coefficients of ``1 / prod_{k>=1} (1 - q^k)`` up to ``q^n_max``.

    Builds ``prod (1 - q^k)`` from Euler's pentagonal theorem and inverts the
    power series term by term.
    """
    phi = [0] * (n_max + 1)
    k = 0
    while True:
        hit = False
        for j in (k, -k) if k else (0,):
            e = j * (3 * j - 1) // 2
            if e <= n_max:
                phi[e] = (-1) ** (j % 2)
                hit = True
        if not hit and k > 0:
            break
        k += 1
    inv = [0] * (n_max + 1)
    inv[0] = 1
    for n in range(1, n_max + 1):
        inv[n] = -sum(phi[i] * inv[n - i] for i in range(1, n + 1))
    return inv


def series_power(series: list[int], r: int) -> list[int]:
    n_max = len(series) - 1
    out = [1] + [0] * n_max
    for _ in range(r):
        out = [sum(out[i] * series[n - i] for i in range(n + 1)) for n in range(n_max + 1)]
    return out


def colored_partition_oracle(n: int, colors: int) -> int:
    if n < 0:
        return 0
    return series_power(euler_inverse_series(n), colors)[n]


def brute_epsilon(gram, a, b) -> int:
    """Sign from the basis table ``eps(b_i, b_j) = (-1)^<b_i,b_j>`` for ``i > j``, else ``+1``."""
    r = len(gram)
    sign = 1
    for i in range(r):
        for j in range(r):
            if i > j and gram[i][j] % 2:
                for _ in range(abs(int(a[i] * b[j])) % 2):
                    sign = -sign
    return sign


def brute_discriminant_size(gram, box: int = 6) -> int:
    """Count classes of ``L°/L`` by scanning dual vectors ``G^{-1} z`` for small integer ``z``."""
    r = len(gram)
    inv = _inverse(gram)
    classes = set()
    for z in itertools.product(range(-box, box + 1), repeat=r):
        x = [sum(inv[i][j] * z[j] for j in range(r)) for i in range(r)]
        classes.add(tuple(xi - (xi.numerator // xi.denominator) for xi in x))
    return len(classes)


def _inverse(gram):
    r = len(gram)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(r)] for i, row in enumerate(gram)]
    for c in range(r):
        p = next(i for i in range(c, r) if aug[i][c])
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [v / pv for v in aug[c]]
        for i in range(r):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [row[r:] for row in aug]


def exp_series_coefficient(alpha, power: int) -> dict:
    """``x^power`` coefficient of ``prod_k exp(alpha(-k) x^k / k)`` by expanding each exponential.

    Keys are sorted tuples of ``(k, color)`` creation modes, descending.
    """
    r = len(alpha)
    poly = {((), 0): Fraction(1)}
    for k in range(1, power + 1):
        for c in range(r):
            if not alpha[c]:
                continue
            new: dict = {}
            for (modes, deg), coeff in poly.items():
                j = 0
                while deg + j * k <= power:
                    term = coeff * Fraction(alpha[c], k) ** j / factorial(j)
                    key = (tuple(sorted(modes + ((k, c),) * j, reverse=True)), deg + j * k)
                    new[key] = new.get(key, 0) + term
                    j += 1
            poly = new
    return {m: c for (m, d), c in poly.items() if d == power and c}
