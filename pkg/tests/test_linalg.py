from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from latticevoa.linalg import Echelon, mat_vec, nullity, nullspace, rank, transpose

F = Fraction

matrices = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=6)


def _rows(m):
    return [{j: F(v) for j, v in enumerate(r) if v} for r in m]


def _dense_rank(m):
    rows = [[F(v) for v in r] for r in m]
    r, col = 0, 0
    while r < len(rows) and col < 4:
        p = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if p is None:
            col += 1
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col] / rows[r][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        col += 1
    return r


@given(matrices)
def test_rank_and_nullspace(m):
    rows = _rows(m)
    assert rank(rows) == _dense_rank(m)
    basis = nullspace(rows, list(range(4)))
    assert len(basis) == 4 - rank(rows) == nullity(rows, 4)
    for v in basis:
        for r in rows:
            assert sum(c * v.get(k, 0) for k, c in r.items()) == 0


@given(matrices)
def test_nullity_early_stop_is_exact(m):
    rows = _rows(m)
    true = nullity(rows, 4)
    if true >= 1:
        assert nullity(rows, 4, lower_bound=1) == true


def test_echelon_membership():
    e = Echelon()
    e.add({0: F(1), 1: F(2)})
    assert e.contains({0: F(2), 1: F(4)})
    assert not e.contains({1: F(1)})
    assert e.add({0: F(3), 1: F(6)}) is None


def test_mat_vec_and_transpose():
    m = {0: {0: F(1), 1: F(2)}, 1: {1: F(3)}}
    assert mat_vec(m, {0: F(1), 1: F(1)}) == {0: F(1), 1: F(5)}
    assert transpose(transpose(m)) == m
