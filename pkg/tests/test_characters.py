import itertools
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from latticevoa import (
    build_coset_module,
    build_even_lattice,
    character_convolution_check,
    character_series,
    colored_partition_count,
    dual_lattice_module,
    graded_dimension,
    lattice_algebra,
    zero_module,
)
from latticevoa.fock import basis_of
from latticevoa.tensor import TensorModule
from latticevoa.vertex import TruncationWindow
from oracles import colored_partition_oracle

F = Fraction

# frozen from colored_partition_oracle (pentagonal-series inversion)
RANK1 = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]
RANK2 = [1, 2, 5, 10, 20, 36, 65, 110, 185, 300, 481, 752, 1165]


def test_frozen_tables_match_oracle():
    assert RANK1 == [colored_partition_oracle(n, 1) for n in range(13)]
    assert RANK2 == [colored_partition_oracle(n, 2) for n in range(13)]


@given(st.integers(0, 20), st.integers(1, 8))
def test_partition_dp_matches_oracle(n, r):
    assert colored_partition_count(n, r) == colored_partition_oracle(n, r)


def test_graded_dimension_examples(a1, hyp):
    assert graded_dimension(a1, (0,), 0) == 1
    assert graded_dimension(a1, (0,), 2) == 2
    assert graded_dimension(hyp, (1, 1), 3) == 5
    assert graded_dimension(a1, (F(1, 2),), F(1, 2)) == 0
    assert graded_dimension(a1, (1,), 0) == 0


def test_series_examples(a1):
    V = lattice_algebra(a1)
    totals = character_series(V, V.window(2, 2)).total_by_weight()
    assert [totals[F(w)] for w in range(3)] == [1, 3, 4]
    M = build_coset_module(a1, (F(1, 2),))
    series = character_series(M, M.window(2, 1))
    assert series.entries[((F(1, 2),), F(1, 4))] == 1
    Z = zero_module(a1)
    assert character_series(Z, Z.window(4, 1)).entries == {}


def test_enumeration_equals_oracle_box():
    # every sector with |coords| <= 3, weights <= 12, ranks 1 and 2
    for gram in ([[2]], [[4]], [[0, 1], [1, 0]], [[2, 1], [1, 2]]):
        L = build_even_lattice(gram)
        for coords in itertools.product(range(-3, 4), repeat=L.rank):
            for w in range(-4, 13):
                n = len(basis_of(L, coords, w))
                off = F(w) - F(L.norm(coords), 2)
                expected = colored_partition_oracle(int(off), L.rank) if off.denominator == 1 else 0
                assert n == graded_dimension(L, coords, w) == expected


def test_dual_module_character_is_sum_over_cosets(d4):
    W = dual_lattice_module(d4)
    win = W.window(4, 1)
    total = None
    for c in W.cosets:
        s = character_series(build_coset_module(d4, c), win)
        total = s if total is None else total + s
    assert total.entries == character_series(W, win).entries


def test_convolution_checks(a1, hyp):
    V = lattice_algebra(a1)
    win = TensorModule((V, V)).window(4, 1)
    assert character_convolution_check(V, V, win).passed
    M = build_coset_module(a1, (F(1, 2),))
    H = lattice_algebra(hyp)
    report = character_convolution_check(H, M, TensorModule((H, M)).window(3, 1))
    assert report.passed and report.instances_checked > 0
    Z = zero_module(a1)
    assert character_convolution_check(V, Z, TensorModule((V, Z)).window(3, 1)).details["cells"] == 0


def test_csv_export(a1):
    V = lattice_algebra(a1)
    text = character_series(V, V.window(1, 1)).to_csv()
    assert text == "sector,weight,dimension\n0,0,1\n-1,1,1\n0,1,1\n1,1,1\n"
    M = build_coset_module(a1, (F(1, 2),))
    assert "1/2,1/4,1" in character_series(M, M.window(1, 1)).to_csv()


def test_lower_bounds_and_finiteness(hyp):
    H = lattice_algebra(hyp)
    win = TruncationWindow(F(3), frozenset({(1, -1), (1, 1), (0, 0)}))
    series = character_series(H, win)
    assert min(w for (s, w) in series.entries if s == (1, -1)) == -1
    assert min(w for (s, w) in series.entries if s == (1, 1)) == 1
