from math import comb

import pytest

from qshuffle import braidrep as B
from qshuffle import p1, strata
from qshuffle.strata import Cell, boundary_cells, differential_terms, enumerate_cells


def test_top_cells_count_binomial():
    for m in range(4):
        for n in range(1, 5):
            assert len(enumerate_cells(m, n, 2 * n)) == strata.top_cell_count(m, n) == comb(n + m, n)


def test_lowest_cells_for_no_punctures():
    # with no puncture there is nothing in dimension n; one movable line carrying all crosses
    # is the only cell of dimension n + 1
    assert enumerate_cells(0, 3, 3) == []
    assert enumerate_cells(0, 3, 4) == [(3,)]


def test_cells_in_range_only():
    with pytest.raises(ValueError):
        enumerate_cells(1, 2, 5)
    with pytest.raises(ValueError):
        Cell([0])


def test_boundary_of_two_movable_lines():
    out = boundary_cells(Cell([1, 2]))
    assert out == [(Cell([3]), 1)]


def test_boundary_into_fixed_line_splits_crosses():
    out = boundary_cells(Cell([2, (0, 0)]))
    assert sorted(c.entries for c, _ in out) == [((0, 2),), ((1, 1),), ((2, 0),)]


def test_differential_on_two_lines_is_a_binomial():
    terms = differential_terms(((0, 1), 2, (1, 0)))
    assert len(terms) == 12


@pytest.mark.parametrize("m,n", [(0, 2), (1, 2), (2, 2)])
def test_d_squared_zero_rank_one(m, n):
    assert strata.check_d_squared(p1.rank_one_mixed(3), m, n)


def test_d_squared_zero_matrix_braiding():
    assert strata.check_d_squared(B.jordanian_plane(("Y",)), 1, 2)


def test_mu_sum():
    br = p1.rank_one_mixed(2)
    for j in range(3):
        for l1 in range(2):
            for l2 in range(2):
                assert strata.check_mu_sum(br, j, l1, l2)
