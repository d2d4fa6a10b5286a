from itertools import combinations

import pytest

from oracles import determinant, pfaffian_by_permutations, sign_by_sorting
from pfarc.pfaffian import (compositions, jseq_value, perfect_matchings, permutation_sign,
                            pfaffian, pfaffian_derivative)
from pfarc.ring import Poly, dbar, xvar


def x(u, v, k=0, p=4):
    return xvar(u, v, k, p)


def test_small_pfaffians():
    assert pfaffian((1, 2), 4) == x(1, 2)
    assert pfaffian((1, 2, 3, 4), 4) == x(1, 2) * x(3, 4) - x(1, 3) * x(2, 4) + x(1, 4) * x(2, 3)
    assert pfaffian((), 4) == 1


def test_small_derivatives():
    assert pfaffian_derivative((1, 2), 1, 4) == x(1, 2, 1)
    assert pfaffian_derivative((1, 2), 0, 4) == x(1, 2)
    expected = (x(1, 2, 1) * x(3, 4) + x(1, 2) * x(3, 4, 1) - x(1, 3, 1) * x(2, 4)
                - x(1, 3) * x(2, 4, 1) + x(1, 4, 1) * x(2, 3) + x(1, 4) * x(2, 3, 1))
    assert pfaffian_derivative((1, 2, 3, 4), 1, 4) == expected


def test_written_order_values():
    assert jseq_value((1, 2), 0, 2) == -xvar(1, 2, 0, 2)
    assert jseq_value((1, 1), 3, 2) == 0
    assert jseq_value((2, 1), 1, 2) == xvar(1, 2, 1, 2)
    assert jseq_value((4, 3, 2, 1), 0, 4) == pfaffian((1, 2, 3, 4), 4)


def test_row_swap_flips_sign():
    for rows in [(5, 3, 2, 1), (6, 4, 3, 1)]:
        swapped = (rows[1], rows[0]) + rows[2:]
        assert jseq_value(swapped, 2, 6) == -jseq_value(rows, 2, 6)


def test_rows_checked():
    with pytest.raises(IndexError):
        pfaffian((1, 5), 4)
    with pytest.raises(ValueError):
        pfaffian((1, 2, 3), 4)


def test_permutation_sign_against_bubble_sort():
    from itertools import permutations
    for perm in permutations(range(5)):
        assert permutation_sign(perm) == sign_by_sorting(perm)


def test_matchings_count_and_order():
    ms = list(perfect_matchings((1, 2, 3, 4)))
    assert [m for _, m in ms] == [[(1, 2), (3, 4)], [(1, 3), (2, 4)], [(1, 4), (2, 3)]]
    assert [s for s, _ in ms] == [1, -1, 1]
    assert len(list(perfect_matchings(tuple(range(8))))) == 105


def test_compositions_colex():
    assert list(compositions(1, 2)) == [(1, 0), (0, 1)]
    assert len(list(compositions(3, 4))) == 20
    assert list(compositions(0, 0)) == [()]


@pytest.mark.parametrize("h", [2, 4, 6])
def test_matches_permutation_form(h):
    rows = tuple(range(2, h + 2))
    assert pfaffian(rows, 7) == pfaffian_by_permutations(rows, 7)


@pytest.mark.parametrize("rows", [(1, 2), (1, 3, 4, 6), (2, 3, 4, 5, 6, 7), (1, 2, 4, 5, 6, 7)])
def test_square_is_determinant(rows):
    pf = pfaffian(rows, 7)
    assert pf * pf == determinant(rows, 7)


@pytest.mark.parametrize("h", [2, 4, 6])
def test_term_count_is_double_factorial(h):
    df = 1
    for t in range(h - 1, 0, -2):
        df *= t
    assert len(pfaffian(tuple(range(1, h + 1)), h)) == df


@pytest.mark.parametrize("h", [2, 4, 6])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_direct_derivative_matches_dbar(h, n):
    for rows in list(combinations(range(1, 8), h))[:4]:
        assert pfaffian_derivative(rows, n, 7) == dbar(n, pfaffian(rows, 7))


@pytest.mark.parametrize("h", [2, 4, 6])
def test_expansion_along_first_row(h):
    rows = (1, 3, 4, 5, 6, 7)[:h]
    p = 7
    total = Poly("X", p)
    for i in range(1, h):
        rest = tuple(r for t, r in enumerate(rows) if t not in (0, i))
        term = xvar(rows[0], rows[i], 0, p) * pfaffian(rest, p)
        total = total + term if i % 2 == 1 else total - term
    assert pfaffian(rows, p) == total
