from fractions import Fraction

from modcone.linprog import INFEASIBLE, OPTIMAL, UNBOUNDED, lexmin_solution, solve_lp


def test_basic_minimum():
    status, value, x = solve_lp([[1, 2]], [4], [1, 1])
    assert status == OPTIMAL and value == 2 and x == [0, 2]


def test_infeasible():
    status, _, _ = solve_lp([[1, 1]], [-1], [0, 0])
    assert status == INFEASIBLE


def test_unbounded():
    # no constraints at all: min -x is unbounded below over x >= 0
    status, _, _ = solve_lp([], [], [-1])
    assert status == UNBOUNDED


def test_redundant_rows_are_dropped():
    status, value, _ = solve_lp([[1, 1], [2, 2]], [3, 6], [1, 0])
    assert status == OPTIMAL and value == 0


def test_exactness_with_awkward_fractions():
    A = [[Fraction(1, 3), Fraction(1, 7)]]
    status, value, x = solve_lp(A, [Fraction(1)], [Fraction(1), Fraction(0)])
    assert status == OPTIMAL and value == 0 and x == [0, 7]


def test_lexmin_prefers_early_zero():
    assert lexmin_solution([[1, 1]], [3]) == [0, 3]


def test_lexmin_with_lower_bounds():
    assert lexmin_solution([[1, 1]], [3], [1, 0]) == [1, 2]


def test_lexmin_infeasible():
    assert lexmin_solution([[1, 1], [2, 2]], [3, 7]) is None


def test_lexmin_three_vars():
    # min x0 = 0 forces x1 - x2 = 1, then min x1 = 3/2 via x1 + x2 = 2
    got = lexmin_solution([[1, 1, -1], [0, 1, 1]], [1, 2])
    assert got == [0, Fraction(3, 2), Fraction(1, 2)]


def test_lexmin_is_row_order_independent():
    A = [[1, 1, 0], [0, 1, 1]]
    b = [2, 3]
    assert lexmin_solution(A, b) == lexmin_solution(A[::-1], b[::-1])


def test_degenerate_vertex_terminates():
    # classic degeneracy: duplicate tight constraints; Bland must not cycle
    A = [[1, 1, 1], [1, 1, 1]]
    b = [1, 1]
    status, value, _ = solve_lp(A, b, [0, 1, 2])
    assert status == OPTIMAL and value == 0
