"""Exact rational linear programming: two-phase simplex with Bland's rule.

Everything is a Fraction, so feasibility answers and certificates are exact.
Bland's pivoting rule (smallest eligible index, ties broken by smallest basic
index) makes every run cycle-free and deterministic.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _pivot(rows: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    piv = rows[r][c]
    rows[r] = [v / piv for v in rows[r]]
    for k, row in enumerate(rows):
        if k != r and row[c] != 0:
            f = row[c]
            rows[k] = [a - f * b for a, b in zip(row, rows[r])]
    basis[r] = c


def _bland(rows, basis, cost, ncols):
    """Run minimizing simplex steps in place; returns OPTIMAL or UNBOUNDED."""
    while True:
        # reduced costs from scratch each round: slower, but simple and safe
        reduced = list(cost[:ncols])
        for r, b in enumerate(basis):
            cb = cost[b]
            if cb != 0:
                row = rows[r]
                for j in range(ncols):
                    if row[j] != 0:
                        reduced[j] -= cb * row[j]
        enter = -1
        for j in range(ncols):
            if reduced[j] < 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        leave = -1
        best = None
        for r, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best = ratio
                    leave = r
        if leave < 0:
            return UNBOUNDED
        _pivot(rows, basis, leave, enter)


def solve_lp(A: Sequence[Sequence], b: Sequence, c: Sequence):
    """Minimize c.x subject to A x = b, x >= 0.

    Returns (status, value, x) where x is the optimal basic solution when
    status is OPTIMAL, and None otherwise.
    """
    m, n = len(A), len(c)
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        rows.append(row + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [rhs])
    basis = [n + i for i in range(m)]

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    status = _bland(rows, basis, phase1, n + m)
    assert status == OPTIMAL  # phase-1 objective is bounded below by 0
    value1 = sum(rows[r][-1] for r, bi in enumerate(basis) if bi >= n)
    if value1 > 0:
        return INFEASIBLE, None, None

    # drive remaining artificials out of the basis, dropping redundant rows
    r = 0
    while r < len(rows):
        if basis[r] >= n:
            col = next((j for j in range(n) if rows[r][j] != 0), None)
            if col is None:
                del rows[r]
                del basis[r]
                continue
            _pivot(rows, basis, r, col)
        r += 1
    rows = [row[:n] + row[-1:] for row in rows]

    cost = [Fraction(v) for v in c]
    status = _bland(rows, basis, cost, n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [Fraction(0)] * n
    for r, bi in enumerate(basis):
        x[bi] = rows[r][-1]
    return OPTIMAL, sum(cost[j] * x[j] for j in range(n)), x


def lexmin_solution(A, b, lower=None):
    """Lexicographically minimal x with A x = b and x >= lower (default 0).

    Returns the solution vector, or None when the system is infeasible.  The
    lexmin point of a nonempty feasible region of this shape always exists
    (each coordinate is bounded below), so the answer is deterministic.
    """
    m = len(A)
    n = len(A[0]) if m else (len(lower) if lower else 0)
    low = [Fraction(v) for v in (lower if lower is not None else [0] * n)]
    rows = [[Fraction(v) for v in row] for row in A]
    rhs = [Fraction(b[i]) - sum(rows[i][j] * low[j] for j in range(n)) for i in range(m)]
    fixed: list[Fraction] = []
    for k in range(n):
        cost = [Fraction(0)] * n
        cost[k] = Fraction(1)
        status, value, _x = solve_lp(rows, rhs, cost)
        if status == INFEASIBLE:
            return None
        assert status == OPTIMAL  # objective x_k >= 0 cannot be unbounded below
        fixed.append(value)
        pin = [Fraction(0)] * n
        pin[k] = Fraction(1)
        rows = rows + [pin]
        rhs = rhs + [value]
    return [v + l for v, l in zip(fixed, low)]
