"""Dense two-phase simplex with Bland's rule, exact by default.

Solves: maximize c.z subject to A z <= b, z >= 0. With exact=True all
arithmetic is in fractions.Fraction and comparisons are against literal
zero, so the answer is exact and Bland's rule guarantees termination. With
exact=False the same tableau runs in floats with a small tolerance; that
mode exists for speed experiments only and is never used by the test
suite's acceptance runs.

Problems here are tiny (tens of rows), so no effort is spent on sparsity
or revised-simplex machinery.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

FLOAT_TOL = 1e-9


def solve_max(
    objective: Sequence,
    rows: Sequence[Sequence],
    rhs: Sequence,
    *,
    exact: bool = True,
):
    """Return (status, value, solution) for max c.z s.t. rows.z <= rhs, z >= 0.

    solution is a list of variable values (length of ``objective``) when
    status is "optimal", else None.
    """
    n = len(objective)
    m = len(rows)
    conv = Fraction if exact else float
    tol = Fraction(0) if exact else conv(FLOAT_TOL)
    zero = conv(0)
    one = conv(1)
    cost = [conv(c) for c in objective]
    if m == 0:
        if any(c > tol for c in cost):
            return UNBOUNDED, None, None
        return OPTIMAL, zero, [zero] * n

    # Columns: n structural, m slacks, artificials as needed, then rhs.
    table: list[list] = []
    basis: list[int] = []
    art_cols: list[int] = []
    for i in range(m):
        row = [conv(x) for x in rows[i]] + [zero] * m + [conv(rhs[i])]
        row[n + i] = one
        if row[-1] < zero:
            row = [-x for x in row]
        table.append(row)
    ncols = n + m
    for i in range(m):
        if table[i][n + i] == one:
            basis.append(n + i)
        else:
            # The slack got negated away; park an artificial in the basis.
            for r in range(m):
                table[r].insert(ncols, one if r == i else zero)
            basis.append(ncols)
            art_cols.append(ncols)
            ncols += 1

    if art_cols:
        phase1 = [zero] * ncols
        for j in art_cols:
            phase1[j] = -one
        status, value = _run(table, basis, phase1, ncols, tol, zero)
        if status != OPTIMAL or value < -tol:
            return INFEASIBLE, None, None
        _evict_artificials(table, basis, set(art_cols), n + m, tol, zero)
        # All surviving rows now have real basic variables; drop the
        # artificial columns wholesale.
        keep = n + m
        for r in range(len(table)):
            table[r] = table[r][:keep] + [table[r][-1]]
        ncols = keep

    phase2 = cost + [zero] * (ncols - n)
    status, value = _run(table, basis, phase2, ncols, tol, zero)
    if status != OPTIMAL:
        return status, None, None
    solution = [zero] * n
    for r, bj in enumerate(basis):
        if bj < n:
            solution[bj] = table[r][-1]
    return OPTIMAL, value, solution


def _run(table, basis, cost, ncols, tol, zero):
    """Bland-rule simplex iterations on a basic feasible tableau."""
    m = len(table)
    # Objective row in (z_j - c_j | z) form: start from -c and clear the
    # basic columns by adding cost-weighted constraint rows.
    obj = [-c for c in cost] + [zero]
    for r in range(m):
        cb = cost[basis[r]]
        if cb != zero:
            row = table[r]
            for j in range(ncols + 1):
                obj[j] += cb * row[j]
    while True:
        enter = -1
        for j in range(ncols):
            if obj[j] < -tol:
                enter = j
                break
        if enter < 0:
            return OPTIMAL, obj[-1]
        leave = -1
        best = None
        for i in range(m):
            a = table[i][enter]
            if a > tol:
                ratio = table[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED, None
        _pivot(table, obj, basis, leave, enter)


def _pivot(table, obj, basis, i, j):
    piv = table[i][j]
    row = [x / piv for x in table[i]]
    table[i] = row
    for r in range(len(table)):
        if r != i:
            f = table[r][j]
            if f != 0:
                table[r] = [x - f * y for x, y in zip(table[r], row)]
    f = obj[j]
    if f != 0:
        for k in range(len(obj)):
            obj[k] -= f * row[k]
    basis[i] = j


def _evict_artificials(table, basis, art, real_cols, tol, zero):
    """Pivot basic artificials (necessarily at value 0) onto real columns.

    Rows with no real coefficient left are redundant constraints and are
    deleted together with their basis entry.
    """
    drop = []
    for i in range(len(table)):
        if basis[i] in art:
            target = -1
            for j in range(real_cols):
                a = table[i][j]
                if a > tol or a < -tol:
                    target = j
                    break
            if target >= 0:
                dummy = [zero] * len(table[i])
                _pivot(table, dummy, basis, i, target)
            else:
                drop.append(i)
    for i in reversed(drop):
        del table[i]
        del basis[i]
