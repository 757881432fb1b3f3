"""Exact linear programming over closed systems a x <= b with free variables.

Two-phase primal simplex with Bland's rule on exact rationals: guaranteed
termination, no tolerances.  Free variables are split into differences of
non-negative ones; rows with negative right-hand side get phase-1
artificials.  Tableaus at desk scale are small and sparse, so pivots walk
the nonzero pattern of the pivot row only.

Callers pass exact Rat entries; no normalization happens here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from pilp.numkernel import Rat, rat

INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
OPTIMAL = "optimal"

_ZERO = rat(0)
_ONE = rat(1)


@dataclass(frozen=True)
class LpResult:
    status: str
    value: Rat | None = None
    point: tuple | None = None


def solve_max(
    rows: Sequence[tuple[Sequence[Rat], Rat]],
    objective: Sequence[Rat],
    stop_above: Rat | None = None,
) -> LpResult:
    """Maximize objective . x subject to a . x <= beta for (a, beta) in rows.

    Variables are free.  With ``stop_above`` set, the solve may return as
    soon as a feasible point with value > stop_above is at hand; the value
    is then feasible but not necessarily optimal (used by feasibility
    probes where only the sign matters).
    """
    n = len(objective)
    if not rows:
        if all(x == 0 for x in objective):
            return LpResult(OPTIMAL, _ZERO, tuple(_ZERO for _ in range(n)))
        return LpResult(UNBOUNDED)

    m = len(rows)
    # standard form columns: u (n), w (n), slacks (m); x = u - w
    base_cols = 2 * n + m
    art_rows = [i for i, (_, beta) in enumerate(rows) if beta < 0]
    art_of_row = {i: base_cols + k for k, i in enumerate(art_rows)}
    ncols = base_cols + len(art_rows)

    tableau: list[list[Rat]] = []
    basis: list[int] = []
    for i, (a, beta) in enumerate(rows):
        flip = beta < 0
        row = [_ZERO] * (ncols + 1)
        for j, x in enumerate(a):
            if x != 0:
                v = -x if flip else x
                row[j] = v
                row[n + j] = -v
        row[2 * n + i] = -_ONE if flip else _ONE
        if flip:
            row[art_of_row[i]] = _ONE
            basis.append(art_of_row[i])
        else:
            basis.append(2 * n + i)
        row[ncols] = -beta if flip else beta
        tableau.append(row)

    if art_rows:
        art_set = set(art_of_row.values())
        costs: list = [_ZERO] * ncols
        for col in art_set:
            costs[col] = -_ONE
        status = _run_phase(tableau, basis, costs, ncols, set())
        assert status == OPTIMAL  # phase-1 objective is bounded by 0
        if any(
            tableau[i][ncols] != 0
            for i in range(m)
            if basis[i] in art_set
        ):
            return LpResult(INFEASIBLE)
        _drive_out_artificials(tableau, basis, base_cols, ncols, art_set)
        blocked = art_set
    else:
        blocked = set()

    costs = [_ZERO] * ncols
    for j in range(n):
        if objective[j] != 0:
            costs[j] = objective[j]
            costs[n + j] = -objective[j]
    status = _run_phase(tableau, basis, costs, ncols, blocked, stop_above)
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED)

    values = {basis[i]: tableau[i][ncols] for i in range(m)}
    point = tuple(
        values.get(j, _ZERO) - values.get(n + j, _ZERO) for j in range(n)
    )
    value = _ZERO
    for j in range(n):
        if objective[j] != 0:
            value += objective[j] * point[j]
    return LpResult(OPTIMAL, value, point)


def _run_phase(tableau, basis, costs, ncols, blocked, stop_above=None) -> str:
    """Bland-rule simplex; ``blocked`` columns never enter."""
    m = len(tableau)
    # reduced costs c_j - c_B . column_j; the rhs slot holds -objective
    obj = list(costs) + [_ZERO]
    for i in range(m):
        cb = costs[basis[i]]
        if cb != 0:
            row = tableau[i]
            for j in range(ncols + 1):
                if row[j] != 0:
                    obj[j] -= cb * row[j]

    while True:
        if stop_above is not None and -obj[ncols] > stop_above:
            return OPTIMAL
        enter = None
        for j in range(ncols):
            if obj[j] > 0 and j not in blocked:
                enter = j
                break
        if enter is None:
            return OPTIMAL
        leave = None
        best_ratio = None
        for i in range(m):
            coef = tableau[i][enter]
            if coef > 0:
                ratio = tableau[i][ncols] / coef
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave is None:
            return UNBOUNDED
        _pivot(tableau, obj, basis, leave, enter, ncols)


def _pivot(tableau, obj, basis, leave, enter, ncols) -> None:
    pivot_row = tableau[leave]
    pivot = pivot_row[enter]
    if pivot != 1:
        inv = 1 / pivot
        for j in range(ncols + 1):
            if pivot_row[j] != 0:
                pivot_row[j] *= inv
    nonzeros = [j for j in range(ncols + 1) if pivot_row[j] != 0]
    for row in tableau:
        if row is pivot_row:
            continue
        f = row[enter]
        if f != 0:
            for j in nonzeros:
                row[j] -= f * pivot_row[j]
    f = obj[enter]
    if f != 0:
        for j in nonzeros:
            obj[j] -= f * pivot_row[j]
    basis[leave] = enter


def _drive_out_artificials(tableau, basis, base_cols, ncols, art_set) -> None:
    """Pivot basic artificials onto structural columns (rows are degenerate)."""
    obj = [_ZERO] * (ncols + 1)
    for i in range(len(tableau)):
        if basis[i] in art_set:
            enter = next(
                (j for j in range(base_cols) if tableau[i][j] != 0), None
            )
            if enter is not None:
                _pivot(tableau, obj, basis, i, enter, ncols)
            # else: row is 0 = 0, a redundant constraint; keep it inert


def feasible_point(
    rows: Sequence[tuple[Sequence[Rat], Rat]], n: int
) -> tuple | None:
    """A rational point satisfying all closed rows, or None."""
    res = solve_max(rows, [_ZERO] * n)
    if res.status == INFEASIBLE:
        return None
    assert res.point is not None
    return res.point
