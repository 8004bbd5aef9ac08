"""Exact two-phase simplex over the rationals.

Problems are stated in standard equality form: optimize ``c . x``
subject to ``A x = b`` and ``x >= 0``.  All pivoting uses Bland's rule
(smallest eligible index enters, smallest basic index breaks ratio
ties), which rules out cycling, and every number is a Fraction, so the
reported optimum and witness are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .linalg import RatMatrix


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpProblem:
    """min or max of ``objective . x`` over ``constraints @ x = rhs``, ``x >= 0``."""

    objective: tuple[Fraction, ...]
    constraints: RatMatrix
    rhs: tuple[Fraction, ...]
    maximize: bool = True

    def __post_init__(self) -> None:
        if len(self.objective) != self.constraints.cols:
            raise ValueError("objective length does not match variable count")
        if len(self.rhs) != self.constraints.rows:
            raise ValueError("rhs length does not match constraint count")


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    value: Fraction | None = None
    witness: tuple[Fraction, ...] | None = None


def _pivot(tableau: list[list[Fraction]], basis: list[int],
           cost: list[Fraction] | None, row: int, col: int) -> None:
    piv = tableau[row][col]
    tableau[row] = [x / piv for x in tableau[row]]
    for r in range(len(tableau)):
        if r != row and tableau[r][col] != 0:
            f = tableau[r][col]
            tableau[r] = [x - f * y for x, y in zip(tableau[r], tableau[row])]
    if cost is not None and cost[col] != 0:
        f = cost[col]
        cost[:] = [x - f * y for x, y in zip(cost, tableau[row])]
    basis[row] = col


def _iterate(tableau: list[list[Fraction]], basis: list[int],
             cost: list[Fraction], ncols: int) -> str:
    # cost is the reduced-cost row (length ncols + 1, last slot tracks
    # minus the current objective value); minimization throughout.
    while True:
        entering = next((j for j in range(ncols) if cost[j] < 0), None)
        if entering is None:
            return "optimal"
        leaving, best = None, None
        for i, row in enumerate(tableau):
            if row[entering] > 0:
                ratio = row[-1] / row[entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        if leaving is None:
            return "unbounded"
        _pivot(tableau, basis, cost, leaving, entering)


def _reduced_costs(tableau: list[list[Fraction]], basis: list[int],
                   c: list[Fraction], ncols: int) -> list[Fraction]:
    cost = list(c[:ncols]) + [Fraction(0)]
    for i, bi in enumerate(basis):
        cb = c[bi]
        if cb != 0:
            cost = [x - cb * y for x, y in zip(cost, tableau[i])]
    return cost


def simplex_solve(problem: LpProblem) -> LpOutcome:
    """Solve an exact LP; the witness (when optimal) is a basic feasible point."""
    nvars = problem.constraints.cols
    nrows = problem.constraints.rows
    sense = Fraction(-1) if problem.maximize else Fraction(1)
    c_internal = [sense * x for x in problem.objective]

    # Phase 1.  Rows whose right-hand side lines up with a singleton
    # column (one nonzero in the whole column) can start basic in that
    # column; everything else gets an artificial variable whose sum is
    # minimized.
    base: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(nrows):
        row = list(problem.constraints.row(i))
        b = problem.rhs[i]
        if b < 0:
            row = [-x for x in row]
            b = -b
        base.append(row)
        rhs.append(b)
    nonzeros = [0] * nvars
    for row in base:
        for j, x in enumerate(row):
            if x != 0:
                nonzeros[j] += 1
    crash: list[int | None] = []
    for i, row in enumerate(base):
        col = next(
            (j for j, x in enumerate(row)
             if x != 0 and nonzeros[j] == 1 and rhs[i] / x >= 0),
            None,
        )
        crash.append(col)
        if col is not None:
            piv = row[col]
            base[i] = [x / piv for x in row]
            rhs[i] /= piv

    art_slot = {i: k for k, i in enumerate(
        i for i, col in enumerate(crash) if col is None)}
    narts = len(art_slot)
    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    for i in range(nrows):
        unit = [Fraction(0)] * narts
        if crash[i] is None:
            unit[art_slot[i]] = Fraction(1)
            basis.append(nvars + art_slot[i])
        else:
            basis.append(crash[i])
        tableau.append(base[i] + unit + [rhs[i]])
    phase1_c = [Fraction(0)] * nvars + [Fraction(1)] * narts
    cost = _reduced_costs(tableau, basis, phase1_c, nvars + narts)
    status = _iterate(tableau, basis, cost, nvars + narts)
    assert status == "optimal", "phase 1 is bounded below by zero"
    if -cost[-1] != 0:
        return LpOutcome(LpStatus.INFEASIBLE)

    # Drive leftover artificials out of the basis; a row where that is
    # impossible is redundant and gets dropped.
    drop: list[int] = []
    for i in range(len(tableau)):
        if basis[i] >= nvars:
            col = next((j for j in range(nvars) if tableau[i][j] != 0), None)
            if col is None:
                drop.append(i)
            else:
                _pivot(tableau, basis, None, i, col)
    for i in reversed(drop):
        del tableau[i]
        del basis[i]
    tableau = [row[:nvars] + [row[-1]] for row in tableau]

    # Phase 2 on the real objective.
    cost = _reduced_costs(tableau, basis, c_internal, nvars)
    status = _iterate(tableau, basis, cost, nvars)
    if status == "unbounded":
        return LpOutcome(LpStatus.UNBOUNDED)
    x = [Fraction(0)] * nvars
    for i, bi in enumerate(basis):
        x[bi] = tableau[i][-1]
    value = sum((cj * xj for cj, xj in zip(problem.objective, x)), Fraction(0))
    return LpOutcome(LpStatus.OPTIMAL, value, tuple(x))
