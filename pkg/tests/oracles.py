"""Independent reference computations used to cross-check the library.

Nothing here imports the code paths under test: the characteristic
polynomial comes from literal cofactor expansion, LP optima from
brute-force basis enumeration, and sign-pattern feasibility from grid
sampling of the constraint subspace.  Keeping these routes separate is
the point; do not "simplify" them to call the production code.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

from hyperfair.linalg import RatMatrix, kernel_basis, poly_eval, rref

# -- polynomial arithmetic on ascending coefficient lists ---------------

def poly_add(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return out


def poly_scale(a, c):
    return [x * c for x in a]


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def charpoly_by_cofactors(m: RatMatrix) -> list[Fraction]:
    """det(xI - m) expanded recursively along the first row."""
    n = m.rows
    cells = [[[Fraction(0)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            entry = [-m[i, j]]
            if i == j:
                entry = poly_add(entry, [Fraction(0), Fraction(1)])
            cells[i][j] = entry

    def det(rows, cols):
        if len(rows) == 1:
            return cells[rows[0]][cols[0]]
        total = [Fraction(0)]
        r = rows[0]
        for t, c in enumerate(cols):
            minor = det(rows[1:], cols[:t] + cols[t + 1:])
            term = poly_mul(cells[r][c], minor)
            total = poly_add(total, term if t % 2 == 0 else poly_scale(term, Fraction(-1)))
        return total

    out = det(tuple(range(n)), tuple(range(n)))
    return out + [Fraction(0)] * (n + 1 - len(out))


# -- brute-force LP reference -------------------------------------------

def _independent_rows(a_rows, b):
    """Drop dependent rows; return None when the system is inconsistent."""
    keep_rows, keep_rhs = [], []
    for row, rhs in zip(a_rows, b):
        trial = keep_rows + [list(row)]
        trial_rhs = keep_rhs + [rhs]
        m = RatMatrix.from_rows(trial)
        aug = RatMatrix.from_rows([r + [v] for r, v in zip(trial, trial_rhs)])
        r_plain = len(rref(m)[1])
        r_aug = len(rref(aug)[1])
        if r_aug > r_plain:
            return None  # inconsistent
        if r_plain == len(trial):
            keep_rows, keep_rhs = trial, trial_rhs
    return keep_rows, keep_rhs


def _solve_square(rows, rhs):
    n = len(rows)
    aug = RatMatrix.from_rows([list(r) + [v] for r, v in zip(rows, rhs)])
    red, pivots = rref(aug)
    if tuple(pivots) != tuple(range(n)):
        return None
    return [red[i, n] for i in range(n)]

def lp_vertices(constraints: RatMatrix, rhs):
    """Basic feasible points of {A x = b, x >= 0}, by basis enumeration."""
    reduced = _independent_rows(constraints.to_rows(), list(rhs))
    if reduced is None:
        return None  # infeasible before even looking at signs
    rows, b = reduced
    m = len(rows)
    nv = constraints.cols
    vertices = []
    if m == 0:
        return [[Fraction(0)] * nv]
    for basis in combinations(range(nv), m):
        square = [[row[j] for j in basis] for row in rows]
        sol = _solve_square(square, b)
        if sol is None or any(x < 0 for x in sol):
            continue
        x = [Fraction(0)] * nv
        for j, v in zip(basis, sol):
            x[j] = v
        vertices.append(x)
    return vertices


def lp_optimum_by_vertices(objective, constraints, rhs, maximize=True):
    """('infeasible', None) | ('optimal', best vertex value).

    Sound for bounded problems; for unbounded ones the caller should
    use :func:`lp_value_reachable` instead.
    """
    vertices = lp_vertices(constraints, rhs)
    if vertices is None or not vertices:
        return "infeasible", None
    values = [sum((c * x for c, x in zip(objective, v)), Fraction(0)) for v in vertices]
    return "optimal", (max(values) if maximize else min(values))


def lp_value_reachable(objective, constraints, rhs, target) -> bool:
    """Is there a feasible x with objective . x == target?  Decides by
    vertex enumeration of the slice polytope, splitting the objective
    row into the equality system."""
    rows = [list(r) for r in constraints.to_rows()]
    rows.append(list(objective))
    new_rhs = list(rhs) + [target]
    vertices = lp_vertices(RatMatrix.from_rows(rows), new_rhs)
    return bool(vertices)


# -- grid oracle for sign-pattern feasibility ---------------------------

def grid_sign_feasible(r_cells, relations, n, steps=None) -> bool:
    """Sample proper matrices on a rational grid and test the pattern.

    The equality constraints (zero row sums, relation columns, EQ
    cells) are solved exactly first; the grid runs over coefficients of
    the resulting kernel basis, so every sampled matrix satisfies the
    equalities by construction and only the strict signs are tested.
    """
    if steps is None:
        steps = [Fraction(k, 4) for k in range(-4, 5)]
    eq_rows = []
    for i in range(n):  # row sums
        row = [Fraction(0)] * (n * n)
        for j in range(n):
            row[i * n + j] = Fraction(1)
        eq_rows.append(row)
    for lam in relations:  # relation columns
        for j in range(n):
            row = [Fraction(0)] * (n * n)
            for i in range(n):
                row[i * n + j] = Fraction(lam[i])
            eq_rows.append(row)
    for i in range(n):  # EQ cells
        for j in range(n):
            if r_cells[i][j] == "=":
                row = [Fraction(0)] * (n * n)
                row[i * n + j] = Fraction(1)
                eq_rows.append(row)
    basis = kernel_basis(RatMatrix.from_rows(eq_rows))
    if not basis:
        # only the zero matrix satisfies the equalities
        return all(r_cells[i][j] == "=" for i in range(n) for j in range(n))

    strict = [(i, j, r_cells[i][j]) for i in range(n) for j in range(n)
              if r_cells[i][j] != "="]
    if not strict:
        return True
    for coeffs in product(steps, repeat=len(basis)):
        if all(c == 0 for c in coeffs):
            continue
        k = [sum((c * v[t] for c, v in zip(coeffs, basis)), Fraction(0))
             for t in range(n * n)]
        ok = True
        for i, j, sym in strict:
            val = k[i * n + j]
            if sym == ">" and not val > 0:
                ok = False
                break
            if sym == "<" and not val < 0:
                ok = False
                break
        if ok:
            return True
    return False
