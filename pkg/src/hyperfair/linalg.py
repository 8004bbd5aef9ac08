"""Exact dense linear algebra over the rationals.

Every entry is a ``fractions.Fraction``; nothing in this module ever
rounds.  It provides the elimination kit used by the rest of the
package (reduced row echelon form, kernel bases, rank factorization,
the Moore-Penrose pseudo-inverse), the characteristic polynomial, and
a rational enclosure of the smallest (nonzero) eigenvalue of a
symmetric positive-semidefinite matrix, obtained by Sturm-chain
bisection so the enclosure is rigorous rather than floating point.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

Rational = Fraction

_RAT_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[1-9]\d*)?\s*$")


def rat(value: int | str | Fraction) -> Fraction:
    """Coerce an int, a Fraction, or a string like ``"-3/4"`` to a Fraction.

    Floats and decimal strings are rejected: they have no place in an
    exact pipeline, and accepting them would hide rounding at the door.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError(f"expected an exact rational, got bool {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RAT_RE.match(value):
            raise ValueError(f"expected an integer or 'num/den' string, got {value!r}")
        return Fraction(value.replace(" ", ""))
    raise TypeError(f"expected an exact rational, got {type(value).__name__} {value!r}")


def fmt(value: Fraction) -> str:
    """Canonical string form: ``"num/den"`` in lowest terms, or ``"num"``."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class RatMatrix:
    """Dense exact-rational matrix, stored row-major.

    Degenerate shapes (zero rows or zero columns) are legal; they show
    up naturally in rank factorizations of the zero matrix.
    """

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"shape {self.rows}x{self.cols} needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int | str | Fraction]]) -> RatMatrix:
        data = [list(r) for r in rows]
        width = len(data[0]) if data else 0
        if any(len(r) != width for r in data):
            raise ValueError("rows have inconsistent lengths")
        return RatMatrix(len(data), width, tuple(rat(x) for r in data for x in r))

    @staticmethod
    def identity(n: int) -> RatMatrix:
        one, zero = Fraction(1), Fraction(0)
        return RatMatrix(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> RatMatrix:
        return RatMatrix(rows, cols, (Fraction(0),) * (rows * cols))

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index ({i}, {j}) out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> RatMatrix:
        return RatMatrix(
            self.cols, self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._same_shape(other)
        return RatMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        self._same_shape(other)
        return RatMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> RatMatrix:
        return RatMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __mul__(self, scalar: int | Fraction) -> RatMatrix:
        c = rat(scalar)
        return RatMatrix(self.rows, self.cols, tuple(a * c for a in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum((ri[k] * other.entries[k * other.cols + j] for k in range(self.cols)), Fraction(0)))
        return RatMatrix(self.rows, other.cols, tuple(out))

    def mat_vec(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ValueError("trace needs a square matrix")
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(self.row(i), Fraction(0)) for i in range(self.rows))

    def max_abs(self) -> Fraction:
        return max((abs(e) for e in self.entries), default=Fraction(0))

    def __str__(self) -> str:
        cells = [[fmt(self[i, j]) for j in range(self.cols)] for i in range(self.rows)]
        widths = [max((len(cells[i][j]) for i in range(self.rows)), default=0) for j in range(self.cols)]
        return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)

    def _same_shape(self, other: RatMatrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")


def hstack(left: RatMatrix, right: RatMatrix) -> RatMatrix:
    if left.rows != right.rows:
        raise ValueError("hstack needs matching row counts")
    out = []
    for i in range(left.rows):
        out.extend(left.row(i))
        out.extend(right.row(i))
    return RatMatrix(left.rows, left.cols + right.cols, tuple(out))


def rref(m: RatMatrix) -> tuple[RatMatrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column indices.

    First nonzero entry in each column is taken as pivot, which keeps
    the output deterministic; with exact arithmetic there is no
    numerical reason to prefer any other choice.
    """
    work = [list(m.row(i)) for i in range(m.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot_row = next((i for i in range(r, m.rows) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = work[r][c]
        work[r] = [x / inv for x in work[r]]
        for i in range(m.rows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    flat = tuple(x for row in work for x in row)
    return RatMatrix(m.rows, m.cols, flat), tuple(pivots)


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


def _canonical_kernel_vector(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    # Scale so the first nonzero entry is +1, clear denominators, and
    # divide out the integer content.  The leading entry stays positive.
    lead = next(x for x in v if x != 0)
    scaled = [x / lead for x in v]
    den = reduce(math.lcm, (x.denominator for x in scaled), 1)
    ints = [int(x * den) for x in scaled]
    content = reduce(math.gcd, (abs(i) for i in ints))
    return tuple(Fraction(i // content) for i in ints)


def kernel_basis(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Canonical basis of the right null space of ``m``.

    Each basis vector has integer entries with content 1 and a positive
    leading entry, so equal subspaces produce identical bases and tests
    can compare them literally.  A full-rank matrix yields ``[]``.
    """
    red, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r, free]
        basis.append(_canonical_kernel_vector(v))
    return basis


def rank_factorization(m: RatMatrix) -> tuple[RatMatrix, RatMatrix]:
    """Write ``m = c @ f`` with ``c`` of full column rank and ``f`` of full row rank.

    ``c`` collects the pivot columns of ``m`` in order; ``f`` is the
    nonzero part of the reduced row echelon form.  For the zero matrix
    the factors have a zero inner dimension and the product is still
    exact.
    """
    red, pivots = rref(m)
    r = len(pivots)
    c = RatMatrix(m.rows, r, tuple(m[i, p] for i in range(m.rows) for p in pivots))
    f = RatMatrix(r, m.cols, tuple(red[i, j] for i in range(r) for j in range(m.cols)))
    return c, f


def inverse(m: RatMatrix) -> RatMatrix:
    if not m.is_square():
        raise ValueError("only square matrices have inverses")
    n = m.rows
    red, pivots = rref(hstack(m, RatMatrix.identity(n)))
    if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return RatMatrix(n, n, tuple(red[i, n + j] for i in range(n) for j in range(n)))


def pseudo_inverse(m: RatMatrix) -> RatMatrix:
    """Exact Moore-Penrose pseudo-inverse via rank factorization.

    With ``m = c @ f`` as in :func:`rank_factorization`, the
    pseudo-inverse is ``f' (f f')^-1 (c' c)^-1 c'`` where the primes are
    transposes.  Both inner matrices are r x r and nonsingular, so the
    result is exact and satisfies the four Penrose identities with
    equality, not approximately.
    """
    c, f = rank_factorization(m)
    if c.cols == 0:
        return RatMatrix.zeros(m.cols, m.rows)
    ft, ct = f.transpose(), c.transpose()
    return ft @ inverse(f @ ft) @ inverse(ct @ c) @ ct


def char_poly(m: RatMatrix) -> tuple[Fraction, ...]:
    """Coefficients of det(xI - m), ascending: index k holds the x**k term.

    Computed by the Faddeev-LeVerrier recurrence, which needs only
    matrix products and exact division by integers.
    """
    if not m.is_square():
        raise ValueError("characteristic polynomial needs a square matrix")
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    acc = RatMatrix.zeros(n, n)
    ident = RatMatrix.identity(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        acc = (m @ acc) + (c * ident)
        c = -(m @ acc).trace() / k
        coeffs[n - k] = c
    return tuple(coeffs)


# -- polynomial helpers (ascending coefficient lists) ------------------

def poly_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_deriv(p: Sequence[Fraction]) -> list[Fraction]:
    return _poly_trim([c * k for k, c in enumerate(p)][1:] or [Fraction(0)])


def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if b == [Fraction(0)]:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    while len(r) >= len(b) and _poly_trim(list(r)) != [Fraction(0)]:
        shift = len(r) - len(b)
        factor = r[-1] / b[-1]
        if factor == 0:
            r.pop()
            continue
        q[shift] = factor
        for i, c in enumerate(b):
            r[shift + i] -= factor * c
        r.pop()
    return _poly_trim(q), _poly_trim(r if r else [Fraction(0)])


def _poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    while b != [Fraction(0)]:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a[-1] != 0:
        a = [c / a[-1] for c in a]
    return a


def _squarefree_part(p: Sequence[Fraction]) -> list[Fraction]:
    g = _poly_gcd(p, _poly_deriv(p))
    q, r = _poly_divmod(p, g)
    assert _poly_trim(r) == [Fraction(0)]
    return q


def _sturm_chain(p: Sequence[Fraction]) -> list[list[Fraction]]:
    chain = [_poly_trim(list(p)), _poly_deriv(p)]
    while _poly_trim(list(chain[-1])) != [Fraction(0)]:
        _, r = _poly_divmod(chain[-2], chain[-1])
        if _poly_trim(list(r)) == [Fraction(0)]:
            break
        chain.append([-c for c in r])
    return chain


def _sign_variations(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def smallest_eigenvalue(m: RatMatrix, tol: Fraction | int | str = Fraction(1, 2**40)) -> tuple[Fraction, Fraction]:
    """Rational enclosure of the smallest nonzero eigenvalue of ``m``.

    ``m`` must be symmetric and is assumed positive-semidefinite, so
    its spectrum is real and nonnegative.  Zero eigenvalues are
    stripped from the characteristic polynomial first; the remaining
    squarefree part is bisected with Sturm counts until the enclosure
    isolates the smallest root and its width is at most ``tol``.  For a
    nonsingular matrix this is the smallest eigenvalue outright.

    Returns ``(lo, hi)`` with ``lo < smallest root <= hi`` and
    ``hi - lo <= tol``.
    """
    tol = rat(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if not m.is_symmetric():
        raise ValueError("smallest_eigenvalue needs a symmetric matrix")
    p = list(char_poly(m))
    first_nonzero = next(i for i, c in enumerate(p) if c != 0)
    q = p[first_nonzero:]
    if len(q) == 1:
        raise ValueError("matrix has no nonzero eigenvalue")
    q = _squarefree_part(q)
    q = [c / q[-1] for c in q]
    bound = Fraction(1) + max(abs(c) for c in q[:-1])
    chain = _sturm_chain(q)

    def roots_up_to(x: Fraction) -> int:
        # distinct roots in the half-open interval (0, x]
        if poly_eval(q, x) == 0:
            deflated, rem = _poly_divmod(q, [-x, Fraction(1)])
            assert _poly_trim(rem) == [Fraction(0)]
            sub = _sturm_chain(deflated)
            return 1 + _sign_variations(sub, Fraction(0)) - _sign_variations(sub, x)
        return _sign_variations(chain, Fraction(0)) - _sign_variations(chain, x)

    lo, hi = Fraction(0), bound
    n_hi = roots_up_to(hi)
    if n_hi == 0:
        raise ValueError("matrix has no positive eigenvalue; is it positive-semidefinite?")
    while n_hi > 1 or hi - lo > tol:
        mid = (lo + hi) / 2
        c = roots_up_to(mid)
        if c >= 1:
            hi, n_hi = mid, c
        else:
            lo = mid
    return lo, hi
