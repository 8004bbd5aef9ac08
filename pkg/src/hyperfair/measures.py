"""Piecewise-constant player preferences on the unit interval.

A :class:`StepDensity` is a probability density on [0, 1] that is
constant between consecutive breakpoints.  A family of densities is
merged onto one shared grid by :func:`common_refinement`; the cells of
that grid are called atoms, and every exact computation downstream
(measures of intervals, the Gram matrix of the normalized density
weights, linear relations between the measures) reduces to finite sums
over atoms.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import RatMatrix, kernel_basis, rat


@dataclass(frozen=True)
class Interval:
    """Closed subinterval of [0, 1] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not (0 <= self.lo <= self.hi <= 1):
            raise ValueError(f"interval [{self.lo}, {self.hi}] must satisfy 0 <= lo <= hi <= 1")

    @staticmethod
    def make(lo: int | str | Fraction, hi: int | str | Fraction) -> Interval:
        return Interval(rat(lo), rat(hi))

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class StepDensity:
    """Step-function probability density on [0, 1].

    ``values[i]`` is the density on ``[breakpoints[i], breakpoints[i+1]]``.
    Breakpoints must start at 0, end at 1, and strictly increase; values
    must be nonnegative and integrate to exactly 1.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        bp, vals = self.breakpoints, self.values
        if len(bp) < 2:
            raise ValueError("need at least two breakpoints")
        if bp[0] != 0 or bp[-1] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must strictly increase")
        if len(vals) != len(bp) - 1:
            raise ValueError("need exactly one value per cell")
        if any(v < 0 for v in vals):
            raise ValueError("density values must be nonnegative")
        mass = self._mass()
        if mass != 1:
            raise ValueError(f"density must integrate to 1, got {mass}")

    def _mass(self) -> Fraction:
        return sum(
            (v * (b - a) for v, a, b in zip(self.values, self.breakpoints, self.breakpoints[1:])),
            Fraction(0),
        )

    @staticmethod
    def make(breakpoints: Sequence[int | str | Fraction],
             values: Sequence[int | str | Fraction]) -> StepDensity:
        return StepDensity(tuple(rat(b) for b in breakpoints), tuple(rat(v) for v in values))

    @staticmethod
    def normalized(breakpoints: Sequence[int | str | Fraction],
                   values: Sequence[int | str | Fraction]) -> StepDensity:
        """Rescale arbitrary nonnegative step values so the mass is exactly 1."""
        bp = tuple(rat(b) for b in breakpoints)
        vals = tuple(rat(v) for v in values)
        mass = sum((v * (b - a) for v, a, b in zip(vals, bp, bp[1:])), Fraction(0))
        if mass <= 0:
            raise ValueError("cannot normalize a density with zero total mass")
        return StepDensity(bp, tuple(v / mass for v in vals))

    def value_on(self, iv: Interval) -> Fraction:
        """Density value on an interval contained in a single cell."""
        if iv.length == 0:
            return Fraction(0)
        cell = bisect_right(self.breakpoints, iv.lo) - 1
        cell = min(cell, len(self.values) - 1)
        if iv.hi > self.breakpoints[cell + 1]:
            raise ValueError(f"interval {iv} crosses a breakpoint")
        return self.values[cell]

    def integral(self, iv: Interval) -> Fraction:
        """Exact integral of the density over ``iv``."""
        total = Fraction(0)
        for v, a, b in zip(self.values, self.breakpoints, self.breakpoints[1:]):
            overlap = min(iv.hi, b) - max(iv.lo, a)
            if overlap > 0:
                total += v * overlap
        return total


@dataclass(frozen=True)
class MeasureProfile:
    """A family of step densities refined onto a common atom grid.

    ``atom_values[i][a]`` is the value of density ``i`` on atom ``a``.
    Build instances with :func:`common_refinement`.
    """

    densities: tuple[StepDensity, ...]
    atoms: tuple[Interval, ...]
    atom_values: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return len(self.densities)

    def atom_measure(self, player: int, atom: int) -> Fraction:
        """Measure the given player assigns to one whole atom."""
        return self.atom_values[player][atom] * self.atoms[atom].length

    def is_null_atom(self, atom: int) -> bool:
        """True when every density vanishes on the atom."""
        return all(self.atom_values[i][atom] == 0 for i in range(self.n))


def common_refinement(densities: Sequence[StepDensity]) -> MeasureProfile:
    """Merge densities onto the coarsest grid refining all of them.

    Coincident breakpoints collapse, so no atom has zero length.
    """
    if not densities:
        raise ValueError("need at least one density")
    cuts = sorted({b for d in densities for b in d.breakpoints})
    atoms = tuple(Interval(a, b) for a, b in zip(cuts, cuts[1:]))
    values = tuple(tuple(d.value_on(iv) for iv in atoms) for d in densities)
    return MeasureProfile(tuple(densities), atoms, values)


def measure_of(profile: MeasureProfile, player: int, iv: Interval) -> Fraction:
    """Exact measure the player's density assigns to an interval."""
    if not (0 <= player < profile.n):
        raise ValueError(f"player index {player} out of range")
    return profile.densities[player].integral(iv)


def rn_weights(profile: MeasureProfile, atom: int) -> tuple[Fraction, ...]:
    """Normalized density weights on an atom.

    Each player's density value divided by the sum over players; on an
    atom where every density vanishes the weights are all zero.
    """
    column = [profile.atom_values[i][atom] for i in range(profile.n)]
    total = sum(column, Fraction(0))
    if total == 0:
        return tuple(Fraction(0) for _ in column)
    return tuple(v / total for v in column)


def gram_matrix(profile: MeasureProfile) -> RatMatrix:
    """Pairwise integrals of the normalized weights against the sum measure.

    Entry (i, j) is the sum over atoms of ``w_i * w_j`` times the total
    measure of the atom, where ``w`` are the :func:`rn_weights`.  The
    result is symmetric, row-stochastic, and positive-semidefinite,
    with diagonal entries at least 1/n.
    """
    n = profile.n
    g = [[Fraction(0)] * n for _ in range(n)]
    for a, iv in enumerate(profile.atoms):
        column = [profile.atom_values[i][a] for i in range(n)]
        total = sum(column, Fraction(0))
        if total == 0:
            continue
        scale = iv.length / total
        for i in range(n):
            if column[i] == 0:
                continue
            for j in range(i, n):
                g[i][j] += column[i] * column[j] * scale
    for i in range(n):
        for j in range(i):
            g[i][j] = g[j][i]
    return RatMatrix(n, n, tuple(x for row in g for x in row))


def measure_relations(profile: MeasureProfile) -> list[tuple[Fraction, ...]]:
    """Canonical basis of linear dependencies among the player measures.

    A vector ``x`` is returned when ``sum_i x_i * measure_i`` is the
    zero measure; this is exactly the kernel of the Gram matrix.
    Independent measures yield ``[]``.
    """
    return kernel_basis(gram_matrix(profile))
