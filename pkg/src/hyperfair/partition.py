"""Explicit interval partitions from per-atom weight systems.

Realizing a target matrix does not need anything beyond cutting each
atom of the common refinement into consecutive player slices: if
player ``j`` receives fraction ``alpha[a][j]`` of atom ``a`` then
player ``i`` values player ``j``'s total piece at
``sum_a alpha[a][j] * measure_i(atom a)``, because densities are
constant on atoms.  Finding weights that hit ``P + delta K`` is a
linear program; composing the Gram stochastic factor with the
normalized density weights gives a second, LP-free construction, and
both land on the same sharing matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .hyperfree import UNCONSTRAINED, GoalMatrix, TargetPoint, stochastic_factor
from .linalg import RatMatrix, pseudo_inverse, rat
from .measures import Interval, MeasureProfile, gram_matrix, rn_weights
from .simplex import LpProblem, LpStatus, simplex_solve

#: Mode marker for :func:`solve_alpha`: maximize the margin instead of fixing it.
MAXIMIZE = "max"


class InfeasibleError(Exception):
    """No weight system realizes the requested target."""


class PartitionError(ValueError):
    """The interval lists do not form a partition of [0, 1]."""


@dataclass(frozen=True)
class WeightSystem:
    """Row per atom, column per player; nonnegative rows summing to 1."""

    weights: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValueError("need at least one atom row")
        width = len(self.weights[0])
        for a, row in enumerate(self.weights):
            if len(row) != width:
                raise ValueError("weight rows have inconsistent lengths")
            if any(w < 0 for w in row):
                raise ValueError(f"atom {a} has a negative weight")
            if sum(row, Fraction(0)) != 1:
                raise ValueError(f"atom {a} weights must sum to 1")

    @staticmethod
    def make(rows: Sequence[Sequence[int | str | Fraction]]) -> WeightSystem:
        return WeightSystem(tuple(tuple(rat(w) for w in row) for row in rows))

    @property
    def num_atoms(self) -> int:
        return len(self.weights)

    @property
    def n(self) -> int:
        return len(self.weights[0])


@dataclass(frozen=True)
class Partition:
    """One tuple of intervals per player, jointly tiling [0, 1].

    Construction validates the tiling: intervals must stay inside
    [0, 1], interiors must not overlap, and the union must cover
    everything; violations raise :class:`PartitionError` naming the
    offending spot.
    """

    pieces: tuple[tuple[Interval, ...], ...]

    def __post_init__(self) -> None:
        marked = sorted(
            ((iv, owner) for owner, ivs in enumerate(self.pieces) for iv in ivs if iv.length > 0),
            key=lambda pair: (pair[0].lo, pair[0].hi),
        )
        cursor = Fraction(0)
        for iv, owner in marked:
            if iv.lo > cursor:
                raise PartitionError(f"coverage gap [{cursor}, {iv.lo}] is assigned to nobody")
            if iv.lo < cursor:
                raise PartitionError(
                    f"interval {iv} of player {owner} overlaps [{iv.lo}, {min(iv.hi, cursor)}]"
                )
            cursor = iv.hi
        if cursor != 1:
            raise PartitionError(f"coverage gap [{cursor}, 1] is assigned to nobody")

    @property
    def n(self) -> int:
        return len(self.pieces)

    def total_length(self, player: int) -> Fraction:
        return sum((iv.length for iv in self.pieces[player]), Fraction(0))


def build_from_weights(profile: MeasureProfile, w: WeightSystem) -> Partition:
    """Cut every atom left to right in player order by the given weights.

    Player ``j``'s slice of an atom has length ``weight * atom length``;
    zero-length slices are dropped.  The resulting piece of player ``j``
    has measure ``sum_a w[a][j] * measure_i(atom a)`` under every player
    ``i``, exactly.
    """
    if w.num_atoms != len(profile.atoms):
        raise ValueError(f"weight system has {w.num_atoms} rows, profile has {len(profile.atoms)} atoms")
    if w.n != profile.n:
        raise ValueError("weight system and profile disagree on the number of players")
    pieces: list[list[Interval]] = [[] for _ in range(profile.n)]
    for a, atom in enumerate(profile.atoms):
        cursor = atom.lo
        for j in range(profile.n):
            width = w.weights[a][j] * atom.length
            if width > 0:
                pieces[j].append(Interval(cursor, cursor + width))
                cursor += width
        assert cursor == atom.hi
    return Partition(tuple(tuple(p) for p in pieces))


def solve_alpha(profile: MeasureProfile, k: GoalMatrix, p: TargetPoint,
                delta: Fraction | int | str = MAXIMIZE):
    """Weight system realizing ``P + delta K``, by linear programming.

    ``delta`` may be an exact rational (realize that margin or raise
    :class:`InfeasibleError`) or :data:`MAXIMIZE` (find the largest
    admissible margin).  Atoms where every density vanishes carry no
    constraints and are handed wholly to player 0.  Returns
    ``(weights, delta)``; when the goal matrix is zero and the margin
    was to be maximized, the margin is :data:`UNCONSTRAINED` because
    any value realizes the same target.
    """
    n = profile.n
    if k.n != n or p.n != n:
        raise ValueError("goal matrix / target size must match the profile")
    maximize = delta == MAXIMIZE
    if maximize:
        fixed = Fraction(0)
    else:
        try:
            fixed = rat(delta)
        except (TypeError, ValueError):
            raise ValueError(
                f"margin must be a rational or {MAXIMIZE!r}, got {delta!r}"
            ) from None
        if fixed < 0:
            raise ValueError("margin must be nonnegative")
    if maximize and k.is_zero():
        weights, _ = solve_alpha(profile, k, p, Fraction(0))
        return weights, UNCONSTRAINED

    active = [a for a in range(len(profile.atoms)) if not profile.is_null_atom(a)]
    nvars = len(active) * n + (1 if maximize else 0)
    delta_var = len(active) * n
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for ai in range(len(active)):  # each atom fully distributed
        row = [Fraction(0)] * nvars
        for j in range(n):
            row[ai * n + j] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    for i in range(n):  # player i's value of player j's piece
        for j in range(n):
            row = [Fraction(0)] * nvars
            for ai, a in enumerate(active):
                row[ai * n + j] = profile.atom_measure(i, a)
            if maximize:
                row[delta_var] = -k.mat[i, j]
                rhs.append(p.shares[j])
            else:
                rhs.append(p.shares[j] + k.mat[i, j] * fixed)
            rows.append(row)

    objective = [Fraction(0)] * nvars
    if maximize:
        objective[delta_var] = Fraction(1)
    outcome = simplex_solve(LpProblem(
        tuple(objective),
        RatMatrix(len(rows), nvars, tuple(x for row in rows for x in row)),
        tuple(rhs),
        maximize=True,
    ))
    if outcome.status is LpStatus.INFEASIBLE:
        raise InfeasibleError(
            f"no weight system realizes the target at margin "
            f"{'max' if maximize else fixed}"
        )
    assert outcome.status is LpStatus.OPTIMAL, "a nonzero goal entry bounds the margin"
    assert outcome.witness is not None
    x = outcome.witness
    achieved = x[delta_var] if maximize else fixed
    weight_rows: list[tuple[Fraction, ...]] = []
    for a in range(len(profile.atoms)):
        if a in set(active):
            ai = active.index(a)
            weight_rows.append(tuple(x[ai * n + j] for j in range(n)))
        else:
            weight_rows.append(tuple(Fraction(1 if j == 0 else 0) for j in range(n)))
    return WeightSystem(tuple(weight_rows)), achieved


def build_via_stochastic_factor(profile: MeasureProfile, k: GoalMatrix, p: TargetPoint,
                                delta: Fraction | int | str) -> Partition:
    """LP-free construction through the Gram pseudo-inverse.

    The stochastic factor ``S`` reweights the normalized density
    weights: on each atom, player ``j`` receives
    ``sum_i S[i][j] * w_i(atom)``.  Null atoms go wholly to player 0.
    Raises the :func:`hyperfair.hyperfree.stochastic_factor` errors when
    the goal matrix is improper or the margin is too large.
    """
    g = gram_matrix(profile)
    cert = stochastic_factor(g, pseudo_inverse(g), k, p, delta)
    n = profile.n
    rows = []
    for a in range(len(profile.atoms)):
        base = rn_weights(profile, a)
        if all(v == 0 for v in base):
            rows.append(tuple(Fraction(1 if j == 0 else 0) for j in range(n)))
            continue
        rows.append(tuple(
            sum((base[i] * cert.factor[i, j] for i in range(n)), Fraction(0))
            for j in range(n)
        ))
    return build_from_weights(profile, WeightSystem(tuple(rows)))
