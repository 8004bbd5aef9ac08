"""Problem, partition, and report files.

Everything on disk is JSON with rationals as exact ``"num/den"``
strings (plain integers are also accepted on input).  Floats are
rejected with an error naming the offending field, never silently
rounded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .hyperfree import GoalMatrix, TargetPoint
from .linalg import RatMatrix, fmt
from .measures import Interval, StepDensity
from .partition import Partition
from .relations import RelationMatrix

MAXIMIZE = "max"


class ProblemFormatError(ValueError):
    """A problem or partition file does not match the schema."""


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ProblemFormatError(f"{where}: expected an exact rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ProblemFormatError(
            f"{where}: floating point {value!r} is not accepted; write an exact "
            f"string like \"1/3\""
        )
    if isinstance(value, str):
        from .linalg import _RAT_RE
        if _RAT_RE.match(value):
            return Fraction(value.replace(" ", ""))
    raise ProblemFormatError(f"{where}: expected an integer or \"num/den\" string, got {value!r}")


def _rational_list(value: Any, where: str) -> list[Fraction]:
    if not isinstance(value, list):
        raise ProblemFormatError(f"{where}: expected a list")
    return [parse_rational(x, f"{where}[{i}]") for i, x in enumerate(value)]


def _rational_grid(value: Any, where: str) -> list[list[Fraction]]:
    if not isinstance(value, list):
        raise ProblemFormatError(f"{where}: expected a list of rows")
    return [_rational_list(row, f"{where}[{i}]") for i, row in enumerate(value)]


@dataclass(frozen=True)
class Problem:
    """Parsed problem file: densities plus optional plan ingredients."""

    densities: tuple[StepDensity, ...]
    p: TargetPoint | None = None
    k: GoalMatrix | None = None
    r: RelationMatrix | None = None
    delta: Fraction | str | None = None

    @property
    def n(self) -> int:
        return len(self.densities)


def parse_problem(obj: Any, source: str = "problem") -> Problem:
    if not isinstance(obj, dict):
        raise ProblemFormatError(f"{source}: top level must be an object")
    known = {"players", "densities", "p", "K", "R", "delta"}
    unknown = set(obj) - known
    if unknown:
        raise ProblemFormatError(f"{source}: unknown fields {sorted(unknown)}")
    if "players" not in obj or "densities" not in obj:
        raise ProblemFormatError(f"{source}: 'players' and 'densities' are required")
    players = obj["players"]
    if not isinstance(players, int) or isinstance(players, bool) or players < 1:
        raise ProblemFormatError(f"{source}.players: expected a positive integer")
    raw_densities = obj["densities"]
    if not isinstance(raw_densities, list) or len(raw_densities) != players:
        raise ProblemFormatError(f"{source}.densities: expected a list of {players} densities")

    densities = []
    for i, d in enumerate(raw_densities):
        where = f"{source}.densities[{i}]"
        if not isinstance(d, dict) or set(d) != {"breakpoints", "values"}:
            raise ProblemFormatError(f"{where}: expected an object with 'breakpoints' and 'values'")
        try:
            densities.append(StepDensity(
                tuple(_rational_list(d["breakpoints"], f"{where}.breakpoints")),
                tuple(_rational_list(d["values"], f"{where}.values")),
            ))
        except ValueError as exc:
            if isinstance(exc, ProblemFormatError):
                raise
            raise ProblemFormatError(f"{where}: {exc}") from None

    p = None
    if "p" in obj:
        shares = _rational_list(obj["p"], f"{source}.p")
        if len(shares) != players:
            raise ProblemFormatError(f"{source}.p: expected {players} shares")
        try:
            p = TargetPoint(tuple(shares))
        except ValueError as exc:
            raise ProblemFormatError(f"{source}.p: {exc}") from None

    k = None
    if "K" in obj:
        grid = _rational_grid(obj["K"], f"{source}.K")
        if len(grid) != players or any(len(row) != players for row in grid):
            raise ProblemFormatError(f"{source}.K: expected a {players}x{players} matrix")
        try:
            k = GoalMatrix(RatMatrix.from_rows(grid))
        except ValueError as exc:
            raise ProblemFormatError(f"{source}.K: {exc}") from None

    r = None
    if "R" in obj:
        raw = obj["R"]
        if (not isinstance(raw, list) or len(raw) != players
                or any(not isinstance(row, list) or len(row) != players for row in raw)):
            raise ProblemFormatError(f"{source}.R: expected a {players}x{players} grid of symbols")
        try:
            r = RelationMatrix.from_symbols(raw)
        except ValueError as exc:
            raise ProblemFormatError(f"{source}.R: {exc}") from None

    delta: Fraction | str | None = None
    if "delta" in obj:
        if obj["delta"] == MAXIMIZE:
            delta = MAXIMIZE
        else:
            delta = parse_rational(obj["delta"], f"{source}.delta")
            if delta < 0:
                raise ProblemFormatError(f"{source}.delta: margin must be nonnegative")

    return Problem(tuple(densities), p, k, r, delta)


def serialize_problem(problem: Problem) -> dict:
    out: dict[str, Any] = {
        "players": problem.n,
        "densities": [
            {
                "breakpoints": [fmt(b) for b in d.breakpoints],
                "values": [fmt(v) for v in d.values],
            }
            for d in problem.densities
        ],
    }
    if problem.p is not None:
        out["p"] = [fmt(s) for s in problem.p.shares]
    if problem.k is not None:
        out["K"] = matrix_to_strings(problem.k.mat)
    if problem.r is not None:
        out["R"] = problem.r.to_symbols()
    if problem.delta is not None:
        out["delta"] = problem.delta if isinstance(problem.delta, str) else fmt(problem.delta)
    return out


def load_problem(path: str | Path) -> Problem:
    text = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"{path}: not valid JSON ({exc})") from None
    return parse_problem(obj, source=str(path))


def parse_partition(obj: Any, source: str = "partition") -> Partition:
    if not isinstance(obj, dict) or "intervals" not in obj:
        raise ProblemFormatError(f"{source}: expected an object with an 'intervals' field")
    raw = obj["intervals"]
    if not isinstance(raw, list) or not raw:
        raise ProblemFormatError(f"{source}.intervals: expected one interval list per player")
    pieces = []
    for j, lst in enumerate(raw):
        where = f"{source}.intervals[{j}]"
        if not isinstance(lst, list):
            raise ProblemFormatError(f"{where}: expected a list of [lo, hi] pairs")
        ivs = []
        for t, pair in enumerate(lst):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ProblemFormatError(f"{where}[{t}]: expected a [lo, hi] pair")
            lo = parse_rational(pair[0], f"{where}[{t}][0]")
            hi = parse_rational(pair[1], f"{where}[{t}][1]")
            try:
                ivs.append(Interval(lo, hi))
            except ValueError as exc:
                raise ProblemFormatError(f"{where}[{t}]: {exc}") from None
        pieces.append(tuple(ivs))
    return Partition(tuple(pieces))


def load_partition(path: str | Path) -> Partition:
    text = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"{path}: not valid JSON ({exc})") from None
    return parse_partition(obj, source=str(path))


def serialize_partition(part: Partition) -> dict:
    return {
        "intervals": [
            [[fmt(iv.lo), fmt(iv.hi)] for iv in pieces] for pieces in part.pieces
        ]
    }


def matrix_to_strings(m: RatMatrix) -> list[list[str]]:
    return [[fmt(x) for x in m.row(i)] for i in range(m.rows)]


def vector_to_strings(v: Sequence[Fraction]) -> list[str]:
    return [fmt(x) for x in v]


def write_json(path: str | Path, obj: dict) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")
