"""Incidence structures and the generalized-quadrangle verifier.

Points are integer indices, lines are sorted tuples of point indices.
The verifier checks the quadrangle axioms directly and returns a
parameter certificate; thin structures are certified too, thickness is
only reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import NotAGQ


class IncidenceStructure:
    """A point-line geometry with explicit lines.

    Lines are normalized to sorted tuples.  Duplicate lines, empty
    lines, out-of-range indices, repeated points within a line and
    isolated points are all rejected.
    """

    def __init__(
        self,
        num_points: int,
        lines: Iterable[Sequence[int]],
        name: str | None = None,
    ):
        if num_points < 1:
            raise ValueError("need at least one point")
        norm = []
        for line in lines:
            pts = tuple(sorted(line))
            if not pts:
                raise ValueError("empty line")
            if len(set(pts)) != len(pts):
                raise ValueError(f"repeated point in line {line}")
            if pts[0] < 0 or pts[-1] >= num_points:
                raise ValueError(f"point index out of range in line {line}")
            norm.append(pts)
        if len(set(norm)) != len(norm):
            raise ValueError("two lines have identical point sets")
        covered = {p for line in norm for p in line}
        if covered != set(range(num_points)):
            missing = sorted(set(range(num_points)) - covered)
            raise ValueError(f"isolated points: {missing}")
        self.num_points = num_points
        self.lines: tuple[tuple[int, ...], ...] = tuple(norm)
        self.name = name

    @property
    def num_lines(self) -> int:
        return len(self.lines)

    @cached_property
    def point_to_lines(self) -> tuple[tuple[int, ...], ...]:
        through: list[list[int]] = [[] for _ in range(self.num_points)]
        for j, line in enumerate(self.lines):
            for p in line:
                through[p].append(j)
        return tuple(tuple(t) for t in through)

    @cached_property
    def collinear(self) -> tuple[frozenset[int], ...]:
        """collinear[p] = points sharing a line with p, excluding p."""
        near: list[set[int]] = [set() for _ in range(self.num_points)]
        for line in self.lines:
            for p in line:
                near[p].update(line)
        return tuple(frozenset(s - {p}) for p, s in enumerate(near))

    def __repr__(self) -> str:
        label = self.name or f"{self.num_points}p/{self.num_lines}l"
        return f"IncidenceStructure({label})"


@dataclass(frozen=True)
class GQCertificate:
    """Verified quadrangle parameters: s+1 points per line, t+1 lines per point."""

    s: int
    t: int
    thick: bool
    num_points: int
    num_lines: int

    def __post_init__(self):
        s, t = self.s, self.t
        if self.num_points != (s + 1) * (s * t + 1) or self.num_lines != (t + 1) * (
            s * t + 1
        ):
            raise NotAGQ(
                {
                    "kind": "count-mismatch",
                    "s": s,
                    "t": t,
                    "num_points": self.num_points,
                    "num_lines": self.num_lines,
                }
            )


def verify_gq(q: IncidenceStructure) -> GQCertificate:
    """Check the quadrangle axioms; raise NotAGQ with a witness on failure.

    Axioms: uniform line size s+1 and point degree t+1, two points on at
    most one common line, and for every non-incident point-line pair
    exactly one point of the line collinear with the point.
    """
    sizes = {len(line) for line in q.lines}
    if len(sizes) != 1:
        raise NotAGQ({"kind": "line-size-mismatch", "sizes": sorted(sizes)})
    degrees = {len(t) for t in q.point_to_lines}
    if len(degrees) != 1:
        raise NotAGQ({"kind": "degree-mismatch", "degrees": sorted(degrees)})
    s = sizes.pop() - 1
    t = degrees.pop() - 1

    seen: dict[tuple[int, int], int] = {}
    for j, line in enumerate(q.lines):
        for a_idx in range(len(line)):
            for b_idx in range(a_idx + 1, len(line)):
                pair = (line[a_idx], line[b_idx])
                if pair in seen:
                    raise NotAGQ(
                        {
                            "kind": "point-pair-on-two-lines",
                            "points": list(pair),
                            "lines": [seen[pair], j],
                        }
                    )
                seen[pair] = j

    collinear = q.collinear
    for p in range(q.num_points):
        on = set(q.point_to_lines[p])
        for j, line in enumerate(q.lines):
            if j in on:
                continue
            hits = sum(1 for x in line if x in collinear[p])
            if hits != 1:
                raise NotAGQ(
                    {
                        "kind": "axiom-violation",
                        "point": p,
                        "line": j,
                        "collinear_count": hits,
                    }
                )

    return GQCertificate(
        s=s,
        t=t,
        thick=s >= 2 and t >= 2,
        num_points=q.num_points,
        num_lines=q.num_lines,
    )


def dual(q: IncidenceStructure) -> IncidenceStructure:
    """The dual structure: points become lines and vice versa."""
    return IncidenceStructure(
        num_points=q.num_lines,
        lines=[list(t) for t in q.point_to_lines],
        name=f"dual({q.name})" if q.name else None,
    )


@dataclass(frozen=True)
class ParameterCheck:
    ok: bool
    reason: str


def parameter_feasible(s: int, t: int) -> ParameterCheck:
    """Necessary conditions on quadrangle parameters.

    s+t must divide st(s+1)(t+1), and t <= s^2, s <= t^2.
    """
    if s < 1 or t < 1:
        raise ValueError("parameters must be >= 1")
    prod = s * t * (s + 1) * (t + 1)
    if prod % (s + t) != 0:
        return ParameterCheck(False, f"{s + t} does not divide {prod}")
    if t > s * s:
        return ParameterCheck(False, f"t = {t} exceeds s^2 = {s * s}")
    if s > t * t:
        return ParameterCheck(False, f"s = {s} exceeds t^2 = {t * t}")
    return ParameterCheck(True, "divisibility and inequality constraints hold")


def polarity_order_constraint(s: int) -> bool:
    """True iff 2s is a perfect square (exact integer arithmetic)."""
    if s < 1:
        raise ValueError("s must be >= 1")
    r = math.isqrt(2 * s)
    return r * r == 2 * s


def incidence_to_json(q: IncidenceStructure) -> dict:
    out = {"num_points": q.num_points, "lines": [list(line) for line in q.lines]}
    if q.name:
        out["name"] = q.name
    return out


def incidence_from_json(data: dict) -> IncidenceStructure:
    if "num_points" not in data or "lines" not in data:
        raise ValueError("incidence JSON needs 'num_points' and 'lines'")
    return IncidenceStructure(data["num_points"], data["lines"], name=data.get("name"))
