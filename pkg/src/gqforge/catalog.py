"""Deterministic quadrangle fixtures.

The ordinary quadrangle, the symplectic quadrangles over GF(2) and
GF(3), the combinatorial regular-point test, and Payne derivation.  The
symplectic and Payne constructions are standard; every fixture is
validated through the quadrangle verifier and the parameter counting
identities, never trusted as built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotRegularPoint, UnsupportedField
from .incidence import IncidenceStructure, verify_gq

Vector = tuple[int, int, int, int]


def ordinary_quadrangle() -> IncidenceStructure:
    """The 4-cycle: unique thin quadrangle of order (1,1)."""
    return IncidenceStructure(4, [(0, 1), (1, 2), (2, 3), (0, 3)], name="ordinary")


def _normalize(v: Vector, q: int) -> Vector:
    lead = next(x for x in v if x != 0)
    scale = pow(lead, -1, q)
    return tuple((x * scale) % q for x in v)  # type: ignore[return-value]


def _form(u: Vector, v: Vector, q: int) -> int:
    # Fixed nondegenerate alternating form: u1v2 - u2v1 + u3v4 - u4v3.
    return (u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2]) % q


def symplectic_gq(q: int) -> IncidenceStructure:
    """W(q): projective points of a 4-space with its totally isotropic lines.

    Point indices follow the lexicographic order of normalized
    coordinate vectors, so fixtures are bit-reproducible.
    """
    if q not in (2, 3):
        raise UnsupportedField(f"q = {q}; only q in {{2, 3}} is exposed")
    vectors = [v for v in itertools.product(range(q), repeat=4) if any(v)]
    points = sorted({_normalize(v, q) for v in vectors})
    index = {v: i for i, v in enumerate(points)}

    lines = set()
    for i, u in enumerate(points):
        for v in points[i + 1 :]:
            if _form(u, v, q) != 0:
                continue
            span = set()
            for a in range(q):
                for b in range(q):
                    if a == 0 and b == 0:
                        continue
                    w = tuple((a * u[t] + b * v[t]) % q for t in range(4))
                    span.add(index[_normalize(w, q)])
            lines.add(tuple(sorted(span)))
    return IncidenceStructure(len(points), sorted(lines), name=f"W({q})")


def _perp(q: IncidenceStructure, x: int) -> frozenset[int]:
    return q.collinear[x] | {x}


def double_perp(q: IncidenceStructure, x: int, y: int) -> frozenset[int]:
    """{x,y}^perp-perp: common perp of every point collinear with both."""
    span = _perp(q, x) & _perp(q, y)
    out: frozenset[int] | None = None
    for w in span:
        out = _perp(q, w) if out is None else out & _perp(q, w)
    return out if out is not None else frozenset()


def is_regular_point(q: IncidenceStructure, x: int) -> bool:
    """Combinatorial regularity: every double perp through x has size t+1."""
    cert = verify_gq(q)
    for y in range(q.num_points):
        if y == x or y in q.collinear[x]:
            continue
        if len(double_perp(q, x, y)) != cert.t + 1:
            return False
    return True


def payne_derive(q: IncidenceStructure, x: int) -> IncidenceStructure:
    """Payne derivation at a regular point of a quadrangle of order (s,s).

    Surviving points are those not collinear with x; lines are the old
    lines missing x (restricted) together with the punctured double
    perps through x.  The result has order (s-1, s+1).
    """
    cert = verify_gq(q)
    if cert.s != cert.t:
        raise ValueError(f"Payne derivation needs order (s,s), got ({cert.s},{cert.t})")
    if not is_regular_point(q, x):
        raise NotRegularPoint(f"point {x} is not regular")

    dead = _perp(q, x)
    survivors = [p for p in range(q.num_points) if p not in dead]
    new_index = {p: i for i, p in enumerate(survivors)}

    derived = set()
    for line in q.lines:
        if x in line:
            continue
        rest = tuple(sorted(new_index[p] for p in line if p in new_index))
        if len(rest) != cert.s:
            raise AssertionError("restricted line has the wrong size")
        derived.add(rest)
    for y in survivors:
        hyper = double_perp(q, x, y) - {x}
        if not all(p in new_index for p in hyper):
            raise AssertionError("double perp leaks into the perp of x")
        derived.add(tuple(sorted(new_index[p] for p in hyper)))

    name = f"payne({q.name},{x})" if q.name else None
    return IncidenceStructure(len(survivors), sorted(derived), name=name)


@dataclass(frozen=True)
class FixtureSpec:
    """Named fixture recipe for the CLI."""

    kind: str  # ordinary | symplectic | payne
    q: int | None = None
    point: int = 0


FIXTURES = {
    "ordinary": FixtureSpec("ordinary"),
    "w2": FixtureSpec("symplectic", q=2),
    "w3": FixtureSpec("symplectic", q=3),
    "payne-w3": FixtureSpec("payne", q=3, point=0),
}


def build_fixture(spec: FixtureSpec) -> IncidenceStructure:
    if spec.kind == "ordinary":
        return ordinary_quadrangle()
    if spec.kind == "symplectic":
        return symplectic_gq(spec.q or 2)
    if spec.kind == "payne":
        return payne_derive(symplectic_gq(spec.q or 3), spec.point)
    raise ValueError(f"unknown fixture kind {spec.kind!r}")


def fixture(name: str) -> IncidenceStructure:
    if name not in FIXTURES:
        raise ValueError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}")
    return build_fixture(FIXTURES[name])
