"""Finite groups as explicit Cayley tables.

Elements are dense integer indices 0..n-1 and the identity is always
index 0.  Groups are immutable after construction and every operation
here is a pure function, so values can be shared freely between
concurrent tasks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import NotAGroup

# Orders up to this bound get the exhaustive cubic associativity check;
# above it 10*n^2 pseudo-random triples are tested instead.
EXHAUSTIVE_ASSOCIATIVITY_BOUND = 512
ASSOCIATIVITY_SAMPLE_FACTOR = 10


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``table[a][b]`` is the index of the product a*b, ``inverse[a]`` the
    index of a^-1, and index 0 is the identity.
    """

    order: int
    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or f'order-{self.order}'})"


@dataclass(frozen=True)
class ElementSet:
    """A sorted, duplicate-free set of element indices of a fixed group."""

    group: FiniteGroup
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in set(self.members)

    def __iter__(self):
        return iter(self.members)


def element_set(group: FiniteGroup, members: Iterable[int]) -> ElementSet:
    """Validate and normalize a collection of element indices."""
    ms = sorted(set(members))
    for g in ms:
        if not 0 <= g < group.order:
            raise ValueError(f"element index {g} out of range for order {group.order}")
    return ElementSet(group, tuple(ms))


def _find_identity(table: list[list[int]]) -> int | None:
    n = len(table)
    for e in range(n):
        if all(table[e][b] == b for b in range(n)) and all(
            table[a][e] == a for a in range(n)
        ):
            return e
    return None


def _relabel_identity_to_zero(table: list[list[int]], e: int) -> list[list[int]]:
    # Conjugate the table by the transposition (0 e).
    n = len(table)
    sigma = list(range(n))
    sigma[0], sigma[e] = e, 0
    return [[sigma[table[sigma[a]][sigma[b]]] for b in range(n)] for a in range(n)]


def group_from_table(table: Sequence[Sequence[int]], name: str | None = None) -> FiniteGroup:
    """Validate a multiplication table and return the group it defines.

    The identity is relocated to index 0 by relabeling if necessary.
    Raises :class:`NotAGroup` with a reason among ``no-identity``,
    ``not-latin``, ``missing-inverse`` and ``not-associative``.
    """
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        raise ValueError("empty table")
    for r in rows:
        if len(r) != n:
            raise ValueError("table is not square")
        for x in r:
            if not isinstance(x, int) or not 0 <= x < n:
                raise ValueError(f"table entry {x!r} out of range 0..{n - 1}")

    e = _find_identity(rows)
    if e is None:
        raise NotAGroup("no-identity")
    if e != 0:
        rows = _relabel_identity_to_zero(rows, e)

    full = set(range(n))
    for a in range(n):
        if set(rows[a]) != full:
            raise NotAGroup("not-latin", f"row {a} is not a permutation")
        if {rows[b][a] for b in range(n)} != full:
            raise NotAGroup("not-latin", f"column {a} is not a permutation")

    inverse = [0] * n
    for a in range(n):
        inv = next((b for b in range(n) if rows[a][b] == 0 and rows[b][a] == 0), None)
        if inv is None:
            raise NotAGroup("missing-inverse", f"element {a} has no two-sided inverse")
        inverse[a] = inv

    if n <= EXHAUSTIVE_ASSOCIATIVITY_BOUND:
        triples = (
            (a, b, c) for a in range(n) for b in range(n) for c in range(n)
        )
    else:
        rng = random.Random(0xA550C1A7 ^ n)
        triples = (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n))
            for _ in range(ASSOCIATIVITY_SAMPLE_FACTOR * n * n)
        )
    for a, b, c in triples:
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise NotAGroup("not-associative", f"triple ({a},{b},{c})")

    return FiniteGroup(
        order=n,
        table=tuple(tuple(r) for r in rows),
        inverse=tuple(inverse),
        name=name,
    )


def cyclic_group(n: int) -> FiniteGroup:
    """The cyclic group C_n in additive notation mod n."""
    if n < 1:
        raise ValueError(f"cyclic group order must be >= 1, got {n}")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inverse = tuple((-a) % n for a in range(n))
    return FiniteGroup(n, table, inverse, name=f"C{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Direct product with the pair (a, b) indexed as a*|H| + b."""
    nh = h.order
    n = g.order * nh

    def enc(a: int, b: int) -> int:
        return a * nh + b

    table = tuple(
        tuple(
            enc(g.table[a1][a2], h.table[b1][b2])
            for a2 in range(g.order)
            for b2 in range(nh)
        )
        for a1 in range(g.order)
        for b1 in range(nh)
    )
    inverse = tuple(
        enc(g.inverse[a], h.inverse[b]) for a in range(g.order) for b in range(nh)
    )
    name = None
    if g.name and h.name:
        name = f"{g.name}x{h.name}"
    return FiniteGroup(n, table, inverse, name=name)


def element_order(group: FiniteGroup, g: int) -> int:
    """Least k >= 1 with g^k = identity."""
    if not 0 <= g < group.order:
        raise ValueError(f"element index {g} out of range")
    k, x = 1, g
    while x != 0:
        x = group.table[x][g]
        k += 1
    return k


def conjugacy_classes(group: FiniteGroup) -> tuple[ElementSet, ...]:
    """Partition of the elements into conjugacy classes.

    Classes are ordered by their smallest member, so the class {0} of
    the identity comes first.
    """
    n = group.order
    seen = [False] * n
    classes = []
    for x in range(n):
        if seen[x]:
            continue
        orbit = set()
        for g in range(n):
            orbit.add(group.table[group.table[group.inverse[g]][x]][g])
        for y in orbit:
            seen[y] = True
        classes.append(ElementSet(group, tuple(sorted(orbit))))
    return tuple(classes)


def center(group: FiniteGroup) -> ElementSet:
    """Elements commuting with everything."""
    n = group.order
    members = [
        g
        for g in range(n)
        if all(group.table[g][h] == group.table[h][g] for h in range(n))
    ]
    return ElementSet(group, tuple(members))


def subgroup_generated(group: FiniteGroup, members: Iterable[int]) -> ElementSet:
    """Closure of the given elements (plus identity) under product and inverse."""
    closure = {0}
    frontier = [0]
    gens = sorted(set(members))
    for g in gens:
        if not 0 <= g < group.order:
            raise ValueError(f"element index {g} out of range")
    while frontier:
        x = frontier.pop()
        for g in gens:
            for y in (group.table[x][g], group.table[g][x], group.inverse[x]):
                if y not in closure:
                    closure.add(y)
                    frontier.append(y)
    return ElementSet(group, tuple(sorted(closure)))


def _minimal_generators(group: FiniteGroup) -> list[int]:
    gens: list[int] = []
    covered = {0}
    while len(covered) < group.order:
        g = min(x for x in range(group.order) if x not in covered)
        gens.append(g)
        covered = set(subgroup_generated(group, gens).members)
    return gens


def group_automorphisms(group: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms of the group, as permutations of element indices.

    Candidate images for a minimal generating sequence are filtered by
    element order and each assignment is completed by closing under the
    multiplication before the full homomorphism check.  Intended for the
    small groups (|G| <= 16) used in sigma-search symmetry reduction.
    """
    n = group.order
    gens = _minimal_generators(group)
    orders = [element_order(group, g) for g in range(n)]
    autos: list[tuple[int, ...]] = []

    def complete(images: list[int]) -> tuple[int, ...] | None:
        # Propagate phi from generator images over the whole group.
        phi: list[int | None] = [None] * n
        phi[0] = 0
        frontier = [0]
        while frontier:
            a = frontier.pop()
            fa = phi[a]
            for g, img in zip(gens, images):
                b = group.table[a][g]
                fb = group.table[fa][img]
                if phi[b] is None:
                    phi[b] = fb
                    frontier.append(b)
                elif phi[b] != fb:
                    return None
        if any(v is None for v in phi) or len(set(phi)) != n:
            return None
        out = tuple(phi)  # type: ignore[arg-type]
        for a in range(n):
            for b in range(n):
                if out[group.table[a][b]] != group.table[out[a]][out[b]]:
                    return None
        return out

    def rec(idx: int, images: list[int]) -> None:
        if idx == len(gens):
            full = complete(images)
            if full is not None:
                autos.append(full)
            return
        want = orders[gens[idx]]
        for cand in range(n):
            if orders[cand] == want:
                rec(idx + 1, images + [cand])

    rec(0, [])
    return sorted(set(autos))


def group_to_json(group: FiniteGroup) -> dict:
    out = {"order": group.order, "table": [list(r) for r in group.table]}
    if group.name:
        out["name"] = group.name
    return out


def group_from_json(data: dict) -> FiniteGroup:
    if "table" not in data:
        raise ValueError("group JSON needs a 'table' field")
    g = group_from_table(data["table"], name=data.get("name"))
    if "order" in data and data["order"] != g.order:
        raise ValueError("declared order does not match the table")
    return g
