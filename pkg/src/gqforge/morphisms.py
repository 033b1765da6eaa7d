"""Symmetry searches on incidence structures.

Everything runs over the bipartite incidence graph: automorphism groups
via a partition-backtracking stabilizer chain, isomorphism and polarity
search with the same refinement machinery, and enumeration of regular
subgroups of the automorphism group.

Refinement is the usual iterated neighbor-color-multiset splitting; the
color ids it assigns depend only on the signatures, never on vertex
numbering, so colors are comparable across two graphs.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .errors import ShapeMismatch, TooLarge
from .groups import FiniteGroup, group_from_table
from .incidence import IncidenceStructure

DEFAULT_SIZE_CAP = 200
DEFAULT_CLOSURE_CAP = 10**6

Perm = tuple[int, ...]


def _refine(adj: list[frozenset[int]], colors: list[int]) -> list[int]:
    n = len(adj)
    ncolors = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(palette) == ncolors:
            return new
        colors, ncolors = new, len(palette)


def _cells(colors: list[int]) -> dict[int, list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return cells


def _target_color(cells: dict[int, list[int]]) -> int | None:
    # Smallest non-singleton cell; ties broken by color id.
    best = None
    for c in sorted(cells):
        if len(cells[c]) > 1 and (best is None or len(cells[c]) < len(cells[best])):
            best = c
    return best


def _extend_map(
    adj1: list[frozenset[int]],
    col1: list[int],
    adj2: list[frozenset[int]],
    col2: list[int],
) -> list[int] | None:
    """Backtracking search for a color-compatible graph isomorphism."""
    n = len(adj1)
    col1 = _refine(adj1, col1)
    col2 = _refine(adj2, col2)
    if Counter(col1) != Counter(col2):
        return None
    cells1, cells2 = _cells(col1), _cells(col2)
    c = _target_color(cells1)
    if c is None:
        mapping = [0] * n
        for color, vs in cells1.items():
            mapping[vs[0]] = cells2[color][0]
        for v in range(n):
            if {mapping[w] for w in adj1[v]} != adj2[mapping[v]]:
                return None
        return mapping
    v = cells1[c][0]
    mark = n + len(cells1)  # fresh color, identical on both sides
    ind1 = list(col1)
    ind1[v] = mark
    for w in cells2[c]:
        ind2 = list(col2)
        ind2[w] = mark
        found = _extend_map(adj1, ind1, adj2, ind2)
        if found is not None:
            return found
    return None


def _aut_chain(
    adj: list[frozenset[int]], colors: list[int]
) -> tuple[list[list[int]], int]:
    """Stabilizer-chain search: transversal generators and the group order.

    At each level the first vertex of the smallest non-singleton cell is
    the base point; one full search per candidate decides membership of
    the candidate in the base orbit, so the product of orbit sizes is
    the exact order.
    """
    n = len(adj)
    colors = _refine(adj, colors)
    gens: list[list[int]] = []
    order = 1
    while True:
        cells = _cells(colors)
        c = _target_color(cells)
        if c is None:
            return gens, order
        cell = cells[c]
        base = cell[0]
        mark = n + len(cells)
        fixed = list(colors)
        fixed[base] = mark
        orbit = 1
        for w in cell[1:]:
            moved = list(colors)
            moved[w] = mark
            m = _extend_map(adj, fixed, adj, moved)
            if m is not None:
                gens.append(m)
                orbit += 1
        order *= orbit
        colors = _refine(adj, fixed)


def _incidence_graph(q: IncidenceStructure) -> list[frozenset[int]]:
    p = q.num_points
    adj: list[set[int]] = [set() for _ in range(p + q.num_lines)]
    for j, line in enumerate(q.lines):
        for x in line:
            adj[x].add(p + j)
            adj[p + j].add(x)
    return [frozenset(s) for s in adj]


def _check_cap(q: IncidenceStructure, size_cap: int) -> None:
    total = q.num_points + q.num_lines
    if total > size_cap:
        raise TooLarge(f"{total} vertices exceeds the size cap {size_cap}")


def _compose(p: Perm, g: Perm) -> Perm:
    # apply p first, then g
    return tuple(map(g.__getitem__, p))


def _closure(gens: list[Perm], degree: int, cap: int) -> list[Perm]:
    identity = tuple(range(degree))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                child = _compose(p, g)
                if child not in seen:
                    if len(seen) >= cap:
                        raise TooLarge(f"closure exceeds the cap {cap}")
                    seen.add(child)
                    nxt.append(child)
        frontier = nxt
    return sorted(seen)


@dataclass
class PermutationGroup:
    """A permutation group given by generators, with its full closure cached."""

    degree: int
    generators: list[Perm]
    order: int
    _elements: list[Perm] | None = field(default=None, repr=False)

    def elements(self, cap: int = DEFAULT_CLOSURE_CAP) -> list[Perm]:
        if self._elements is None:
            self._elements = _closure(self.generators, self.degree, cap)
        return self._elements


def automorphisms(
    q: IncidenceStructure,
    size_cap: int = DEFAULT_SIZE_CAP,
    closure_cap: int = DEFAULT_CLOSURE_CAP,
) -> PermutationGroup:
    """Full group of point permutations extending to incidence-preserving
    line permutations (part-preserving maps only)."""
    _check_cap(q, size_cap)
    p = q.num_points
    adj = _incidence_graph(q)
    colors = [0] * p + [1] * q.num_lines
    gens, order = _aut_chain(adj, colors)
    point_gens = sorted({tuple(m[:p]) for m in gens})
    group = PermutationGroup(degree=p, generators=point_gens, order=order)
    if order <= closure_cap:
        if len(group.elements(closure_cap)) != order:
            raise AssertionError("closure order disagrees with the stabilizer chain")
    return group


@dataclass(frozen=True)
class IsoWitness:
    point_map: tuple[int, ...]
    line_map: tuple[int, ...]


def isomorphic(
    q1: IncidenceStructure,
    q2: IncidenceStructure,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> IsoWitness | None:
    """Search for an incidence-preserving point/line bijection pair.

    Cheap invariants (counts, line sizes, refined color profile) reject
    most non-isomorphic pairs before the backtracking runs.
    """
    _check_cap(q1, size_cap)
    _check_cap(q2, size_cap)
    if q1.num_points != q2.num_points or q1.num_lines != q2.num_lines:
        return None
    if sorted(map(len, q1.lines)) != sorted(map(len, q2.lines)):
        return None
    p = q1.num_points
    adj1, adj2 = _incidence_graph(q1), _incidence_graph(q2)
    colors = [0] * p + [1] * q1.num_lines
    m = _extend_map(adj1, list(colors), adj2, list(colors))
    if m is None:
        return None
    return IsoWitness(
        point_map=tuple(m[:p]),
        line_map=tuple(x - p for x in m[p:]),
    )


@dataclass(frozen=True)
class Polarity:
    point_to_line: tuple[int, ...]
    line_to_point: tuple[int, ...]


def find_polarity(
    q: IncidenceStructure,
    size_cap: int = DEFAULT_SIZE_CAP,
    closure_cap: int = DEFAULT_CLOSURE_CAP,
) -> Polarity | None:
    """Search for an order-two point/line swap preserving incidence.

    A polarity is exactly an involutive part-swapping automorphism of
    the untagged incidence graph, so the part-preserving and untagged
    automorphism groups are compared first: if their orders agree no
    duality exists at all.  Otherwise the untagged group is enumerated
    and scanned for part-swapping involutions.
    """
    _check_cap(q, size_cap)
    p = q.num_points
    if p != q.num_lines:
        raise ShapeMismatch(f"{p} points vs {q.num_lines} lines")
    adj = _incidence_graph(q)
    untagged = _refine(adj, [0] * (2 * p))
    if Counter(untagged[:p]) != Counter(untagged[p:]):
        return None
    _, tagged_order = _aut_chain(adj, [0] * p + [1] * p)
    gens, untagged_order = _aut_chain(adj, [0] * (2 * p))
    if untagged_order == tagged_order:
        return None
    for m in _closure([tuple(g) for g in gens], 2 * p, closure_cap):
        if all(m[v] >= p for v in range(p)) and all(m[m[v]] == v for v in range(2 * p)):
            return Polarity(
                point_to_line=tuple(x - p for x in m[:p]),
                line_to_point=tuple(m[p:]),
            )
    return None


@dataclass
class RegularSubgroup:
    """A regular subgroup of the automorphism group, with its actions.

    ``point_action[g]`` / ``line_action[g]`` are the permutations by
    which group element g (an index into the Cayley table) acts.
    """

    group: FiniteGroup
    point_action: tuple[Perm, ...]
    line_action: tuple[Perm, ...]


def induced_line_perm(q: IncidenceStructure, point_perm: Perm) -> Perm:
    """Line permutation induced by a point permutation, if it exists."""
    index = {line: j for j, line in enumerate(q.lines)}
    out = []
    for line in q.lines:
        image = tuple(sorted(point_perm[x] for x in line))
        if image not in index:
            raise ValueError("point permutation does not preserve the line set")
        out.append(index[image])
    return tuple(out)


def _perm_order(p: Perm) -> int:
    n = len(p)
    seen = [False] * n
    out = 1
    for v in range(n):
        if seen[v]:
            continue
        length, w = 0, v
        while not seen[w]:
            seen[w] = True
            w = p[w]
            length += 1
        out = out * length // math.gcd(out, length)
    return out


def _close_in_universe(
    seed: frozenset[int],
    extra: int,
    mult: dict[tuple[int, int], int],
    limit: int,
) -> frozenset[int] | None:
    """Subgroup closure inside the fixed-point-free universe.

    Element 0 is the identity; ``mult`` maps index pairs to product
    indices, -1 meaning the product left the universe.  Returns None as
    soon as the closure escapes or exceeds ``limit`` elements.
    """
    elems = set(seed)
    elems.add(0)
    frontier = []
    if extra not in elems:
        elems.add(extra)
        frontier.append(extra)
    if not frontier:
        frontier = list(elems)
    while frontier:
        x = frontier.pop()
        for y in list(elems):
            for prod in (mult[(x, y)], mult[(y, x)]):
                if prod < 0:
                    return None
                if prod not in elems:
                    if len(elems) >= limit:
                        return None
                    elems.add(prod)
                    frontier.append(prod)
    return frozenset(elems)


def regular_subgroups(
    q: IncidenceStructure,
    k: int,
    mode: str = "points",
    aut: PermutationGroup | None = None,
    size_cap: int = DEFAULT_SIZE_CAP,
    closure_cap: int = DEFAULT_CLOSURE_CAP,
) -> list[RegularSubgroup]:
    """All order-k subgroups of the automorphism group acting with trivial
    point stabilizers (and trivial line stabilizers in mode
    ``points-and-lines``), each returned as a Cayley table through the
    regular identification with the point set.

    The search collects the fixed-point-free elements of order dividing
    k and grows generated subgroups inside that universe, pruning as
    soon as a closure escapes it or outgrows k.
    """
    if mode not in ("points", "points-and-lines"):
        raise ValueError(f"unknown mode {mode!r}")
    p = q.num_points
    if mode == "points" and k != p:
        raise ValueError(f"k = {k} must equal the point count {p}")
    if mode == "points-and-lines" and (k != p or k != q.num_lines):
        raise ValueError("k must equal both the point and the line count")

    if aut is None:
        aut = automorphisms(q, size_cap=size_cap, closure_cap=closure_cap)
    elements = aut.elements(closure_cap)
    identity = tuple(range(p))

    line_perm_cache: dict[Perm, Perm] = {}

    def line_perm(g: Perm) -> Perm:
        if g not in line_perm_cache:
            line_perm_cache[g] = induced_line_perm(q, g)
        return line_perm_cache[g]

    def admissible(g: Perm) -> bool:
        if g == identity or any(g[i] == i for i in range(p)):
            return False
        if k % _perm_order(g) != 0:
            return False
        if mode == "points-and-lines":
            lp = line_perm(g)
            if any(lp[j] == j for j in range(q.num_lines)):
                return False
        return True

    universe = [identity] + sorted(g for g in elements if admissible(g))
    index = {g: i for i, g in enumerate(universe)}
    nu = len(universe)

    class _Mult(dict):
        def __missing__(self, key):
            i, j = key
            prod = _compose(universe[i], universe[j])
            val = index.get(prod, -1)
            self[key] = val
            return val

    mult = _Mult()

    found: dict[frozenset[int], None] = {}
    visited: set[frozenset[int]] = set()
    queue: list[frozenset[int]] = []

    def record(sub: frozenset[int] | None) -> None:
        if sub is None or sub in visited:
            return
        visited.add(sub)
        if len(sub) == k:
            found[sub] = None
        elif k % len(sub) == 0:
            queue.append(sub)

    for i in range(1, nu):
        record(_close_in_universe(frozenset([0]), i, mult, k))

    while queue:
        sub = queue.pop()
        sub_list = sorted(sub)
        tried = set(sub)
        for b in range(1, nu):
            if b in tried:
                continue
            # The whole coset H*b generates the same extension, so mark
            # it handled; any coset member outside the universe already
            # dooms the closure.
            coset = [mult[(a, b)] for a in sub_list]
            tried.update(x for x in coset if x > 0)
            if any(x < 0 for x in coset):
                continue
            record(_close_in_universe(sub, b, mult, k))

    out = []
    for sub in sorted(found, key=sorted):
        perms = [universe[i] for i in sub]
        by_image = {perm[0]: perm for perm in perms}
        if sorted(by_image) != list(range(k)):
            continue  # not transitive on points; cannot happen when k = p
        point_action = tuple(by_image[j] for j in range(k))
        table = [[point_action[y][x] for y in range(k)] for x in range(k)]
        group = group_from_table(table, name=f"regular-{k}")
        line_action = tuple(induced_line_perm(q, g) for g in point_action)
        out.append(
            RegularSubgroup(group=group, point_action=point_action, line_action=line_action)
        )
    return out
