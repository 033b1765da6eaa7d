"""Sigma-sets: the axioms, the quadrangle they build, and Delta analysis.

A sigma-set is a subset of a group containing the identity.  When the
two representation axioms hold, right translation of the sets Sigma*h
yields a quadrangle on which the group acts regularly on points and
lines; conversely a biregular action determines such a subset once a
base point and a base line through it are fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    AxiomsFail,
    HypothesisFail,
    NotIncident,
    NotRegular,
    OrderMismatch,
    OrderNotAdmissible,
)
from .groups import (
    FiniteGroup,
    conjugacy_classes,
    element_order,
    group_automorphisms,
    subgroup_generated,
)
from .incidence import IncidenceStructure, verify_gq

Perm = tuple[int, ...]


@dataclass(frozen=True)
class SigmaSet:
    """A subset of a group containing the identity (index 0)."""

    group: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        if len(self.members) < 2:
            raise ValueError("sigma-set needs at least two elements")
        if self.members[0] != 0:
            raise ValueError("sigma-set must contain the identity (index 0)")
        if list(self.members) != sorted(set(self.members)):
            raise ValueError("sigma-set members must be sorted and duplicate-free")
        for g in self.members:
            if not 0 <= g < self.group.order:
                raise ValueError(f"element index {g} out of range")

    @property
    def s(self) -> int:
        return len(self.members) - 1


def sigma_set(group: FiniteGroup, members: Iterable[int]) -> SigmaSet:
    return SigmaSet(group, tuple(sorted(set(members) | {0})))


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the two-axiom check.

    ``failed_axiom`` is one of AX1-nonunique, AX1-unrepresentable, AX2;
    the witness is the offending element (AX1) or index triple (AX2).
    """

    status: str
    failed_axiom: str | None = None
    witness: int | tuple[int, int, int] | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def check_sigma_axioms(group: FiniteGroup, sigma: SigmaSet) -> AxiomReport:
    """Enumerate every product g_i g_j^-1 g_k and test both axioms.

    AX2 first: a product landing in sigma with i != j and j != k fails
    immediately.  Otherwise each product lies outside sigma with i != j
    and k != j automatic, and AX1 demands exactly one representation per
    outside element.
    """
    if sigma.group is not group:
        raise ValueError("sigma-set belongs to a different group")
    n = group.order
    table = group.table
    members = sigma.members
    inside = bytearray(n)
    for g in members:
        inside[g] = 1

    counts = [0] * n
    for j, gj in enumerate(members):
        gj_inv = group.inverse[gj]
        for i, gi in enumerate(members):
            left = table[gi][gj_inv]
            row = table[left]
            for k, gk in enumerate(members):
                prod = row[gk]
                if inside[prod]:
                    if i != j and j != k:
                        return AxiomReport("fail", "AX2", (i, j, k))
                else:
                    counts[prod] += 1

    for g in range(n):
        if inside[g]:
            continue
        if counts[g] == 0:
            return AxiomReport("fail", "AX1-unrepresentable", g)
        if counts[g] > 1:
            return AxiomReport("fail", "AX1-nonunique", g)
    return AxiomReport("pass")


@dataclass
class SigmaQuadrangle:
    """A quadrangle built from a sigma-set, with both translation actions."""

    structure: IncidenceStructure
    point_action: tuple[Perm, ...]
    line_action: tuple[Perm, ...]


def build_gq_from_sigma(group: FiniteGroup, sigma: SigmaSet) -> SigmaQuadrangle:
    """Points are group elements, lines the right translates Sigma*h, and
    P_x lies on l_y iff x*y^-1 is in sigma.  Both returned actions are
    the regular right-translation actions."""
    n = group.order
    s = sigma.s
    if n != (s + 1) * (s * s + 1):
        raise OrderMismatch(
            f"|G| = {n} but a sigma-set of size {s + 1} needs (s+1)(s^2+1) = "
            f"{(s + 1) * (s * s + 1)}"
        )
    report = check_sigma_axioms(group, sigma)
    if not report.passed:
        raise AxiomsFail(report)

    table = group.table
    lines = [tuple(sorted(table[g][y] for g in sigma.members)) for y in range(n)]
    if len(set(lines)) != n:
        raise AssertionError("translates of sigma collide despite the axioms")
    structure = IncidenceStructure(n, lines, name=f"sigma-gq({group.name or n})")
    translation = tuple(tuple(table[x][g] for x in range(n)) for g in range(n))
    return SigmaQuadrangle(
        structure=structure, point_action=translation, line_action=translation
    )


def check_regular_action(
    group: FiniteGroup, perms: Sequence[Perm], count: int, part: str
) -> None:
    """Raise NotRegular unless perms is a regular action of the group.

    Checks the action property (identity, homomorphism), that the group
    order matches the set size, and that nonidentity elements are
    fixed-point-free; regularity then follows by orbit counting.
    """
    n = group.order
    if len(perms) != n:
        raise NotRegular(part, f"{len(perms)} permutations for a group of order {n}")
    if n != count:
        raise NotRegular(part, f"group order {n} differs from set size {count}")
    identity = tuple(range(count))
    if tuple(perms[0]) != identity:
        raise NotRegular(part, "element 0 does not act trivially")
    for g in range(1, n):
        perm = perms[g]
        if sorted(perm) != list(identity):
            raise NotRegular(part, f"element {g} does not act by a permutation")
        if any(perm[x] == x for x in range(count)):
            raise NotRegular(part, f"element {g} has a fixed point")
    for a in range(n):
        pa = perms[a]
        for b in range(n):
            pb = perms[b]
            pab = perms[group.table[a][b]]
            if any(pab[x] != pb[pa[x]] for x in range(count)):
                raise NotRegular(part, f"action breaks at the pair ({a},{b})")


def extract_sigma(
    q: IncidenceStructure,
    group: FiniteGroup,
    point_action: Sequence[Perm],
    line_action: Sequence[Perm],
    base_point: int = 0,
    base_line: int | None = None,
) -> SigmaSet:
    """Read the sigma-set off a biregular action.

    Sigma is the set of elements whose image of the base point lies on
    the base line.  The default base line is the lexicographically
    smallest line through the base point.
    """
    check_regular_action(group, point_action, q.num_points, "points")
    check_regular_action(group, line_action, q.num_lines, "lines")
    if base_line is None:
        base_line = min(q.point_to_lines[base_point], key=lambda j: q.lines[j])
    if base_point not in q.lines[base_line]:
        raise NotIncident(f"line {base_line} does not pass through point {base_point}")
    on_line = set(q.lines[base_line])
    members = tuple(
        g for g in range(group.order) if point_action[g][base_point] in on_line
    )
    return SigmaSet(group, members)


def admissible_s(order: int) -> int:
    """Solve |G| = (s+1)(s^2+1) exactly; raise OrderNotAdmissible otherwise."""
    s = 1
    while (s + 1) * (s * s + 1) < order:
        s += 1
    if (s + 1) * (s * s + 1) != order:
        raise OrderNotAdmissible(f"{order} is not (s+1)(s^2+1) for any s >= 1")
    return s


def search_sigma(group: FiniteGroup, reduce_symmetry: bool = False) -> list[SigmaSet]:
    """All sigma-sets of the admissible size passing both axioms.

    Candidates grow in increasing index order and a partial set is
    abandoned as soon as a triple drawn from it already violates AX2.
    With ``reduce_symmetry`` one representative per orbit of the group's
    automorphism group is returned (brute force, so |G| <= 16 only).
    """
    n = group.order
    s = admissible_s(n)
    size = s + 1
    if reduce_symmetry and n > 16:
        raise ValueError("symmetry reduction is only available for |G| <= 16")

    table = group.table
    inverse = group.inverse
    results: list[SigmaSet] = []

    def partial_ax2_ok(chosen: list[int]) -> bool:
        inside = set(chosen)
        for j, gj in enumerate(chosen):
            gj_inv = inverse[gj]
            for i, gi in enumerate(chosen):
                left = table[gi][gj_inv]
                for k, gk in enumerate(chosen):
                    if i != j and j != k and table[left][gk] in inside:
                        return False
        return True

    def grow(chosen: list[int], start: int) -> None:
        if len(chosen) == size:
            candidate = SigmaSet(group, tuple(chosen))
            if check_sigma_axioms(group, candidate).passed:
                results.append(candidate)
            return
        for e in range(start, n):
            if n - e < size - len(chosen):
                break
            chosen.append(e)
            if partial_ax2_ok(chosen):
                grow(chosen, e + 1)
            chosen.pop()

    grow([0], 1)

    if not reduce_symmetry:
        return results

    autos = group_automorphisms(group)
    keep = []
    seen: set[tuple[int, ...]] = set()
    for sig in results:
        orbit = {tuple(sorted(phi[g] for g in sig.members)) for phi in autos}
        canon = min(orbit)
        if canon not in seen:
            seen.add(canon)
            keep.append(SigmaSet(group, canon))
    return sorted(keep, key=lambda sg: sg.members)


@dataclass
class DeltaProfile:
    """The Delta-set of a point-regular action at a base point.

    ``delta`` is a membership bitmask over group elements (bit g set
    iff the base point moved by g stays collinear, plus the identity).
    ``class_intersections[c]`` pairs |class_c ∩ Delta| with
    |class_c ∩ Delta^c| in the order of ``conjugacy_classes``.
    """

    base_point: int
    delta: int
    s: int
    t: int
    class_intersections: tuple[tuple[int, int], ...]

    def members(self) -> list[int]:
        return [g for g in range(self.delta.bit_length()) if self.delta >> g & 1]

    @property
    def size(self) -> int:
        return self.delta.bit_count()


def delta_profile(
    q: IncidenceStructure,
    group: FiniteGroup,
    point_action: Sequence[Perm],
    base_point: int = 0,
) -> DeltaProfile:
    """Compute Delta = {g : base^g collinear with base} plus the identity,
    together with its per-conjugacy-class intersection counts."""
    cert = verify_gq(q)  # raises NotAGQ
    check_regular_action(group, point_action, q.num_points, "points")
    near = q.collinear[base_point]
    mask = 1
    for g in range(1, group.order):
        if point_action[g][base_point] in near:
            mask |= 1 << g
    expected = cert.s * (cert.t + 1) + 1
    if mask.bit_count() != expected:
        raise AssertionError(
            f"|Delta| = {mask.bit_count()} violates s(t+1)+1 = {expected}"
        )
    pairs = []
    for cls in conjugacy_classes(group):
        hit = sum(1 for x in cls.members if mask >> x & 1)
        pairs.append((hit, len(cls.members) - hit))
    return DeltaProfile(
        base_point=base_point,
        delta=mask,
        s=cert.s,
        t=cert.t,
        class_intersections=tuple(pairs),
    )


@dataclass
class ClassCheck:
    representative: int
    size: int
    in_delta: int
    in_complement: int
    meets_delta: bool
    complement_multiple: bool
    size_bound_ok: bool
    order_divides: bool | None  # set when the class sits inside Delta

    @property
    def passed(self) -> bool:
        return (
            self.meets_delta
            and self.complement_multiple
            and self.size_bound_ok
            and self.order_divides is not False
        )


@dataclass
class NormalSubgroupCheck:
    members: tuple[int, ...]
    divides: bool


@dataclass
class YoshiaraReport:
    gcd_st: int
    class_checks: list[ClassCheck]
    normal_checks: list[NormalSubgroupCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.class_checks) and all(
            nc.divides for nc in self.normal_checks
        )


def yoshiara_checks(profile: DeltaProfile, group: FiniteGroup) -> YoshiaraReport:
    """Class-by-class checks on a Delta profile, for gcd(s,t) > 1.

    For each nontrivial class: it meets Delta; gcd(s,t) divides its
    complement intersection; a class meeting the complement has at least
    gcd(s,t)+1 elements; a class inside Delta has element order dividing
    s+1.  Normal subgroups inside Delta (generated by unions of
    Delta-contained classes) must divide gcd(s+1, t^2 - t).
    """
    d = math.gcd(profile.s, profile.t)
    if d <= 1:
        raise HypothesisFail(f"gcd(s,t) = {d}; the class lemmas need gcd > 1")
    classes = conjugacy_classes(group)
    if len(classes) != len(profile.class_intersections):
        raise ValueError("profile class count does not match the group")

    mask = profile.delta
    checks = []
    delta_classes = []
    for cls, (hit, miss) in zip(classes, profile.class_intersections):
        if cls.members == (0,):
            continue
        inside = miss == 0
        if inside:
            delta_classes.append(cls)
        checks.append(
            ClassCheck(
                representative=cls.members[0],
                size=len(cls.members),
                in_delta=hit,
                in_complement=miss,
                meets_delta=hit > 0,
                complement_multiple=miss % d == 0,
                size_bound_ok=(miss == 0) or len(cls.members) >= d + 1,
                order_divides=(
                    (profile.s + 1) % element_order(group, cls.members[0]) == 0
                    if inside
                    else None
                ),
            )
        )

    bound = math.gcd(profile.s + 1, profile.t * profile.t - profile.t)
    normal_checks = []
    seen: set[tuple[int, ...]] = set()
    for pick in range(1, 1 << len(delta_classes)):
        union: set[int] = set()
        for b, cls in enumerate(delta_classes):
            if pick >> b & 1:
                union.update(cls.members)
        sub = subgroup_generated(group, union)
        if sub.members in seen:
            continue
        seen.add(sub.members)
        if any(not mask >> x & 1 for x in sub.members):
            continue  # escaped Delta
        class_of = {}
        for cls in classes:
            for x in cls.members:
                class_of[x] = cls.members
        if any(not set(class_of[x]) <= set(sub.members) for x in sub.members):
            continue  # not normal
        normal_checks.append(
            NormalSubgroupCheck(members=sub.members, divides=bound % len(sub.members) == 0)
        )
    return YoshiaraReport(gcd_st=d, class_checks=checks, normal_checks=normal_checks)
