import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import gqforge as gq
from gqforge.errors import NotAGroup

from conftest import heisenberg27


def small_group_pool():
    c2, c3, c4 = gq.cyclic_group(2), gq.cyclic_group(3), gq.cyclic_group(4)
    return [
        gq.cyclic_group(1),
        c2,
        c3,
        c4,
        gq.cyclic_group(5),
        gq.cyclic_group(6),
        gq.direct_product(c2, c2),
        gq.direct_product(c2, c3),
        gq.direct_product(c4, c2),
        gq.direct_product(gq.direct_product(c2, c2), c2),
    ]


class TestGroupFromTable:
    def test_trivial_group(self):
        g = gq.group_from_table([[0]])
        assert g.order == 1 and g.inverse == (0,)

    def test_c2(self):
        g = gq.group_from_table([[0, 1], [1, 0]])
        assert g.order == 2 and g.table[1][1] == 0

    def test_and_like_table_is_not_latin(self):
        # min(a, b): the top element is an identity but rows repeat values
        with pytest.raises(NotAGroup) as exc:
            gq.group_from_table([[0, 0, 0], [0, 1, 1], [0, 1, 2]])
        assert exc.value.reason == "not-latin"

    def test_no_identity(self):
        with pytest.raises(NotAGroup) as exc:
            gq.group_from_table([[1, 1], [1, 1]])
        assert exc.value.reason == "no-identity"

    def test_not_associative(self):
        # A loop of order 5: identity and two-sided inverses, no associativity.
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(NotAGroup) as exc:
            gq.group_from_table(table)
        assert exc.value.reason == "not-associative"

    def test_identity_relocated_to_zero(self):
        # C2 written with the identity at index 1.
        g = gq.group_from_table([[1, 0], [0, 1]])
        assert g.table[0] == (0, 1) and g.table[1] == (1, 0)

    def test_malformed_rejected(self):
        with pytest.raises(ValueError):
            gq.group_from_table([[0, 1]])
        with pytest.raises(ValueError):
            gq.group_from_table([[0, 5], [5, 0]])

    def test_constructors_survive_revalidation(self):
        for g in small_group_pool():
            again = gq.group_from_table([list(r) for r in g.table])
            assert again.table == g.table and again.inverse == g.inverse


class TestCyclic:
    def test_order_four(self):
        c4 = gq.cyclic_group(4)
        assert gq.element_order(c4, 1) == 4
        assert c4.inv(1) == 3

    def test_trivial(self):
        assert gq.cyclic_group(1).order == 1

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            gq.cyclic_group(0)


class TestDirectProduct:
    def test_klein(self):
        klein = gq.direct_product(gq.cyclic_group(2), gq.cyclic_group(2))
        assert klein.order == 4
        assert [gq.element_order(klein, g) for g in range(1, 4)] == [2, 2, 2]

    def test_identity_factor_keeps_table(self):
        g = gq.cyclic_group(5)
        prod = gq.direct_product(gq.cyclic_group(1), g)
        assert prod.table == g.table

    def test_elementary_abelian_eight(self):
        c2 = gq.cyclic_group(2)
        g = gq.direct_product(gq.direct_product(c2, c2), c2)
        assert g.order == 8
        assert all(gq.element_order(g, x) <= 2 for x in range(8))

    def test_component_order_lcm(self):
        c4, c6 = gq.cyclic_group(4), gq.cyclic_group(6)
        prod = gq.direct_product(c4, c6)
        for a in range(4):
            for b in range(6):
                expected = math.lcm(gq.element_order(c4, a), gq.element_order(c6, b))
                assert gq.element_order(prod, a * 6 + b) == expected

    def test_associative_up_to_index_pairing(self):
        a, b, c = gq.cyclic_group(2), gq.cyclic_group(3), gq.cyclic_group(4)
        left = gq.direct_product(gq.direct_product(a, b), c)
        right = gq.direct_product(a, gq.direct_product(b, c))
        assert left.order == right.order == 24
        assert left.table == right.table


class TestElementOrder:
    def test_identity_has_order_one(self):
        for g in small_group_pool():
            assert gq.element_order(g, 0) == 1

    def test_c4_square(self):
        assert gq.element_order(gq.cyclic_group(4), 2) == 2

    @given(n=st.integers(1, 30), k=st.integers(0, 29))
    def test_cyclic_formula(self, n, k):
        k %= n
        assert gq.element_order(gq.cyclic_group(n), k) == n // math.gcd(n, k)

    def test_lagrange(self):
        for g in small_group_pool():
            for x in range(g.order):
                assert g.order % gq.element_order(g, x) == 0


class TestConjugacyClasses:
    def test_abelian_singletons(self):
        klein = gq.direct_product(gq.cyclic_group(2), gq.cyclic_group(2))
        for g in (gq.cyclic_group(4), klein):
            classes = gq.conjugacy_classes(g)
            assert len(classes) == 4
            assert all(len(c.members) == 1 for c in classes)

    def test_heisenberg_class_profile(self):
        g = heisenberg27()
        classes = gq.conjugacy_classes(g)
        sizes = sorted(len(c.members) for c in classes)
        assert len(classes) == 11
        assert sizes == [1, 1, 1] + [3] * 8

    def test_partition_and_size_divisibility(self):
        for g in small_group_pool() + [heisenberg27()]:
            classes = gq.conjugacy_classes(g)
            members = sorted(x for c in classes for x in c.members)
            assert members == list(range(g.order))
            assert all(g.order % len(c.members) == 0 for c in classes)
            assert classes[0].members == (0,)


class TestCenter:
    def test_abelian_center_is_everything(self):
        assert gq.center(gq.cyclic_group(4)).members == (0, 1, 2, 3)

    def test_trivial_group(self):
        assert gq.center(gq.cyclic_group(1)).members == (0,)

    def test_heisenberg_center(self):
        g = heisenberg27()
        z = gq.center(g)
        assert len(z.members) == 3
        assert all(gq.element_order(g, x) in (1, 3) for x in z.members)

    def test_center_is_union_of_singleton_classes(self):
        for g in small_group_pool() + [heisenberg27()]:
            singletons = sorted(
                c.members[0] for c in gq.conjugacy_classes(g) if len(c.members) == 1
            )
            assert list(gq.center(g).members) == singletons


class TestSubgroupGenerated:
    def test_c4_cases(self):
        c4 = gq.cyclic_group(4)
        assert gq.subgroup_generated(c4, [2]).members == (0, 2)
        assert gq.subgroup_generated(c4, [1]).members == (0, 1, 2, 3)

    def test_klein_two_generators(self):
        klein = gq.direct_product(gq.cyclic_group(2), gq.cyclic_group(2))
        assert gq.subgroup_generated(klein, [1, 2]).members == (0, 1, 2, 3)

    def test_empty_gives_trivial(self):
        assert gq.subgroup_generated(gq.cyclic_group(6), []).members == (0,)

    def test_closure_is_subgroup(self):
        for g in small_group_pool():
            for x in range(g.order):
                sub = set(gq.subgroup_generated(g, [x]).members)
                assert all(g.table[a][b] in sub for a in sub for b in sub)
                assert g.order % len(sub) == 0


class TestGroupAutomorphisms:
    def test_cyclic4(self):
        autos = gq.group_automorphisms(gq.cyclic_group(4))
        assert len(autos) == 2  # identity and inversion
        assert (0, 3, 2, 1) in autos

    def test_klein_has_six(self):
        klein = gq.direct_product(gq.cyclic_group(2), gq.cyclic_group(2))
        assert len(gq.group_automorphisms(klein)) == 6

    def test_all_are_homomorphisms(self):
        g = gq.cyclic_group(6)
        for phi in gq.group_automorphisms(g):
            for a in range(6):
                for b in range(6):
                    assert phi[g.table[a][b]] == g.table[phi[a]][phi[b]]


class TestJson:
    def test_roundtrip(self):
        g = gq.direct_product(gq.cyclic_group(2), gq.cyclic_group(3))
        again = gq.group_from_json(gq.group_to_json(g))
        assert again.table == g.table

    def test_declared_order_checked(self):
        data = gq.group_to_json(gq.cyclic_group(3))
        data["order"] = 5
        with pytest.raises(ValueError):
            gq.group_from_json(data)
