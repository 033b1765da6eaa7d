import pytest

import gqforge as gq
from gqforge.catalog import double_perp, fixture
from gqforge.errors import NotRegularPoint, UnsupportedField


class TestOrdinary:
    def test_certificate(self):
        cert = gq.verify_gq(gq.ordinary_quadrangle())
        assert (cert.s, cert.t) == (1, 1)

    def test_isomorphic_to_sigma_build(self):
        c4 = gq.cyclic_group(4)
        built = gq.build_gq_from_sigma(c4, gq.sigma_set(c4, [0, 1]))
        assert gq.isomorphic(gq.ordinary_quadrangle(), built.structure) is not None

    def test_polarity_exists(self):
        assert gq.find_polarity(gq.ordinary_quadrangle()) is not None


class TestSymplectic:
    def test_w2_counts(self, store):
        w2 = store.get("w2")
        cert = gq.verify_gq(w2)
        assert (cert.s, cert.t) == (2, 2)
        assert w2.num_points == 15 and w2.num_lines == 15
        assert all(len(line) == 3 for line in w2.lines)

    def test_w3_counts(self, store):
        w3 = store.get("w3")
        cert = gq.verify_gq(w3)
        assert (cert.s, cert.t) == (3, 3)
        assert w3.num_points == 40 and w3.num_lines == 40

    def test_count_formula(self, store):
        for q, structure in ((2, store.get("w2")), (3, store.get("w3"))):
            assert structure.num_points == (q + 1) * (q * q + 1)
            assert structure.num_lines == (q + 1) * (q * q + 1)

    def test_unsupported_field(self):
        with pytest.raises(UnsupportedField):
            gq.symplectic_gq(4)

    def test_deterministic(self, store):
        assert gq.symplectic_gq(2).lines == store.get("w2").lines


class TestRegularPoints:
    def test_all_w3_points_regular(self, store):
        w3 = store.get("w3")
        assert all(gq.is_regular_point(w3, x) for x in range(40))

    def test_ordinary_points_regular(self):
        q = gq.ordinary_quadrangle()
        assert all(gq.is_regular_point(q, x) for x in range(4))

    def test_payne_fixture_point_not_regular(self, store):
        # frozen oracle run: GQ(2,4) coming out of the derivation has none
        assert not gq.is_regular_point(store.get("payne"), 0)

    def test_dual_w3_point_not_regular(self, store):
        # lines of W(3) are not regular, so the dual's points are not either
        assert not gq.is_regular_point(gq.dual(store.get("w3")), 0)

    def test_double_perp_size_bound(self, store):
        w3 = store.get("w3")
        for y in range(1, 40):
            if y in w3.collinear[0]:
                continue
            assert len(double_perp(w3, 0, y)) == 4


class TestPayneDerivation:
    def test_w3_gives_2_4(self, store):
        payne = store.get("payne")
        cert = gq.verify_gq(payne)
        assert (cert.s, cert.t) == (2, 4)
        assert payne.num_points == 27 and payne.num_lines == 45

    def test_w2_gives_1_3(self, store):
        derived = gq.payne_derive(store.get("w2"), 0)
        cert = gq.verify_gq(derived)
        assert (cert.s, cert.t) == (1, 3)
        assert derived.num_points == 8 and derived.num_lines == 16

    def test_base_point_choice_is_isomorphic(self, store):
        w2 = store.get("w2")
        a = gq.payne_derive(w2, 0)
        b = gq.payne_derive(w2, 7)
        assert gq.isomorphic(a, b) is not None

    def test_rejects_non_regular_point(self, store):
        with pytest.raises(NotRegularPoint):
            gq.payne_derive(gq.dual(store.get("w3")), 0)

    def test_rejects_unequal_parameters(self, store):
        with pytest.raises(ValueError):
            gq.payne_derive(store.get("payne"), 0)

    def test_derived_parameters_satisfy_counting(self, store):
        cert = gq.verify_gq(store.get("payne"))
        assert gq.parameter_feasible(cert.s, cert.t).ok
        assert cert.num_points == (cert.s + 1) * (cert.s * cert.t + 1)


class TestFixtureRegistry:
    def test_names(self):
        assert gq.verify_gq(fixture("ordinary")).s == 1
        with pytest.raises(ValueError):
            fixture("nonesuch")

    def test_payne_w3_fixture(self, store):
        q = fixture("payne-w3")
        assert q.num_points == 27
        assert gq.isomorphic(q, store.get("payne")) is not None
