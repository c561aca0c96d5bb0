import pytest

from groupgraphs.builders import GraphKind, element_graph
from groupgraphs.claims import (
    ClaimReport,
    verify_delta_disconnection,
    verify_delta_structure,
    verify_edge_count_identity,
    verify_engel_claims,
    verify_euler_product,
    verify_join_claims,
    verify_join_isolated_vertex,
    verify_nilpotent_degrees,
    verify_noncommuting_pair,
    verify_power_graph_pair,
    verify_prime_claims,
    verify_prime_doubling,
    verify_prime_squarefree,
    verify_supdue,
    verify_super_pair,
)
from groupgraphs.errors import AbelianGroupError
from groupgraphs.groups import (
    alternating,
    cyclic,
    dihedral,
    direct_product,
    quaternion,
    symmetric,
)


def klein():
    return direct_product(cyclic(2), cyclic(2))


class TestClaimReport:
    def test_failure_requires_witness(self):
        with pytest.raises(ValueError):
            ClaimReport("x", "y", False, None)

    def test_json_shape(self):
        r = ClaimReport("c", "s", True, {"info": {"k": 1}})
        assert r.to_json_dict() == {
            "claim_id": "c",
            "subject": "s",
            "passed": True,
            "witness": {"info": {"k": 1}},
        }


class TestEngelClaims:
    def test_nilpotent_group_passes(self):
        assert verify_engel_claims(quaternion(2)).passed

    def test_symmetric_three_passes(self):
        report = verify_engel_claims(symmetric(3))
        assert report.passed

    def test_trivial_group_passes(self):
        assert verify_engel_claims(cyclic(1)).passed

    def test_insoluble_group_records_instead_of_asserting(self):
        report = verify_engel_claims(alternating(5))
        assert report.passed
        record = report.witness["info"]["insoluble_record"]
        assert "agrees" in record


class TestPowerPairClaims:
    def test_cyclic_four_vs_klein(self):
        report = verify_power_graph_pair(cyclic(4), klein())
        assert report.passed
        assert report.witness["info"]["power_isomorphic"] is False

    def test_order_six_groups(self):
        report = verify_power_graph_pair(cyclic(6), symmetric(3))
        assert report.passed
        assert report.witness["info"]["power_isomorphic"] is False

    def test_identical_groups(self):
        report = verify_power_graph_pair(quaternion(2), quaternion(2))
        assert report.passed
        assert report.witness["info"]["power_isomorphic"] is True

    def test_isomorphic_groups_different_construction(self):
        report = verify_power_graph_pair(dihedral(3), symmetric(3))
        assert report.passed
        assert report.witness["info"]["power_isomorphic"] is True


class TestNonCommutingClaims:
    def test_dihedral_vs_quaternion_eight(self):
        report = verify_noncommuting_pair(dihedral(4), quaternion(2))
        assert report.passed
        assert report.witness["info"]["noncommuting_isomorphic"] is True

    def test_requires_nonabelian(self):
        with pytest.raises(AbelianGroupError):
            verify_noncommuting_pair(cyclic(6), symmetric(3))

    def test_self_pair(self):
        assert verify_noncommuting_pair(symmetric(4), symmetric(4)).passed


class TestGeneratingClaims:
    def test_degree_law_spot_groups(self):
        for g in (klein(), quaternion(2), direct_product(cyclic(3), cyclic(3))):
            assert verify_nilpotent_degrees(g).passed

    def test_euler_product_claim(self):
        assert verify_euler_product(direct_product(cyclic(6), cyclic(6))).passed

    def test_edge_identity_claim(self):
        assert verify_edge_count_identity(quaternion(2)).passed
        assert verify_edge_count_identity(cyclic(6)).passed

    def test_supdue_symmetric_three_and_dihedrals(self):
        for g in (symmetric(3), dihedral(5), dihedral(3)):
            report = verify_supdue(g)
            assert report.passed, report.witness

    def test_supdue_on_abelian_and_cyclic(self):
        assert verify_supdue(klein()).passed
        assert verify_supdue(cyclic(6)).passed

    def test_generating_graph_of_symmetric_three_frozen_degrees(self):
        gen = element_graph(symmetric(3), GraphKind.GENERATING)
        assert gen.degree_multiset() == (0, 3, 3, 4, 4, 4)

    def test_super_pair_no_assertion_when_graphs_differ(self):
        report = verify_super_pair(klein(), cyclic(4))
        assert report.passed
        assert report.witness["info"]["generating_isomorphic"] is False

    def test_super_pair_identical(self):
        report = verify_super_pair(quaternion(2), quaternion(2))
        assert report.passed
        assert report.witness["info"]["nilpotent_flags"] == [True, True]


class TestDeltaClaims:
    def test_structure_on_named_groups(self):
        for g in (cyclic(12), quaternion(2), dihedral(5), klein(), symmetric(4)):
            report = verify_delta_structure(g)
            assert report.passed, (g.name, report.witness)

    def test_cyclic_twelve_isolated_count(self):
        from groupgraphs.builders import delta_graph

        delta = delta_graph(cyclic(12))
        assert delta.m == 12
        assert len(delta.isolated_vertices()) == 4  # the four generators

    def test_disconnection_verdicts(self):
        for g in (cyclic(6), quaternion(2), symmetric(3), dihedral(6), symmetric(4)):
            report = verify_delta_disconnection(g)
            assert report.passed, (g.name, report.witness)

    def test_trivial_group_is_degenerate(self):
        report = verify_delta_disconnection(cyclic(1))
        assert report.passed
        assert report.witness["info"]["note"] == "single vertex"


class TestSmallDeltaUniqueness:
    def test_cyclic_vs_noncyclic_p_group_graphs(self):
        # over every pair below, the graphs agree exactly for the pair
        # (three-element cyclic, Klein group): 3 bare vertices on both sides
        from groupgraphs.builders import delta_graph
        from groupgraphs.catalog import default_catalog
        from groupgraphs.isomorphism import are_isomorphic
        from groupgraphs.structure import is_2generated, is_cyclic
        from groupgraphs.structure import _prime_factors

        catalog = default_catalog(32)
        cyclics = [g for g in catalog if is_cyclic(g) and g.n >= 2]
        p_groups = [
            g
            for g in catalog
            if not is_cyclic(g)
            and len(_prime_factors(g.n)) == 1
            and is_2generated(g)
        ]
        matches = []
        for c in cyclics:
            for p in p_groups:
                if are_isomorphic(delta_graph(c), delta_graph(p)).isomorphic:
                    matches.append((c.name, p.name))
        assert matches == [("C3", "C2xC2")]


class TestPrimeClaims:
    def test_pair_record(self):
        g = direct_product(cyclic(6), cyclic(6))
        h = direct_product(symmetric(3), cyclic(6))
        report = verify_prime_claims(g, h)
        assert report.passed
        assert report.witness["info"]["prime_isomorphic"] is True
        assert report.witness["info"]["nilpotent_flags"] == [True, False]

    def test_doubling_construction(self):
        report = verify_prime_doubling(cyclic(6), symmetric(3))
        assert report.passed

    def test_doubling_rejects_nilpotent_seed(self):
        report = verify_prime_doubling(cyclic(6), cyclic(6))
        assert not report.passed
        assert "k_must_be_non_nilpotent" in report.witness

    def test_squarefree_cyclic_thirty(self):
        report = verify_prime_squarefree(cyclic(30))
        assert report.passed
        from groupgraphs.builders import prime_graph

        assert prime_graph(cyclic(30)).is_complete()

    def test_squarefree_symmetric_three(self):
        assert verify_prime_squarefree(symmetric(3)).passed


class TestJoinClaims:
    def test_elementary_nine_vs_dihedral_six(self):
        report = verify_join_claims(direct_product(cyclic(3), cyclic(3)), dihedral(3))
        assert report.passed, report.witness
        assert report.witness["info"]["join_isomorphic"] is True

    def test_elementary_25_vs_dihedral_ten(self):
        report = verify_join_claims(direct_product(cyclic(5), cyclic(5)), dihedral(5))
        assert report.passed, report.witness
        assert report.witness["info"]["join_isomorphic"] is True

    def test_self_pair(self):
        assert verify_join_claims(symmetric(3), symmetric(3)).passed

    def test_isolated_vertex_claim(self):
        for g in (symmetric(3), dihedral(5), klein()):
            assert verify_join_isolated_vertex(g).passed
