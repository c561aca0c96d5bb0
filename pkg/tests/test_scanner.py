import pytest

from groupgraphs.builders import GraphKind
from groupgraphs.catalog import default_catalog, parse_group_spec
from groupgraphs.groups import cyclic, symmetric
from groupgraphs.isomorphism import are_isomorphic, fingerprint
from groupgraphs.scanner import CONTRACT_KINDS, scan_question1


class TestScan:
    def test_soluble_scan_finds_the_order_six_pair(self):
        report = scan_question1([cyclic(6), symmetric(3)], GraphKind.SOLUBLE)
        assert report.nilpotency_mismatches == [("C6", "S3")]
        assert not report.contract_violated  # soluble scans are monitored

    def test_power_scan_to_sixteen_is_clean(self, catalog64):
        catalog = [g for g in catalog64 if g.n <= 16]
        report = scan_question1(catalog, GraphKind.POWER)
        assert report.nilpotency_mismatches == []

    def test_join_scan_finds_the_nine_element_pair(self):
        report = scan_question1(
            [parse_group_spec("C3xC3"), parse_group_spec("D6")], GraphKind.JOIN
        )
        assert report.nilpotency_mismatches == [("C3xC3", "D6")]

    def test_skips_record_reasons(self):
        report = scan_question1(
            [cyclic(4), symmetric(3), parse_group_spec("C2xC2xC2")],
            GraphKind.GENERATING,
        )
        assert ("C2xC2xC2", "not 2-generated") in report.skipped

    def test_noncommuting_scan_skips_abelian(self):
        report = scan_question1([cyclic(4), symmetric(3)], GraphKind.NON_COMMUTING)
        assert ("C4", "abelian group") in report.skipped

    def test_directed_power_not_scannable(self):
        with pytest.raises(ValueError):
            scan_question1([cyclic(2)], GraphKind.DIRECTED_POWER)

    def test_classes_carry_graph6_representatives(self):
        report = scan_question1(
            [parse_group_spec("C3xC3"), parse_group_spec("D6")], GraphKind.JOIN
        )
        assert len(report.classes) == 1
        entry = report.classes[0]
        assert sorted(entry["members"]) == ["C3xC3", "D6"]
        from groupgraphs.graph6 import from_graph6

        rep = from_graph6(entry["graph6"])
        assert rep.m == 5

    def test_iso_pairs_reverify(self, catalog24):
        catalog = [g for g in catalog24 if g.n <= 12]
        report = scan_question1(catalog, GraphKind.POWER)
        by_name = {g.name: g for g in catalog}
        from groupgraphs.builders import element_graph

        for a, b in report.iso_pairs:
            ga = element_graph(by_name[a], GraphKind.POWER)
            gb = element_graph(by_name[b], GraphKind.POWER)
            assert are_isomorphic(ga, gb).isomorphic
            assert fingerprint(ga) == fingerprint(gb)

    def test_mismatch_pairs_have_exactly_one_nilpotent_member(self, catalog24):
        from groupgraphs.structure import is_nilpotent

        catalog = [g for g in catalog24 if g.n <= 16]
        report = scan_question1(catalog, GraphKind.JOIN)
        by_name = {g.name: g for g in catalog}
        for nil_name, other_name in report.nilpotency_mismatches:
            assert is_nilpotent(by_name[nil_name])
            assert not is_nilpotent(by_name[other_name])

    def test_deterministic_output(self):
        catalog_a = default_catalog(10)
        catalog_b = default_catalog(10)
        r1 = scan_question1(catalog_a, GraphKind.COMMUTING)
        r2 = scan_question1(catalog_b, GraphKind.COMMUTING)
        assert r1.to_json_dict() == r2.to_json_dict()

    def test_jobs_do_not_change_results(self, catalog24):
        catalog = [g for g in catalog24 if g.n <= 12]
        serial = scan_question1(catalog, GraphKind.ENGEL, jobs=1)
        threaded = scan_question1(catalog, GraphKind.ENGEL, jobs=4)
        assert serial.to_json_dict() == threaded.to_json_dict()

    def test_contract_kind_set(self):
        assert GraphKind.POWER in CONTRACT_KINDS
        assert GraphKind.ENGEL in CONTRACT_KINDS
        assert GraphKind.JOIN not in CONTRACT_KINDS

    def test_prime_scan_reports_witness_pair(self):
        catalog = [parse_group_spec("C6xC6"), parse_group_spec("S3xC6")]
        report = scan_question1(catalog, GraphKind.PRIME)
        assert ("C6xC6", "S3xC6") in report.nilpotency_mismatches

    def test_join_scan_skips_beyond_lattice_cap(self):
        report = scan_question1([cyclic(50), symmetric(3)], GraphKind.JOIN)
        assert any(name == "C50" for name, _ in report.skipped)
        assert report.iso_pairs == []

    def test_element_scan_skips_beyond_element_cap(self):
        report = scan_question1([cyclic(10), cyclic(3)], GraphKind.POWER, element_cap=5)
        assert any(name == "C10" for name, _ in report.skipped)

    def test_contract_violation_flag(self):
        from groupgraphs.scanner import ScanReport

        hypothetical = ScanReport(
            kind=GraphKind.POWER,
            pairs_tested=1,
            iso_pairs=[("A", "B")],
            nilpotency_mismatches=[("A", "B")],
        )
        assert hypothetical.contract_violated
        monitored = ScanReport(
            kind=GraphKind.JOIN,
            pairs_tested=1,
            iso_pairs=[("A", "B")],
            nilpotency_mismatches=[("A", "B")],
        )
        assert not monitored.contract_violated
