import json

import pytest

from groupgraphs.cli import main
from groupgraphs.groups import format_cayley_text, dihedral


@pytest.fixture()
def no_config(monkeypatch):
    monkeypatch.delenv("GROUPGRAPHS_CONFIG", raising=False)


class TestBuild(object):
    def test_delta_of_symmetric_four_as_dot(self, capsys, no_config):
        assert main(["build", "--group", "S4", "--kind", "delta", "--format", "dot"]) == 0
        out = capsys.readouterr().out
        assert out.count("label=") == 20

    def test_prime_graph_as_graph6(self, capsys, no_config):
        assert main(["build", "--group", "C6xC6", "--kind", "prime", "--format", "graph6"]) == 0
        assert capsys.readouterr().out.strip() == "A_"

    def test_noncommuting_of_abelian_is_a_precondition_error(self, capsys, no_config):
        assert main(["build", "--group", "C6", "--kind", "noncommuting"]) == 2
        assert "abelian" in capsys.readouterr().err

    def test_unknown_group_token(self, capsys, no_config):
        assert main(["build", "--group", "X9", "--kind", "power"]) == 2

    def test_unknown_kind(self, capsys, no_config):
        assert main(["build", "--group", "C6", "--kind", "sideways"]) == 2

    def test_json_format_round_trips(self, capsys, no_config):
        assert main(["build", "--group", "Q8", "--kind", "power", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["vertices"] == 8
        assert all(u != v for u, v in payload["edges"])

    def test_directed_power_as_json(self, capsys, no_config):
        assert main(["build", "--group", "C4", "--kind", "directed-power", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert ([1, 0] in payload["arcs"]) and ([1, 2] in payload["arcs"])

    def test_directed_power_rejects_graph6(self, no_config):
        assert main(["build", "--group", "C4", "--kind", "directed-power", "--format", "graph6"]) == 2

    def test_build_from_cayley_file(self, tmp_path, capsys, no_config):
        path = tmp_path / "d6.txt"
        path.write_text(format_cayley_text(dihedral(3)))
        assert main(["build", "--group", str(path), "--kind", "power", "--format", "graph6"]) == 0
        assert capsys.readouterr().out.strip()

    def test_corrupt_cayley_file(self, tmp_path, capsys, no_config):
        path = tmp_path / "broken.txt"
        path.write_text("3\n0 1 2\n1 2\n")
        assert main(["build", "--group", str(path), "--kind", "power"]) == 1

    def test_out_file(self, tmp_path, no_config):
        target = tmp_path / "graph.g6"
        assert main([
            "build", "--group", "C6xC6", "--kind", "prime",
            "--format", "graph6", "--out", str(target),
        ]) == 0
        assert target.read_text().strip() == "A_"


class TestScanCommand:
    def test_soluble_scan_small(self, capsys, no_config):
        assert main(["scan", "--kind", "soluble", "--max-order", "6"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert ["C6", "S3"] in payload["nilpotency_mismatches"]

    def test_power_scan_to_sixteen(self, capsys, no_config):
        assert main(["scan", "--kind", "power", "--max-order", "16"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["nilpotency_mismatches"] == []
        assert payload["contract_kind"] is True

    def test_join_scan_include_list(self, capsys, no_config):
        assert main(["scan", "--kind", "join", "--include", "C3xC3,D6"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["nilpotency_mismatches"] == [["C3xC3", "D6"]]

    def test_scan_with_import(self, tmp_path, capsys, no_config):
        path = tmp_path / "s3.txt"
        path.write_text(format_cayley_text(dihedral(3)).replace("name D6", "name imported-d6"))
        assert main([
            "scan", "--kind", "soluble", "--include", "C6",
            "--import", str(path),
        ]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["nilpotency_mismatches"] == [["C6", "imported-d6"]]

    def test_deterministic_json(self, capsys, no_config):
        argv = ["scan", "--kind", "commuting", "--max-order", "10"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        assert capsys.readouterr().out == first

    def test_catalog_bound_above_cap_is_precondition_error(self, no_config):
        assert main(["scan", "--kind", "power", "--max-order", "6000"]) == 2

    def test_contract_violation_exit_code(self, monkeypatch, capsys, no_config):
        # a power-scan nilpotency mismatch must surface as exit 3; fabricate
        # one since the real scans stay clean
        import groupgraphs.cli as cli_mod
        from groupgraphs.builders import GraphKind
        from groupgraphs.scanner import ScanReport

        def fake_scan(catalog, kind, **kwargs):
            return ScanReport(
                kind=GraphKind.POWER,
                pairs_tested=1,
                iso_pairs=[("A", "B")],
                nilpotency_mismatches=[("A", "B")],
            )

        monkeypatch.setattr(cli_mod, "scan_question1", fake_scan)
        assert main(["scan", "--kind", "power", "--max-order", "4"]) == 3


class TestVerifyCommand:
    def test_filtered_claims_pass(self, capsys, no_config):
        code = main([
            "verify", "--max-order", "16",
            "--claims", "engel-equivalences,generating-degree-law,prime-ratio-recovery",
        ])
        out = capsys.readouterr().out
        assert code == 0
        reports = json.loads(out)
        assert reports and all(r["passed"] for r in reports)
        ids = {r["claim_id"] for r in reports}
        assert ids == {
            "engel-equivalences", "generating-degree-law", "prime-ratio-recovery",
        }

    def test_unknown_claim_id(self, capsys, no_config):
        assert main(["verify", "--claims", "nonexistent-claim"]) == 1

    def test_verify_reports_reparse(self, capsys, no_config):
        assert main(["verify", "--max-order", "12", "--claims", "delta-structure"]) == 0
        reports = json.loads(capsys.readouterr().out)
        for r in reports:
            assert set(r) == {"claim_id", "subject", "passed", "witness"}

    def test_corrupt_import_is_setup_error(self, tmp_path, capsys, no_config):
        path = tmp_path / "bad.txt"
        path.write_text("not a table")
        assert main(["verify", "--import", str(path)]) == 1

    def test_include_list(self, capsys, no_config):
        code = main([
            "verify", "--include", "C6,S3,Q8,Dic12",
            "--claims", "engel-equivalences",
        ])
        assert code == 0
        reports = json.loads(capsys.readouterr().out)
        assert {r["subject"] for r in reports} == {"C6", "S3", "Q8", "Dic12"}

    def test_deterministic_reports(self, capsys, no_config):
        argv = ["verify", "--max-order", "10", "--claims", "prime-ratio-recovery,delta-structure"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        assert capsys.readouterr().out == first

    def test_jobs_flag_does_not_change_output(self, capsys, no_config):
        base = ["scan", "--kind", "engel", "--max-order", "12"]
        assert main(base) == 0
        serial = capsys.readouterr().out
        assert main(base + ["--jobs", "3"]) == 0
        assert capsys.readouterr().out == serial


class TestConfig:
    def test_config_overrides_and_semidirect(self, tmp_path, capsys, monkeypatch):
        cfg = tmp_path / "gg.conf"
        cfg.write_text(
            "# comment\n"
            "jobs = 2\n"
            "seed = 5\n"
            "semidirect.Frob20 = C5 C4 2\n"
        )
        monkeypatch.setenv("GROUPGRAPHS_CONFIG", str(cfg))
        assert main(["build", "--group", "Frob20", "--kind", "prime", "--format", "text"]) == 0
        assert capsys.readouterr().out.startswith("2")

    def test_bad_config_key(self, tmp_path, monkeypatch):
        cfg = tmp_path / "gg.conf"
        cfg.write_text("mystery = 3\n")
        monkeypatch.setenv("GROUPGRAPHS_CONFIG", str(cfg))
        assert main(["build", "--group", "C2", "--kind", "power"]) == 1

    def test_nonpositive_cap_rejected(self, tmp_path, monkeypatch):
        cfg = tmp_path / "gg.conf"
        cfg.write_text("element_cap = 0\n")
        monkeypatch.setenv("GROUPGRAPHS_CONFIG", str(cfg))
        assert main(["build", "--group", "C2", "--kind", "power"]) == 1

    def test_bad_semidirect_spec(self, tmp_path, monkeypatch):
        cfg = tmp_path / "gg.conf"
        cfg.write_text("semidirect.X = C5 2\n")
        monkeypatch.setenv("GROUPGRAPHS_CONFIG", str(cfg))
        assert main(["build", "--group", "C2", "--kind", "power"]) == 1

    def test_invalid_action_in_config_group(self, tmp_path, monkeypatch, capsys):
        cfg = tmp_path / "gg.conf"
        cfg.write_text("semidirect.Bad = C6 C2 2\n")  # x -> 2x is not a bijection mod 6
        monkeypatch.setenv("GROUPGRAPHS_CONFIG", str(cfg))
        assert main(["build", "--group", "Bad", "--kind", "power"]) == 2
