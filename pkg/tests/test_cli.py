"""Command-line interface: formats, exit codes, determinism."""

import json

import pytest

from hurwitz.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, parse_partition
from hurwitz.partitions import Partition


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPartitionParsing:
    def test_simple(self):
        alpha, reordered = parse_partition("3,2,2")
        assert alpha == Partition((3, 2, 2)) and not reordered

    def test_reordering_flagged(self):
        alpha, reordered = parse_partition("1,3")
        assert alpha == Partition((3, 1)) and reordered

    def test_garbage_rejected(self):
        for bad in ("", "a,b", "0", "-1,2"):
            with pytest.raises(ValueError):
                parse_partition(bad)


class TestCount:
    def test_closed_three_cycle(self, capsys):
        code, out, _ = run_cli(
            capsys, "count", "--alpha", "3", "--genus", "1", "--method", "closed"
        )
        assert code == EXIT_OK
        assert out.splitlines() == ["alpha,g,r,c,mu", "(3),1,4,27,9"]

    def test_vanishing_bracket(self, capsys):
        code, out, _ = run_cli(capsys, "count", "--alpha", "1", "--genus", "1")
        assert code == EXIT_OK
        assert out.splitlines()[1] == "(1),1,2,0,0"

    def test_oracle_method(self, capsys):
        code, out, _ = run_cli(
            capsys, "count", "--alpha", "2,1", "--genus", "0", "--method", "oracle"
        )
        assert code == EXIT_OK
        assert out.splitlines()[1] == '"(2,1)",0,3,8,4'

    def test_methods_agree(self, capsys):
        rows = []
        for method in ("oracle", "cutjoin", "closed"):
            code, out, _ = run_cli(
                capsys, "count", "--alpha", "4,1", "--genus", "1", "--method", method
            )
            assert code == EXIT_OK
            rows.append(out)
        assert rows[0] == rows[1] == rows[2]

    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "count", "--alpha", "2", "--genus", "1", "--format", "json"
        )
        assert code == EXIT_OK
        rec = json.loads(out)[0]
        assert rec["c"] == 1 and rec["mu"] == "1/2"
        assert rec["alpha"] == [2]  # partitions are integer arrays in JSON

    def test_reorder_warning_on_stderr(self, capsys):
        code, out, err = run_cli(capsys, "count", "--alpha", "1,2", "--genus", "0")
        assert code == EXIT_OK
        assert "reordered" in err

    def test_oracle_size_refusal(self, capsys):
        code, _, err = run_cli(
            capsys, "count", "--alpha", "8", "--genus", "0", "--method", "oracle"
        )
        assert code == EXIT_USAGE
        assert "error" in err

    def test_closed_genus_two_refused(self, capsys):
        code, _, err = run_cli(capsys, "count", "--alpha", "2", "--genus", "2")
        assert code == EXIT_USAGE

    def test_cutjoin_genus_two_allowed(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "count", "--alpha", "1,1", "--genus", "2", "--method", "cutjoin",
            "--N", "4",
        )
        assert code == EXIT_OK
        # c_2((1,1)) counts length-6 walks in S_2 landing at the identity
        # with a transitive group: every nonzero sequence works
        assert out.splitlines()[1] == '"(1,1)",2,6,1,1/2'

    def test_bad_partition_literal(self, capsys):
        code, _, err = run_cli(capsys, "count", "--alpha", "2;1", "--genus", "0")
        assert code == EXIT_USAGE


class TestTable:
    def test_single_row(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--n", "1")
        assert code == EXIT_OK
        assert out.splitlines() == ["alpha,c0,mu0,c1,mu1", "(1),1,1,0,0"]

    def test_two_rows(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--n", "2")
        assert code == EXIT_OK
        assert out.splitlines() == [
            "alpha,c0,mu0,c1,mu1",
            "(2),1,1/2,1,1/2",
            '"(1,1)",1,1/2,1,1/2',
        ]

    def test_methods_agree_at_n6(self, capsys):
        _, closed_out, _ = run_cli(capsys, "table", "--n", "6", "--method", "closed")
        _, cutjoin_out, _ = run_cli(capsys, "table", "--n", "6", "--method", "cutjoin")
        assert closed_out == cutjoin_out

    def test_deterministic(self, capsys):
        _, first, _ = run_cli(capsys, "table", "--n", "5")
        _, second, _ = run_cli(capsys, "table", "--n", "5")
        assert first == second


class TestVerify:
    def test_default_run_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--N", "6")
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["config"] == {"N": 6, "K": 6, "G": 1}
        assert all(c["status"] == "pass" for c in report["checks"])

    def test_injected_fault_fails_with_witness(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--N", "6", "--inject-fault")
        assert code == EXIT_FAIL
        report = json.loads(out)
        failed = [c for c in report["checks"] if c["status"] == "fail"]
        assert failed and "witness" in failed[0]


class TestCompare:
    def test_all_methods_agree_n4(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--n", "4")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "alpha,g,oracle,cutjoin,closed,agree"
        assert len(lines) == 1 + 2 * 5  # five partitions, two genera
        assert all(line.endswith("yes") for line in lines[1:])

    def test_genus_max_flag(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--n", "5", "--genus-max", "1")
        assert code == EXIT_OK

    def test_oracle_skipped_above_five(self, capsys):
        code, out, err = run_cli(capsys, "compare", "--n", "8")
        assert code == EXIT_OK
        assert "oracle skipped" in err
        assert out.splitlines()[0] == "alpha,g,cutjoin,closed,agree"


class TestEnvOverride:
    def test_trunc_n_env(self, capsys, monkeypatch):
        monkeypatch.setenv("HURWITZ_TRUNC_N", "6")
        code, out, _ = run_cli(capsys, "verify")
        report = json.loads(out)
        assert report["config"]["N"] == 6

    def test_bad_env_value(self, capsys, monkeypatch):
        monkeypatch.setenv("HURWITZ_TRUNC_N", "six")
        code, _, err = run_cli(capsys, "verify")
        assert code == EXIT_USAGE


class TestUsage:
    def test_missing_subcommand(self, capsys):
        assert run_cli(capsys)[0] == EXIT_USAGE

    def test_unknown_flag(self, capsys):
        assert run_cli(capsys, "count", "--frobnicate")[0] == EXIT_USAGE

    def test_k_below_n_refused(self, capsys):
        code, _, err = run_cli(
            capsys, "count", "--alpha", "2", "--genus", "0", "--N", "4", "--K", "2"
        )
        assert code == EXIT_USAGE
        assert "K" in err

    def test_compare_genus_two(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--n", "3", "--genus-max", "2")
        assert code == EXIT_OK
        lines = out.splitlines()
        # closed-formula column is empty beyond genus 1; others still agree
        assert "(3),2,243,243,,yes" in lines
