"""Tests for the bundled invariant suites."""

import pytest

from fourg import checks
from fourg.checks import (
    ALL_CHECKS,
    CheckResult,
    check_braid_invariance,
    check_group_axioms,
    check_kernel_genus,
    check_species_constraints,
    check_worker_reproducibility,
    run_all_checks,
)
from fourg.errors import FourgError


class TestCheckResult:
    def test_line_formats_pass_and_fail(self):
        ok = CheckResult("sample", True, "all fine")
        bad = CheckResult("sample", False, "broke")
        assert ok.line() == "PASS  sample: all fine"
        assert bad.line() == "FAIL  sample: broke"


class TestIndividualChecks:
    def test_group_axioms_pass(self):
        result = check_group_axioms(2, 4)
        assert result.passed
        assert "tables verified" in result.detail

    def test_braid_invariance_pass(self):
        result = check_braid_invariance(2, 4)
        assert result.passed
        assert "stayed in class" in result.detail

    def test_kernel_genus_pass(self):
        result = check_kernel_genus(2, 5)
        assert result.passed

    def test_species_constraints_pass(self):
        result = check_species_constraints(2, 4)
        assert result.passed

    def test_worker_reproducibility_pass(self):
        result = check_worker_reproducibility(2, 3, workers=2)
        assert result.passed
        assert "byte-identical" in result.detail


class TestRunAll:
    def test_all_suites_pass_and_report_names(self):
        results = run_all_checks(2, 4, workers=2)
        assert len(results) == len(ALL_CHECKS)
        assert all(r.passed for r in results)
        names = [r.name for r in results]
        assert names == [
            "group-axioms",
            "braid-invariance",
            "kernel-genus",
            "species-constraints",
            "centralizer-images",
            "worker-reproducibility",
        ]

    def test_engine_errors_become_failures(self, monkeypatch):
        def explode(g_min, g_max, workers=2):
            raise FourgError("synthetic failure")

        broken = (((explode,)) + ALL_CHECKS[1:])
        monkeypatch.setattr(checks, "ALL_CHECKS", broken)
        results = run_all_checks(2, 3)
        assert not results[0].passed
        assert "synthetic failure" in results[0].detail
        assert all(r.passed for r in results[1:])

    def test_rejects_bad_range(self):
        with pytest.raises(ValueError):
            run_all_checks(3, 2)
        with pytest.raises(ValueError):
            run_all_checks(1, 4)
