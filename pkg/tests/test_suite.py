"""Unit tests for updown.suite."""

import pytest

from updown import phi as phi_module
from updown.const import DEFAULT_VERIFY_MAX_N, DEFAULT_VERIFY_ORACLE_MAX
from updown.suite import run_suite


def test_small_budget_passes() -> None:
    report = run_suite(max_n=6, oracle_max=3)
    assert report.ok, [check.detail for check in report.failed()]
    names = [check.name for check in report.checks]
    assert "phi methods agree" in names
    assert "oracle agreement" in names
    assert "extremal singletons" in names
    assert report.failed() == []


def test_empty_ranges_are_skipped() -> None:
    """Checks left without a ground size are omitted rather than passed."""
    report = run_suite(max_n=0, oracle_max=0)
    names = {check.name for check in report.checks}
    assert "phi methods agree" in names
    assert "delta identities" in names
    assert "monotone prefix" not in names
    assert "cross-Sperner oracle" not in names
    assert "extremal singletons" not in names
    assert report.ok


def test_max_n_follows_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("UPDOWN_MAX_N", "3")
    report = run_suite(max_n=12, oracle_max=0)
    assert report.max_n == 3  # noqa: PLR2004
    assert report.ok


def test_corrupted_recursion_fails(monkeypatch: pytest.MonkeyPatch) -> None:
    prefix = phi_module._RECURSION.prefix(4).copy()  # noqa: SLF001
    prefix[3] += 1
    monkeypatch.setitem(phi_module._RECURSION._prefixes, 4, prefix)  # noqa: SLF001
    report = run_suite(max_n=4, oracle_max=0)
    assert not report.ok
    failed = {check.name: check.detail for check in report.failed()}
    assert "phi methods agree" in failed
    assert "Phi(4,3)" in failed["phi methods agree"]


def test_full_budget_passes() -> None:
    """The default budget reaches the odd singleton gap up to n = 19."""
    report = run_suite(max_n=DEFAULT_VERIFY_MAX_N, oracle_max=DEFAULT_VERIFY_ORACLE_MAX)
    assert report.ok, [check.detail for check in report.failed()]
    assert report.max_n == 19  # noqa: PLR2004
    details = {check.name: check.detail for check in report.checks}
    assert details["odd singleton gap"] == "odd n<=19"
