import pytest

from src.control.checks import CHECKS, CheckResult, run_checks


def test_quick_suite_passes():
    results = run_checks(42, quick=True)
    assert [r.name for r in results] == [name for name, _ in CHECKS]
    failed = [r for r in results if not r.passed]
    assert not failed, failed


def test_reports_do_not_depend_on_worker_count():
    only = ("staircase_exactness", "zyz_reconstruction", "density_witness")
    serial = run_checks(7, quick=True, workers=1, only=only)
    parallel = run_checks(7, quick=True, workers=3, only=only)
    assert serial == parallel


def test_selected_check_draws_from_its_own_seed():
    alone = run_checks(11, quick=True, only=("zyz_reconstruction",))
    together = run_checks(11, quick=True, only=("staircase_exactness", "zyz_reconstruction"))
    assert alone[0] == together[1]


def test_seed_changes_results():
    a = run_checks(1, quick=True, only=("zyz_reconstruction",))[0]
    b = run_checks(2, quick=True, only=("zyz_reconstruction",))[0]
    assert a.worst != b.worst


@pytest.mark.parametrize("name", ["swap_range_oracle", "paired_exchanges"])
def test_exact_checks(name):
    (result,) = run_checks(0, quick=True, only=(name,))
    assert isinstance(result, CheckResult)
    assert result.passed
    assert result.to_dict()["name"] == name


def test_unitarity_limit_is_per_ten_thousand_primitives():
    (quick,) = run_checks(3, quick=True, only=("unitarity",))
    assert quick.limit == 1e-12
    assert quick.passed and quick.worst <= 1e-12
