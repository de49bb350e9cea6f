import pytest

from awconn.verify import SUITES, run_verify


@pytest.mark.parametrize("suite", SUITES)
def test_each_suite_passes(suite):
    report = run_verify(suite, 3, 1, 2024)
    assert report["pass"], [c for c in report["checks"] if c["status"] != "pass"]
    assert report["checks"]
    assert all(c["name"].startswith(suite.split("-")[0]) for c in report["checks"])


def test_all_runs_suites_in_order():
    report = run_verify("all", 2, 1, 1)
    order = []
    for c in report["checks"]:
        head = c["name"].split("/")[0]
        if not order or order[-1] != head:
            order.append(head)
    assert order == list(SUITES)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_verify("nope", 2, 1, 0)


def test_block_records_in_report():
    report = run_verify("cocycle", 3, 1, 8)
    block = [c for c in report["checks"] if c["name"] == "cocycle/block-identities"]
    assert len(block) == 2 * 4
    assert all(c["detail"]["failed"] == [] for c in block)
