from pathlib import Path

import pytest

from infoextract.pipeline import Pipeline, load_config

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
FIXTURE = DATA / "reuter-1996-07-12.txt"
GOLD = DATA / "reuter-1996-07-12.gold"
SYNTHETIC = sorted((DATA / "synthetic").glob("*.txt"))
RESOURCES = ROOT / "src" / "infoextract" / "resources"

CRITERIA = {
    1: "golden worked example: 13 entities, 2 events, perfect score",
    2: "NE projection equals mention (name, class) set",
    3: "coreference examples (Hamlet, fixture chains)",
    4: "date normalization and 1000 random round-trips",
    5: "scorer identities, swap symmetry, bounds, worked value",
    6: "precision/recall dial: same-sentence subset of same-document",
    7: "emit/parse round-trip on gold and 200 random sets",
    8: "localization identity and fr demonstration",
    9: "determinism over a 50-document corpus",
}
_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion this test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or report.failed or report.skipped:
        passed = report.passed if report.when == "call" else False
        n = marker.args[0]
        _outcomes[n] = _outcomes.get(n, True) and passed


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, label in CRITERIA.items():
        if n not in _outcomes:
            continue
        status = "PASS" if _outcomes[n] else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {label}")


@pytest.fixture(scope="session")
def pipeline():
    return Pipeline(load_config())


@pytest.fixture(scope="session")
def fixture_result(pipeline):
    from infoextract.text import Document

    return pipeline.run(Document.from_file(FIXTURE))
