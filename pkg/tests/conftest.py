import os

# numba reads its thread ceiling once, at import; the determinism tests need 4
os.environ.setdefault("NUMBA_NUM_THREADS", "4")

import pytest  # noqa: E402

ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config.stash[ACCEPTANCE_KEY] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    number, title = mark.args
    detail = dict(item.user_properties).get("detail", "")
    item.config.stash[ACCEPTANCE_KEY].append((number, title, report.passed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = sorted(config.stash[ACCEPTANCE_KEY], key=lambda r: r[0])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in rows:
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
