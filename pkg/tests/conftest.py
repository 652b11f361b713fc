import pytest

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    n, text = mark.args
    ok = rep.passed if rep.when == "call" else False
    prev = _criteria.get(n, (True, text))
    _criteria[n] = (prev[0] and ok, text)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, text = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")
