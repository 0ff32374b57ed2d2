import pytest

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    label = item.get_closest_marker("criterion")
    if label is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = dict(item.user_properties).get("detail", "")
        _ACCEPTANCE[label.args[0]] = ("PASS" if report.passed else "FAIL", detail)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE):
        verdict, detail = _ACCEPTANCE[label]
        terminalreporter.write_line(f"{label}: {verdict}  {detail}".rstrip())
