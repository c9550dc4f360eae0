import pytest

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_addoption(parser):
    parser.addoption("--long", action="store_true", default=False,
                     help="run the slow order-5 ASHM count")


def pytest_configure(config):
    config.addinivalue_line("markers", "long: slow checks enabled by --long")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip = pytest.mark.skip(reason="needs --long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def record_criterion():
    def record(result, note: str = ""):
        line = result.line().splitlines()[0]
        ACCEPTANCE_LINES[result.number] = line + (f"  [{note}]" if note else "")
        for extra in result.line().splitlines()[1:]:
            ACCEPTANCE_LINES[result.number] += "\n" + extra
    return record
