import pytest

from skinsar.fixtures import builtin_tissue, limits_path, load_limits

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def dry_skin():
    return builtin_tissue("dry-skin")


@pytest.fixture(scope="session")
def icnirp():
    return load_limits(limits_path("icnirp2020-public"))


@pytest.fixture(scope="session")
def fcc():
    return load_limits(limits_path("fcc-mpe-general"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
