import pytest

from helpers import ACCEPTANCE_REPORT, DATA


@pytest.fixture(scope="session")
def corpus():
    from zhengine.data import read_pgn
    return read_pgn(DATA / "sample_games.pgn")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_REPORT:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_REPORT):
            terminalreporter.write_line(line)
