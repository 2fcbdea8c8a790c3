import pytest

from hybridarith import GuardBounds, PrecisionLevel

FIXED = [PrecisionLevel.FIXED64, PrecisionLevel.FIXED128]
ALL = FIXED + [PrecisionLevel.EXTENDED]

B64 = GuardBounds.for_word_size(64)
B128 = GuardBounds.for_word_size(128)


@pytest.fixture(params=FIXED, ids=str)
def fixed_level(request):
    return request.param


@pytest.fixture(params=ALL, ids=str)
def any_level(request):
    return request.param


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
