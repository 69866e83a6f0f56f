import pytest

from ftwhittle import make_torus_braid, whittle


@pytest.fixture(scope="session")
def whittled():
    """Memoised whittle(ft_n^k) shared by the whole session."""
    cache = {}

    def get(n, k):
        if (n, k) not in cache:
            cache[(n, k)] = whittle(make_torus_braid(n, k))
        return cache[(n, k)]

    return get


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line for an acceptance criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(number, passed, detail):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
