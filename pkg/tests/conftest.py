import pytest
from hypothesis import HealthCheck, settings

from docalearn.testkit import load_fixture

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def anbn():
    return load_fixture("anbn").target


@pytest.fixture
def primematch():
    return load_fixture("primematch").target


@pytest.fixture
def leadmatch():
    return load_fixture("leadmatch").target


class Learned:
    def __init__(self, fixture, teacher, machine, stats, results, seconds):
        self.fixture = fixture
        self.teacher = teacher
        self.machine = machine
        self.stats = stats
        self.results = results
        self.seconds = seconds

    @property
    def final(self):
        return self.results[-1]


@pytest.fixture(scope="session")
def learned():
    """ocl on every shipped fixture under desk-small, computed once."""
    import time

    from docalearn.assembly import ocl
    from docalearn.oracle import DEFAULT_CE_CAP, Teacher
    from docalearn.profiles import load_profile
    from docalearn.testkit import all_fixtures

    profile = load_profile("desk-small")
    out = {}
    for fx in all_fixtures():
        teacher = Teacher(fx.target, DEFAULT_CE_CAP)
        results = []
        t0 = time.perf_counter()
        machine, stats = ocl(teacher, profile, n_max=6, results=results)
        out[fx.name] = Learned(fx, teacher, machine, stats, results, time.perf_counter() - t0)
    return out


@pytest.fixture(scope="session")
def desk_small():
    from docalearn.profiles import load_profile
    return load_profile("desk-small")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
