import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bdiag import enumeration as E
from bdiag import partitions as P

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_LEVELS = E.full_alphabet_by_weight(3)
DIAGRAMS = [g for w in sorted(_LEVELS) for g in _LEVELS[w]]


def diagrams(max_weight: int = 3):
    return st.sampled_from([g for g in DIAGRAMS if g.omega <= max_weight])


def partitions(kind=P.SET, max_size: int = 4):
    return st.sampled_from([p for n in range(max_size + 1) for p in P.partitions_of(kind, n)])


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
