import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> (passed, detail), filled by tests/test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split(".")[0]), k)):
        ok, detail = ACCEPTANCE[key]
        status = "PASS" if ok is True else ("SKIP" if ok is None else "FAIL")
        tr.write_line(f"[{status}] criterion {key}: {detail}")


@pytest.fixture
def record():
    def _record(key, ok, detail):
        ACCEPTANCE[str(key)] = (ok, detail)
    return _record


@pytest.fixture(scope="session")
def antiheptagon_cube():
    """E_3 of the 7-antihole; several minutes, so computed once per session."""
    from ctxgraph.eprinciple import e_bound
    from ctxgraph.graph import anticycle

    if os.environ.get("CTXGRAPH_SKIP_EXTENDED") == "1":
        pytest.skip("CTXGRAPH_SKIP_EXTENDED=1")
    return e_bound(anticycle(7), 3, max_vertices=343, budget_seconds=3600)
