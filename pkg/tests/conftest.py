import pytest

from acstruct.graded import make_ring


@pytest.fixture
def cp3_ring():
    # H*(CP^3) = Q[h]/h^4
    return make_ring({"generators": [("h", 2)], "top_degree": 6,
                      "nilpotency": {"h": 4}, "fundamental": {"h": 3}})


@pytest.fixture
def uv_ring():
    # H*(S^4 x S^6)
    return make_ring({"generators": [("u", 4), ("v", 6)], "top_degree": 10,
                      "nilpotency": {"u": 2, "v": 2}, "fundamental": {"u": 1, "v": 1}})


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA

    seen = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when == "call" or outcome == "error":
                name = rep.nodeid.rsplit("::", 1)[-1]
                if name in CRITERIA:
                    seen[name] = "PASS" if outcome == "passed" else "FAIL"
    if not seen:
        return
    terminalreporter.section("acceptance criteria")
    for name, what in CRITERIA.items():
        if name in seen:
            terminalreporter.write_line(f"{seen[name]}  {name[15:17]}  {what}")
