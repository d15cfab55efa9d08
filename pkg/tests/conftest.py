import pytest

TITLES = {
    1: "algebra dimensions",
    2: "associativity oracle",
    3: "Hopf axioms",
    4: "integrals and symmetry",
    5: "commutation tables",
    6: "block decomposition",
    7: "simple census",
    8: "tensor socles",
    9: "projective covers",
    10: "b^m a b^(p-1) reduction and b1^p = 0",
    11: "radical layers",
    12: "Ext dimensions",
    13: "wildness verdicts",
    14: "lambda normalisation",
    15: "two-parameter families",
}

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        ok = rep.passed
        _results[n] = _results.get(n, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(TITLES):
        if n not in _results:
            continue
        status = "PASS" if _results[n] else "FAIL"
        tr.write_line(f"criterion {n:2d} {status}  {TITLES[n]}")
    passed = sum(_results.values())
    tr.write_line(f"{passed}/{len(_results)} criteria pass")
