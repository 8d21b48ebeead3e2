"""Aggregate tests carrying a ``criterion`` marker into one PASS/FAIL line each."""

from __future__ import annotations

import pytest

CRITERIA = {
    "AC1": "Betti golden values",
    "AC2": "symplectic Lefschetz failure witnesses",
    "AC3": "cosymplectic closedness counterexample",
    "AC4": "algebraic 1-Lefschetz verdicts and Reeb vectors",
    "AC5": "Massey obstructions against the brute-force oracle",
    "AC6": "blow-up arithmetic",
    "AC7": "mapping torus pipeline",
    "AC8": "fuzzed property suites",
    "AC9": "verdict tables and corpus runtime",
}

_outcomes: dict[str, list[tuple[str, bool]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes.setdefault(marker.args[0], []).append((item.nodeid, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for cid, title in CRITERIA.items():
        results = _outcomes.get(cid)
        if not results:
            terminalreporter.write_line(f"NOT RUN {cid} {title}")
            continue
        ok = all(passed for _, passed in results)
        failed = [node for node, passed in results if not passed]
        line = f"{'PASS' if ok else 'FAIL'} {cid} {title} ({len(results)} checks)"
        if failed:
            line += " failing: " + ", ".join(n.split("::")[-1] for n in failed)
        terminalreporter.write_line(line)
