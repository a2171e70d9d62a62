from __future__ import annotations

import pytest

# criterion id -> [title, all_passed, details]
_ACCEPTANCE: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(cid, title): acceptance criterion check")


@pytest.fixture
def ac_detail(request):
    """Free-form notes shown next to the criterion in the terminal summary."""
    notes = []
    request.node._ac_notes = notes
    return notes


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        cid, title = marker.args
        entry = _ACCEPTANCE.setdefault(cid, [title, True, []])
        entry[1] = entry[1] and rep.passed
        notes = getattr(item, "_ac_notes", [])
        if not rep.passed:
            notes = notes + [f"{item.name} failed"]
        entry[2].extend(notes)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance criteria")
    for cid in sorted(_ACCEPTANCE, key=lambda k: int(k[2:])):
        title, ok, notes = _ACCEPTANCE[cid]
        tr.write_line(f"{cid:<5} {'PASS' if ok else 'FAIL'}  {title}")
        for note in notes:
            tr.write_line(f"        {note}")
