import pytest
from hypothesis import settings

from lrcexp.galois import make_field

settings.register_profile("fixed", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("fixed")

# every field of order <= 16, with prime-power orders built as extensions
SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (2, 2), (2, 3), (2, 4), (3, 2)]


@pytest.fixture(params=SMALL_FIELDS, ids=lambda pk: f"F{pk[0] ** pk[1]}")
def small_field(request):
    p, k = request.param
    return make_field(p, k)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", []))
            if rep.when == "call" and "criterion" in props:
                lines.append((props["criterion"], outcome, rep.duration, props.get("notes", [])))
    if lines:
        terminalreporter.section("acceptance criteria")
        for num, outcome, secs, notes in sorted(lines, key=lambda x: x[0]):
            terminalreporter.write_line(f"criterion {num}: {'PASS' if outcome == 'passed' else 'FAIL'} ({secs:.2f}s)")
            for note in notes:
                terminalreporter.write_line(f"    {note}")
