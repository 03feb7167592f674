import json
from pathlib import Path

import pytest

from toricmodels import Fan, arrangement_from_json, fan_from_json

DATA = Path(__file__).parent / "data"

OCTANT_XI = [(3, 0, -2), (2, 1, -1)]

# maximal cones of the octant resolved by both characters
RESOLVED_OCTANT_CONES = [
    [(1, 0, 0), (0, 1, 0), (1, 0, 1)],
    [(1, 0, 2), (0, 1, 1), (0, 0, 1)],
    [(1, 0, 2), (0, 1, 0), (0, 1, 1)],
    [(2, 0, 3), (0, 1, 0), (1, 0, 2)],
    [(1, 0, 1), (0, 1, 0), (2, 0, 3)],
]

QUADRANT_RAYS = {(1, 0), (0, 1), (-1, 0), (0, -1), (1, -1), (2, -1), (-1, 1), (-2, 1)}


def load(name):
    return json.loads((DATA / name).read_text())


@pytest.fixture
def octant():
    return Fan.from_vectors(3, [[(1, 0, 0), (0, 1, 0), (0, 0, 1)]])


@pytest.fixture
def resolved_octant():
    return fan_from_json(load("resolved_octant_fan.json"))


@pytest.fixture
def octant_arrangement():
    return arrangement_from_json(load("octant_arrangement.json"))


@pytest.fixture
def axes_arrangement():
    return arrangement_from_json(load("axes_arrangement.json"))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        title, ok, elapsed = RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {title}")
