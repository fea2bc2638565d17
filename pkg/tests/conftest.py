import pytest

from pathtrack.config import bundled_path
from pathtrack.planner import read_waypoints
from pathtrack.vehicle import NoiseSpec, VehicleParams

QUIET = NoiseSpec(0.0, 0.0, 0.0, seed=0)
IDEAL = VehicleParams(v_filter_tau=0.0, phi_filter_tau=0.0)


@pytest.fixture(scope="session")
def course_waypoints():
    return read_waypoints(bundled_path("paper_like"))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
