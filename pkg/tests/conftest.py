import pytest
from hypothesis import HealthCheck, settings

from hopfdeform.scalars import set_cyclotomic_order

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def field():
    """Factory activating Q(zeta_E) for the duration of a test."""
    def activate(E):
        return set_cyclotomic_order(E)
    return activate


CRITERIA: dict = {}


def record_criterion(number: int, title: str, passed: bool, seconds: float, limit: float) -> None:
    CRITERIA[number] = (title, passed and seconds < limit, seconds, limit)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(CRITERIA):
        title, passed, seconds, limit = CRITERIA[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:2d}. {title} ({seconds:.1f}s, limit {limit:.0f}s)")
