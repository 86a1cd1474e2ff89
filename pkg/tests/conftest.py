import pytest
from hypothesis import settings

from hexcontext import atlas, hexagon

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def classical():
    return hexagon.enumerate_classical_hexagons()


@pytest.fixture(scope="session")
def labelled():
    return atlas.labelled_classical_hexagon()


@pytest.fixture(scope="session")
def skew_a(labelled):
    """Skew sibling of the labelled copy whose axis is YYZ-IXY-YZX."""
    return hexagon.classical_to_skew(labelled, atlas.line_of("YYZ-IXY-YZX"))


@pytest.fixture(scope="session")
def skew_model():
    return hexagon.build_skew_hexagon()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, summary_lines

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in summary_lines():
            terminalreporter.write_line(line)
