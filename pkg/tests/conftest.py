import os

import pytest

from hyperwalk.cli_io import parse_params, parse_pattern, parse_schedule

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "src", "hyperwalk", "fixtures")


def fixture_path(name):
    return os.path.abspath(os.path.join(FIXTURES, name))


@pytest.fixture(scope="session")
def k4():
    return parse_pattern(fixture_path("k4.json"))


@pytest.fixture(scope="session")
def triple_pattern():
    return parse_pattern(fixture_path("triple.json"))


@pytest.fixture(scope="session")
def h7():
    return parse_pattern(fixture_path("h7_assoc.json"))


@pytest.fixture(scope="session")
def k4_schedule():
    return parse_schedule(fixture_path("k4_schedule.json"))


@pytest.fixture(scope="session")
def k4_params(k4):
    return parse_params(fixture_path("k4_params.json"), k4)


@pytest.fixture(scope="session")
def h7_schedule():
    return parse_schedule(fixture_path("h7_schedule.json"))


@pytest.fixture(scope="session")
def h7_params(h7):
    return parse_params(fixture_path("h7_params.json"), h7)


@pytest.fixture(scope="session")
def h7_alt_schedule():
    return parse_schedule(fixture_path("h7_alt_schedule.json"))
