import pytest

from debrief import load_game_definition, parse_event_log, reconstruct_sessions

from fixtures import FIXTURE_A_CSV, FIXTURE_GAME_DOC, STUDY_GAME_DOC


@pytest.fixture(scope="session")
def fixture_game():
    return load_game_definition(FIXTURE_GAME_DOC)


@pytest.fixture(scope="session")
def study_game():
    return load_game_definition(STUDY_GAME_DOC)


@pytest.fixture
def fixture_a_log(fixture_game):
    return parse_event_log(FIXTURE_A_CSV, fixture_game, mode="strict")


@pytest.fixture
def fixture_a_sessions(fixture_a_log, fixture_game):
    return reconstruct_sessions(fixture_a_log, fixture_game)
