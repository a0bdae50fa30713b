from dataclasses import replace
from datetime import datetime

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from debrief import (
    EventLog,
    LevelStatus,
    build_scoreline,
    generate_synthetic_log,
    load_game_definition,
    parse_event_log,
    reconstruct_sessions,
    repair_log,
    serialize_event_log,
)

from fixtures import FIXTURE_A_CSV, STUDY_GAME_DOC
from oracle import oracle_sessions

STUDY = load_game_definition(STUDY_GAME_DOC)


def _sessions(text, definition):
    return reconstruct_sessions(
        parse_event_log(text, definition, mode="strict"), definition
    )


# -- the hand-checked fixture -------------------------------------------------


def test_fixture_sessions_keyed_by_first_appearance(fixture_a_sessions):
    assert list(fixture_a_sessions) == [9001, 9002]


def test_fixture_player_9001(fixture_a_sessions):
    s = fixture_a_sessions[9001]
    assert s.final_score == 27
    assert s.total_duration_s == 600
    assert s.finished
    assert s.finished_at == datetime(2018, 8, 24, 10, 10, 0)
    assert [
        (r.level, r.outcome, r.earned, r.duration_s) for r in s.levels
    ] == [
        (1, LevelStatus.COMPLETED, 8, 300),
        (2, LevelStatus.COMPLETED, 19, 300),
    ]
    assert s.level(1).hints_taken == (1,)
    assert s.level(1).penalty_total == 2
    assert s.level(2).wrong_flag_count == 1
    assert s.level(2).penalty_total == 1
    assert not s.level(2).solution_displayed
    assert s.anomalies == ()


def test_fixture_player_9001_scoreline(fixture_a_sessions):
    points = fixture_a_sessions[9001].score_points
    assert [(p.elapsed_s, p.score, p.mark) for p in points] == [
        (0, 10, "GameStarted"),
        (180, 8, "HintTaken"),
        (300, 28, "LevelStarted"),
        (360, 27, "WrongFlag"),
        (600, 27, "GameEnded"),
    ]
    hint = points[1]
    assert hint.hint_number == 1
    assert hint.penalty == 2
    assert points[3].penalty == 1


def test_fixture_player_9002(fixture_a_sessions):
    s = fixture_a_sessions[9002]
    assert s.final_score == 10
    assert s.total_duration_s == 720
    assert s.finished
    # Solution display zeroes the level but does not end it.
    assert s.level(2).outcome is LevelStatus.COMPLETED
    assert s.level(2).solution_displayed
    assert s.level(2).earned == 0
    assert [(p.elapsed_s, p.score, p.mark) for p in s.score_points] == [
        (0, 10, "GameStarted"),
        (240, 30, "LevelStarted"),
        (420, 10, "SolutionDisplayed"),
        (720, 10, "GameEnded"),
    ]


def test_build_scoreline_wraps_session_points(fixture_a_sessions, fixture_game):
    line = build_scoreline(fixture_a_sessions[9001], fixture_game)
    assert line.player_id == 9001
    assert line.points == fixture_a_sessions[9001].score_points


# -- scoring rules on crafted streams -----------------------------------------


def test_game_start_alone_yields_one_provisional_point(fixture_game):
    sessions = _sessions("9,2018-08-24 10:00:00,00:00:00,1,Game started\n", fixture_game)
    s = sessions[9]
    assert not s.finished
    assert s.final_score == 0
    assert [(p.elapsed_s, p.score, p.mark) for p in s.score_points] == [
        (0, 10, "GameStarted")
    ]
    assert [(r.level, r.outcome) for r in s.levels] == [(1, LevelStatus.UNFINISHED)]
    assert s.levels[0].exited_at is None


def test_wrong_flags_floor_at_zero(fixture_game):
    lines = ["9,2018-08-24 10:00:00,00:00:00,1,Game started"]
    for i in range(12):  # 12 wrong flags against 10 points
        lines.append(f"9,2018-08-24 10:0{i % 9 + 1}:00,00:0{i % 9 + 1}:00,1,Wrong flag submitted")
    text = "\n".join(lines) + "\n"
    log = parse_event_log(text, fixture_game, mode="strict")
    s = reconstruct_sessions(log, fixture_game)[9]
    record = s.level(1)
    assert record.wrong_flag_count == 12
    assert record.penalty_total == 12
    scores = [p.score for p in s.score_points]
    assert min(scores) == 0
    assert scores[-1] == 0  # stays clamped, still emits points
    assert all(b <= a for a, b in zip(scores, scores[1:]))


def test_repeat_hint_costs_once(fixture_game):
    text = (
        "9,2018-08-24 10:00:00,00:00:00,1,Game started\n"
        "9,2018-08-24 10:01:00,00:01:00,1,Hint 1 taken\n"
        "9,2018-08-24 10:02:00,00:02:00,1,Hint 1 taken\n"
        "9,2018-08-24 10:05:00,00:05:00,1,Correct flag submitted\n"
    )
    s = _sessions(text, fixture_game)[9]
    assert s.level(1).hints_taken == (1,)
    assert s.level(1).earned == 8
    points = [(p.score, p.penalty) for p in s.score_points if p.mark == "HintTaken"]
    assert points == [(8, 2), (8, 0)]  # second take emits a free point
    assert any("taken again" in a.message for a in s.anomalies)


def test_skip_ends_level_with_zero(fixture_game):
    text = (
        "9,2018-08-24 10:00:00,00:00:00,1,Game started\n"
        "9,2018-08-24 10:02:00,00:02:00,1,Level skipped\n"
        "9,2018-08-24 10:02:00,00:00:00,2,Level started\n"
        "9,2018-08-24 10:08:00,00:06:00,2,Correct flag submitted\n"
        "9,2018-08-24 10:08:00,00:06:00,2,Game ended\n"
    )
    s = _sessions(text, fixture_game)[9]
    assert s.level(1).outcome is LevelStatus.SKIPPED
    assert s.level(1).earned == 0
    assert s.final_score == 20
    assert [(p.elapsed_s, p.score, p.mark) for p in s.score_points] == [
        (0, 10, "GameStarted"),
        (120, 0, "LevelSkipped"),
        (120, 20, "LevelStarted"),
        (480, 20, "GameEnded"),
    ]


def test_skipping_the_final_level_finishes_the_session(fixture_game):
    text = (
        "9,2018-08-24 10:00:00,00:00:00,1,Game started\n"
        "9,2018-08-24 10:03:00,00:03:00,1,Correct flag submitted\n"
        "9,2018-08-24 10:03:00,00:00:00,2,Level started\n"
        "9,2018-08-24 10:04:00,00:01:00,2,Level skipped\n"
    )
    s = _sessions(text, fixture_game)[9]
    assert s.finished
    assert s.finished_at == datetime(2018, 8, 24, 10, 4, 0)
    assert s.final_score == 10
    assert s.total_duration_s == 240
    # A synthesized end point closes the polyline at the settled score.
    assert [(p.elapsed_s, p.score, p.mark) for p in s.score_points[-2:]] == [
        (240, 10, "LevelSkipped"),
        (240, 10, "GameEnded"),
    ]


def test_final_flag_without_game_end_finishes_the_session(fixture_game):
    text = (
        "9,2018-08-24 10:00:00,00:00:00,1,Game started\n"
        "9,2018-08-24 10:03:00,00:03:00,1,Correct flag submitted\n"
        "9,2018-08-24 10:03:00,00:00:00,2,Level started\n"
        "9,2018-08-24 10:09:00,00:06:00,2,Correct flag submitted\n"
    )
    s = _sessions(text, fixture_game)[9]
    assert s.finished
    assert s.final_score == 30
    assert s.total_duration_s == 540
    assert s.score_points[-1].mark == "GameEnded"
    assert s.score_points[-1].score == 30


def test_stopping_mid_level_leaves_session_unfinished(fixture_game):
    text = (
        "9,2018-08-24 10:00:00,00:00:00,1,Game started\n"
        "9,2018-08-24 10:03:00,00:03:00,1,Correct flag submitted\n"
        "9,2018-08-24 10:03:00,00:00:00,2,Level started\n"
        "9,2018-08-24 10:06:00,00:03:00,2,Hint 1 taken\n"
    )
    s = _sessions(text, fixture_game)[9]
    assert not s.finished
    assert s.finished_at is None
    assert s.final_score == 10  # only the settled level counts
    assert s.total_duration_s == 360  # up to the last event seen
    record = s.level(2)
    assert record.outcome is LevelStatus.UNFINISHED
    assert record.exited_at is None
    assert record.duration_s == 180
    assert record.hints_taken == (1,)
    # The polyline keeps showing the provisional credit (10 + 20 - 4).
    assert s.score_points[-1].score == 26
    assert s.score_points[-1].mark == "HintTaken"


def test_game_end_closes_open_level_as_unfinished(fixture_game):
    text = (
        "9,2018-08-24 10:00:00,00:00:00,1,Game started\n"
        "9,2018-08-24 10:05:00,00:05:00,1,Game ended\n"
    )
    s = _sessions(text, fixture_game)[9]
    assert s.finished
    assert s.final_score == 0
    assert s.level(1).outcome is LevelStatus.UNFINISHED
    assert s.level(1).exited_at == datetime(2018, 8, 24, 10, 5, 0)
    assert [(p.elapsed_s, p.score, p.mark) for p in s.score_points] == [
        (0, 10, "GameStarted"),
        (300, 0, "GameEnded"),
    ]


def test_events_after_game_end_are_ignored(fixture_game):
    text = (
        "9,2018-08-24 10:00:00,00:00:00,1,Game started\n"
        "9,2018-08-24 10:01:00,00:01:00,1,Correct flag submitted\n"
        "9,2018-08-24 10:01:00,00:00:00,2,Level started\n"
        "9,2018-08-24 10:02:00,00:01:00,2,Correct flag submitted\n"
        "9,2018-08-24 10:02:00,00:01:00,2,Game ended\n"
        "9,2018-08-24 10:09:00,00:01:00,2,Wrong flag submitted\n"
    )
    s = _sessions(text, fixture_game)[9]
    assert s.final_score == 30
    assert s.level(2).wrong_flag_count == 0
    assert any("after game end" in a.message for a in s.anomalies)
    assert s.score_points[-1].mark == "GameEnded"


def test_duplicate_game_start_is_ignored(fixture_game):
    text = (
        "9,2018-08-24 10:00:00,00:00:00,1,Game started\n"
        "9,2018-08-24 10:01:00,00:00:00,1,Game started\n"
        "9,2018-08-24 10:02:00,00:02:00,1,Correct flag submitted\n"
    )
    s = _sessions(text, fixture_game)[9]
    assert s.started_at == datetime(2018, 8, 24, 10, 0, 0)
    assert s.level(1).earned == 10
    assert sum(p.mark == "GameStarted" for p in s.score_points) == 1
    assert any("duplicate game-start" in a.message for a in s.anomalies)


def test_in_level_event_for_another_level_is_ignored(fixture_game):
    text = (
        "9,2018-08-24 10:00:00,00:00:00,1,Game started\n"
        "9,2018-08-24 10:01:00,00:01:00,2,Wrong flag submitted\n"
        "9,2018-08-24 10:02:00,00:02:00,1,Correct flag submitted\n"
    )
    s = _sessions(text, fixture_game)[9]
    assert s.level(1).earned == 10
    assert s.level(1).wrong_flag_count == 0
    assert any("tagged level 2" in a.message for a in s.anomalies)


def test_explicit_level_one_start_refines_entry_time(fixture_game):
    # Game start and the level-1 start may be seconds apart; the later line
    # wins as long as nothing happened in between.
    text = (
        "9,2018-08-24 10:00:00,00:00:00,1,Game started\n"
        "9,2018-08-24 10:00:05,00:00:00,1,Level started\n"
        "9,2018-08-24 10:01:05,00:01:00,1,Correct flag submitted\n"
    )
    s = _sessions(text, fixture_game)[9]
    assert s.level(1).entered_at == datetime(2018, 8, 24, 10, 0, 5)
    assert s.level(1).duration_s == 60


def test_session_without_game_start_is_flagged(fixture_game):
    text = (
        "9,2018-08-24 10:00:00,00:00:00,1,Level started\n"
        "9,2018-08-24 10:01:00,00:01:00,1,Correct flag submitted\n"
    )
    s = _sessions(text, fixture_game)[9]
    assert s.started_at == datetime(2018, 8, 24, 10, 0, 0)
    assert s.level(1).earned == 10
    assert any("does not begin with a game-start" in a.message for a in s.anomalies)


# -- wall clock is the only clock ---------------------------------------------


@settings(deadline=None, max_examples=20)
@given(
    st.integers(min_value=0, max_value=10_000),
    st.integers(min_value=0, max_value=359999),
)
def test_in_level_clock_never_affects_results(seed, fake_elapsed):
    """Corrupting every in-level clock changes no duration and no score."""
    log = generate_synthetic_log(STUDY, players=4, seed=seed)
    corrupted = EventLog(
        tuple(replace(e, logical_time=fake_elapsed) for e in log.events),
        log.diagnostics,
    )
    original = reconstruct_sessions(log, STUDY)
    twisted = reconstruct_sessions(corrupted, STUDY)
    for pid, s in original.items():
        t = twisted[pid]
        assert t.final_score == s.final_score
        assert t.total_duration_s == s.total_duration_s
        assert t.score_points == s.score_points
        assert [(r.level, r.outcome, r.earned, r.duration_s) for r in t.levels] == [
            (r.level, r.outcome, r.earned, r.duration_s) for r in s.levels
        ]


# -- agreement with the brute-force oracle ------------------------------------


@pytest.mark.parametrize("seed", range(10))
def test_reconstruction_matches_oracle(seed):
    log = generate_synthetic_log(STUDY, players=6, seed=seed)
    sessions = reconstruct_sessions(log, STUDY)
    expected = oracle_sessions(log.events, STUDY)
    assert sessions.keys() == expected.keys()
    for pid, want in expected.items():
        got = sessions[pid]
        assert got.final_score == want.final_score
        assert {r.level: r.earned for r in got.levels} == want.earned
        assert [(p.elapsed_s, p.score, p.mark) for p in got.score_points] == want.points


@pytest.mark.parametrize("seed", range(5))
def test_scoreline_shape_invariants(seed):
    log = generate_synthetic_log(STUDY, players=8, seed=seed)
    for s in reconstruct_sessions(log, STUDY).values():
        points = s.score_points
        assert points[0].elapsed_s == 0
        assert points[0].score == STUDY.level(1).max_points
        assert points[0].mark == "GameStarted"
        # Time never goes backwards; score only rises on level entry.
        for a, b in zip(points, points[1:]):
            assert b.elapsed_s >= a.elapsed_s
            if b.mark != "LevelStarted":
                assert b.score <= a.score
        assert s.finished
        assert points[-1].mark == "GameEnded"
        assert points[-1].score == s.final_score
        assert points[-1].elapsed_s == s.total_duration_s


# -- log repair ----------------------------------------------------------------


def test_repair_leaves_complete_logs_alone(fixture_game, fixture_a_log):
    repaired, diagnostics = repair_log(fixture_a_log, fixture_game)
    assert diagnostics == []
    assert repaired is fixture_a_log


# FIXTURE-A line numbers (1-based) of every structural event.
_STRUCTURAL_LINES = [1, 2, 3, 4, 7, 9, 13, 15]


@pytest.mark.parametrize("line_no", _STRUCTURAL_LINES)
def test_repair_restores_single_structural_deletions_byte_exactly(
    fixture_game, line_no
):
    lines = FIXTURE_A_CSV.splitlines()
    removed = lines.pop(line_no - 1)
    mutated = "\n".join(lines) + "\n"
    log = parse_event_log(mutated, fixture_game, mode="strict")
    repaired, diagnostics = repair_log(log, fixture_game)
    assert serialize_event_log(repaired) == FIXTURE_A_CSV
    assert len(diagnostics) == 1
    assert diagnostics[0].severity == "warning"
    assert removed.split(",")[1] in diagnostics[0].message  # timestamp named


def test_repair_synthesizes_level_start_at_previous_terminal(fixture_game):
    # Level 2 was played but its start line is gone; the start is
    # inferable at level 1's terminal.
    text = (
        "9,2018-08-24 10:00:00,00:00:00,1,Game started\n"
        "9,2018-08-24 10:00:00,00:00:00,1,Level started\n"
        "9,2018-08-24 10:05:00,00:05:00,1,Correct flag submitted\n"
        "9,2018-08-24 10:07:00,00:02:00,2,Wrong flag submitted\n"
        "9,2018-08-24 10:09:00,00:04:00,2,Correct flag submitted\n"
        "9,2018-08-24 10:09:00,00:04:00,2,Game ended\n"
    )
    log = parse_event_log(text, fixture_game, mode="strict")
    repaired, diagnostics = repair_log(log, fixture_game)
    inserted = [
        e
        for e in repaired.events
        if e.level == 2 and e.kind.name == "LEVEL_STARTED"
    ]
    assert len(inserted) == 1
    assert inserted[0].timestamp == datetime(2018, 8, 24, 10, 5, 0)
    assert inserted[0].logical_time == 0
    assert [d.message for d in diagnostics] == [
        "player 9: synthesized 'Level started (level 2)' at 2018-08-24 10:05:00"
    ]
    # The repaired session now has a clean level-2 record.
    s = reconstruct_sessions(repaired, fixture_game)[9]
    assert s.level(2).entered_at == datetime(2018, 8, 24, 10, 5, 0)
    assert s.level(2).duration_s == 240
    assert s.final_score == 10 + 19


def test_repair_does_not_invent_an_end_mid_level():
    # Events stop inside level 3 of 4: nothing after that point is
    # inferable, so no end-of-game line may appear.
    text = (
        "9,2018-08-24 10:00:00,00:00:00,1,Game started\n"
        "9,2018-08-24 10:00:00,00:00:00,1,Level started\n"
        "9,2018-08-24 10:05:00,00:05:00,1,Correct flag submitted\n"
        "9,2018-08-24 10:05:00,00:00:00,2,Level started\n"
        "9,2018-08-24 10:15:00,00:10:00,2,Correct flag submitted\n"
        "9,2018-08-24 10:15:00,00:00:00,3,Level started\n"
        "9,2018-08-24 10:20:00,00:05:00,3,Hint 1 taken\n"
    )
    log = parse_event_log(text, STUDY, mode="strict")
    repaired, diagnostics = repair_log(log, STUDY)
    assert diagnostics == []
    assert serialize_event_log(repaired) == text
    s = reconstruct_sessions(repaired, STUDY)[9]
    assert not s.finished
    assert s.level(3).outcome is LevelStatus.UNFINISHED


def test_repair_adds_end_when_final_level_terminated():
    text = (
        "9,2018-08-24 10:00:00,00:00:00,1,Game started\n"
        "9,2018-08-24 10:00:00,00:00:00,1,Level started\n"
        "9,2018-08-24 10:05:00,00:05:00,1,Level skipped\n"
        "9,2018-08-24 10:05:00,00:00:00,2,Level started\n"
        "9,2018-08-24 10:15:00,00:10:00,2,Level skipped\n"
        "9,2018-08-24 10:15:00,00:00:00,3,Level started\n"
        "9,2018-08-24 10:20:00,00:05:00,3,Level skipped\n"
        "9,2018-08-24 10:20:00,00:00:00,4,Level started\n"
        "9,2018-08-24 10:30:00,00:10:00,4,Correct flag submitted\n"
    )
    log = parse_event_log(text, STUDY, mode="strict")
    repaired, diagnostics = repair_log(log, STUDY)
    assert serialize_event_log(repaired) == (
        text + "9,2018-08-24 10:30:00,00:10:00,4,Game ended\n"
    )
    assert [d.message for d in diagnostics] == [
        "player 9: synthesized 'Game ended' at 2018-08-24 10:30:00"
    ]


def test_repair_is_idempotent_and_monotone(fixture_game):
    lines = FIXTURE_A_CSV.splitlines()
    del lines[8]  # drop 9001's level-2 start
    del lines[0]  # drop 9001's game start
    mutated = "\n".join(lines) + "\n"
    log = parse_event_log(mutated, fixture_game, mode="strict")
    once, diags = repair_log(log, fixture_game)
    twice, again = repair_log(once, fixture_game)
    assert len(diags) == 2
    assert again == []
    assert serialize_event_log(twice) == serialize_event_log(once)
    # Every surviving original event is still there, in order.
    it = iter(once.events)
    assert all(any(e == have for have in it) for e in log.events)
