"""Comparative and overview statistics over reconstructed sessions.

These back the questions a trainee asks after a game: where did I lose
points, how long did each level take me, who was closest to my score, who
was objectively efficient. Everything here is a pure function of the
session map, so results are independent of session ordering and safe to
evaluate concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime

from .errors import UnknownPlayerError
from .game import GameDefinition
from .sessions import LevelStatus, PlayerSession


@dataclass(frozen=True)
class LevelStats:
    level: int
    max_duration_s: int  # the slowest player
    mean_duration_s: float
    score_min: int
    score_max: int
    dots: tuple[tuple[int, int, int], ...]  # (player_id, duration_s, earned)


@dataclass(frozen=True)
class GameStats:
    max_duration_s: int
    mean_duration_s: float
    score_min: int
    score_max: int
    player_count: int
    finished_count: int
    dots: tuple[tuple[int, int, int, bool], ...]  # (player_id, duration_s, final, finished)


@dataclass(frozen=True)
class Standing:
    player_id: int
    rank: int  # 1-based; equal (score, duration) pairs share a rank
    final_score: int
    total_duration_s: int
    finished: bool


@dataclass(frozen=True)
class RelativeStanding:
    score_percentile: float  # fraction of other players strictly worse
    time_percentile: float
    score_band: int  # quintile 1..5, 5 = best
    time_band: int  # quintile 1..5, 5 = fastest


@dataclass(frozen=True)
class LevelFeedback:
    level: int
    outcome: str
    duration_s: int | None  # None when the level was never entered
    earned: int
    lost: int
    max_points: int
    hints_taken: tuple[int, ...]
    wrong_flag_count: int
    solution_displayed: bool


@dataclass(frozen=True)
class Transition:
    from_level: int
    to_level: int
    at: datetime
    elapsed_s: int


@dataclass(frozen=True)
class PersonalFeedback:
    player_id: int
    finished: bool
    finished_at: datetime | None
    final_score: int
    total_duration_s: int
    levels: tuple[LevelFeedback, ...]
    lowest_score_levels: tuple[int, ...]
    most_lost_levels: tuple[int, ...]
    transitions: tuple[Transition, ...]
    top_better: tuple[int, ...]  # up to 3 players above, nearest first
    top_worse: tuple[int, ...]  # up to 3 players below, nearest first


def _require_player(sessions: dict[int, PlayerSession], player_id: int) -> PlayerSession:
    try:
        return sessions[player_id]
    except KeyError:
        raise UnknownPlayerError(player_id) from None


def _require_sessions(sessions: dict[int, PlayerSession]):
    if not sessions:
        raise ValueError("no sessions")


def level_statistics(
    sessions: dict[int, PlayerSession], definition: GameDefinition
) -> list[LevelStats]:
    """Per-level aggregates; levels nobody entered are omitted."""
    _require_sessions(sessions)
    out: list[LevelStats] = []
    for lvl in definition.levels:
        dots = sorted(
            (pid, record.duration_s, record.earned)
            for pid, session in sessions.items()
            if (record := session.level(lvl.order)) is not None
        )
        if not dots:
            continue
        durations = [d for _, d, _ in dots]
        scores = [s for _, _, s in dots]
        out.append(
            LevelStats(
                level=lvl.order,
                max_duration_s=max(durations),
                mean_duration_s=sum(durations) / len(durations),
                score_min=min(scores),
                score_max=max(scores),
                dots=tuple(dots),
            )
        )
    return out


def game_statistics(sessions: dict[int, PlayerSession]) -> GameStats:
    """Whole-game aggregates: total time and final score per player."""
    _require_sessions(sessions)
    dots = sorted(
        (s.player_id, s.total_duration_s, s.final_score, s.finished)
        for s in sessions.values()
    )
    durations = [d for _, d, _, _ in dots]
    scores = [s for _, _, s, _ in dots]
    return GameStats(
        max_duration_s=max(durations),
        mean_duration_s=sum(durations) / len(durations),
        score_min=min(scores),
        score_max=max(scores),
        player_count=len(dots),
        finished_count=sum(1 for _, _, _, f in dots if f),
        dots=tuple(dots),
    )


def scoreboard(sessions: dict[int, PlayerSession]) -> list[Standing]:
    """Competition ranking: score desc, then time asc; ties share a rank."""
    _require_sessions(sessions)
    ordered = sorted(
        sessions.values(),
        key=lambda s: (-s.final_score, s.total_duration_s, s.player_id),
    )
    out: list[Standing] = []
    for position, session in enumerate(ordered, start=1):
        key = (session.final_score, session.total_duration_s)
        if out and key == (out[-1].final_score, out[-1].total_duration_s):
            rank = out[-1].rank
        else:
            rank = position
        out.append(
            Standing(
                player_id=session.player_id,
                rank=rank,
                final_score=session.final_score,
                total_duration_s=session.total_duration_s,
                finished=session.finished,
            )
        )
    return out


def nearest_by_score(
    sessions: dict[int, PlayerSession], player_id: int, k: int
) -> list[tuple[int, int]]:
    """The k other players with the closest final score, as (id, gap).

    Gap ties at the cutoff are all included, so the result may be longer
    than k. Ordered by gap, then total duration, then player id.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    own = _require_player(sessions, player_id)
    others = sorted(
        (
            (abs(s.final_score - own.final_score), s.total_duration_s, s.player_id)
            for s in sessions.values()
            if s.player_id != player_id
        ),
    )
    if not others:
        return []
    cutoff = others[min(k, len(others)) - 1][0]
    return [(pid, gap) for gap, _, pid in others if gap <= cutoff]


def relative_standing(
    sessions: dict[int, PlayerSession], player_id: int
) -> RelativeStanding:
    """Percentile of strictly-worse players, plus quintile bands 1..5."""
    own = _require_player(sessions, player_id)
    others = [s for s in sessions.values() if s.player_id != player_id]
    if not others:
        raise ValueError("relative standing needs at least 2 players")
    worse_score = sum(1 for s in others if s.final_score < own.final_score)
    worse_time = sum(1 for s in others if s.total_duration_s > own.total_duration_s)
    score_pct = worse_score / len(others)
    time_pct = worse_time / len(others)
    return RelativeStanding(
        score_percentile=score_pct,
        time_percentile=time_pct,
        score_band=_band(score_pct),
        time_band=_band(time_pct),
    )


def _band(percentile: float) -> int:
    return 1 + sum(percentile >= t for t in (0.2, 0.4, 0.6, 0.8))


def pareto_front(sessions: dict[int, PlayerSession]) -> set[int]:
    """Players not dominated in (higher score, lower total time).

    A dominates B iff score_A >= score_B and duration_A <= duration_B with
    at least one strict. Single sweep over durations: a player survives iff
    they strictly out-score everyone strictly faster, and nobody with the
    same duration out-scores them.
    """
    _require_sessions(sessions)
    by_duration: dict[int, list[PlayerSession]] = {}
    for session in sessions.values():
        by_duration.setdefault(session.total_duration_s, []).append(session)

    front: set[int] = set()
    best_faster = None  # best score among strictly smaller durations
    for duration in sorted(by_duration):
        group = by_duration[duration]
        group_best = max(s.final_score for s in group)
        if best_faster is None or group_best > best_faster:
            front.update(
                s.player_id for s in group if s.final_score == group_best
            )
        best_faster = group_best if best_faster is None else max(best_faster, group_best)
    return front


def dispersion_neighbors(
    sessions: dict[int, PlayerSession],
    definition: GameDefinition,
    player_id: int,
    scope: int | str,
    fractions: list[float],
) -> list[set[int]]:
    """Nested neighbor bands around one player's (time, score) point.

    ``scope`` is a level index or "overall". For each fraction f the band
    holds every other player within f of the scope's full ranges on both
    axes: the time range is the slowest player's duration, the score range
    is the scope's maximum points. Bands are cumulative, so increasing
    fractions always produce supersets.
    """
    if not fractions:
        raise ValueError("fractions must be non-empty")
    if any(not 0 < f <= 1 for f in fractions):
        raise ValueError(f"fractions must lie in (0, 1], got {fractions}")
    if any(b <= a for a, b in zip(fractions, fractions[1:])):
        raise ValueError(f"fractions must be strictly increasing, got {fractions}")
    own = _require_player(sessions, player_id)

    if scope == "overall":
        own_point = (own.total_duration_s, own.final_score)
        points = {
            s.player_id: (s.total_duration_s, s.final_score)
            for s in sessions.values()
        }
        score_span = definition.total_max
    else:
        if not isinstance(scope, int) or not 1 <= scope <= definition.level_count:
            raise ValueError(f"unknown scope {scope!r}")
        own_record = own.level(scope)
        if own_record is None:
            raise ValueError(f"player {player_id} never entered level {scope}")
        own_point = (own_record.duration_s, own_record.earned)
        points = {
            pid: (record.duration_s, record.earned)
            for pid, s in sessions.items()
            if (record := s.level(scope)) is not None
        }
        score_span = definition.level(scope).max_points

    duration_span = max(d for d, _ in points.values())
    bands: list[set[int]] = []
    for fraction in fractions:
        max_dt = fraction * duration_span
        max_ds = fraction * score_span
        bands.append(
            {
                pid
                for pid, (d, s) in points.items()
                if pid != player_id
                and abs(d - own_point[0]) <= max_dt
                and abs(s - own_point[1]) <= max_ds
            }
        )
    return bands


def personal_summary(
    sessions: dict[int, PlayerSession],
    definition: GameDefinition,
    player_id: int,
) -> PersonalFeedback:
    """Everything one trainee needs for a debrief, in one record.

    Levels never entered appear as unfinished with zero earned points, so
    the lost-points view always covers the whole game.
    """
    own = _require_player(sessions, player_id)

    levels: list[LevelFeedback] = []
    for lvl in definition.levels:
        record = own.level(lvl.order)
        if record is None:
            levels.append(
                LevelFeedback(
                    level=lvl.order,
                    outcome=LevelStatus.UNFINISHED.value,
                    duration_s=None,
                    earned=0,
                    lost=lvl.max_points,
                    max_points=lvl.max_points,
                    hints_taken=(),
                    wrong_flag_count=0,
                    solution_displayed=False,
                )
            )
        else:
            levels.append(
                LevelFeedback(
                    level=lvl.order,
                    outcome=record.outcome.value,
                    duration_s=record.duration_s,
                    earned=record.earned,
                    lost=lvl.max_points - record.earned,
                    max_points=lvl.max_points,
                    hints_taken=record.hints_taken,
                    wrong_flag_count=record.wrong_flag_count,
                    solution_displayed=record.solution_displayed,
                )
            )

    min_earned = min(f.earned for f in levels)
    max_lost = max(f.lost for f in levels)
    transitions = [
        Transition(
            from_level=lvl.order - 1,
            to_level=lvl.order,
            at=record.entered_at,
            elapsed_s=int((record.entered_at - own.started_at).total_seconds()),
        )
        for lvl in definition.levels[1:]
        if (record := own.level(lvl.order)) is not None
    ]

    better = sorted(
        (s for s in sessions.values() if s.final_score > own.final_score),
        key=lambda s: (s.final_score, s.total_duration_s, s.player_id),
    )
    worse = sorted(
        (s for s in sessions.values() if s.final_score < own.final_score),
        key=lambda s: (-s.final_score, s.total_duration_s, s.player_id),
    )

    return PersonalFeedback(
        player_id=player_id,
        finished=own.finished,
        finished_at=own.finished_at,
        final_score=own.final_score,
        total_duration_s=own.total_duration_s,
        levels=tuple(levels),
        lowest_score_levels=tuple(f.level for f in levels if f.earned == min_earned),
        most_lost_levels=tuple(f.level for f in levels if f.lost == max_lost),
        transitions=tuple(transitions),
        top_better=tuple(s.player_id for s in better[:3]),
        top_worse=tuple(s.player_id for s in worse[:3]),
    )
