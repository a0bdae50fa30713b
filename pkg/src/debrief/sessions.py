"""Per-player session reconstruction, scorelines, and log repair.

Each player's events replay through a small state machine that tracks the
level currently being played. Scoring follows the provisional-credit rule:

* entering a level credits its full ``max_points`` provisionally;
* each distinct hint taken subtracts that hint's penalty, once;
* each wrong flag subtracts the game-wide ``wrong_flag_penalty``;
* a level's earned points never drop below zero;
* displaying the solution forces the level's points to zero but does not
  end the level (the player still has to submit the flag to move on);
* skipping ends the level immediately with zero points.

The same replay also emits the player's score polyline (one point per
score-relevant event, each tagged with the kind of event that caused it),
so the timeline view and the table scores can never disagree: both come
from one computation.

All durations are computed from wall-clock timestamps only. The in-level
clock field is never used for arithmetic; it only feeds consistency
warnings, because the two clocks are written by different components and
historically drifted by up to a second.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum

from .events import (
    IN_LEVEL_KINDS,
    TERMINAL_KINDS,
    Diagnostic,
    EventKind,
    EventLog,
    GameEvent,
)
from .game import GameDefinition, LevelDefinition

MARK_GAME_STARTED = "GameStarted"
MARK_GAME_ENDED = "GameEnded"
MARK_LEVEL_STARTED = "LevelStarted"
MARK_LEVEL_SKIPPED = "LevelSkipped"
MARK_WRONG_FLAG = "WrongFlag"
MARK_HINT_TAKEN = "HintTaken"
MARK_SOLUTION_DISPLAYED = "SolutionDisplayed"


class LevelStatus(Enum):
    COMPLETED = "completed"
    SKIPPED = "skipped"
    UNFINISHED = "unfinished"


@dataclass(frozen=True)
class ScorePoint:
    elapsed_s: int  # seconds since the player's game start
    score: int  # provisional total score right after the event
    mark: str
    hint_number: int | None = None
    penalty: int | None = None  # points this event actually cost


@dataclass(frozen=True)
class ScoreTimeline:
    player_id: int
    points: tuple[ScorePoint, ...]


@dataclass(frozen=True)
class LevelRecord:
    level: int
    outcome: LevelStatus
    earned: int
    entered_at: datetime
    exited_at: datetime | None
    duration_s: int  # to exited_at, or to the last event when unfinished
    hints_taken: tuple[int, ...]
    wrong_flag_count: int
    solution_displayed: bool
    penalty_total: int


@dataclass(frozen=True)
class PlayerSession:
    player_id: int
    started_at: datetime
    finished_at: datetime | None
    last_seen_at: datetime
    levels: tuple[LevelRecord, ...]
    final_score: int
    total_duration_s: int
    score_points: tuple[ScorePoint, ...] = field(repr=False)
    anomalies: tuple[Diagnostic, ...] = field(repr=False, default=())

    @property
    def finished(self) -> bool:
        return self.finished_at is not None

    def level(self, order: int) -> LevelRecord | None:
        for record in self.levels:
            if record.level == order:
                return record
        return None


def build_scoreline(session: PlayerSession, definition: GameDefinition) -> ScoreTimeline:
    """The piecewise-constant score-over-time polyline of one player."""
    del definition  # the points are fixed at reconstruction time
    return ScoreTimeline(session.player_id, session.score_points)


class _OpenLevel:
    def __init__(self, definition: LevelDefinition, entered_at: datetime):
        self.definition = definition
        self.entered_at = entered_at
        self.hints_taken: list[int] = []
        self.wrong_flags = 0
        self.solution_displayed = False
        self.penalty_total = 0
        self.touched = False  # any in-level event seen yet

    def provisional(self) -> int:
        if self.solution_displayed:
            return 0
        return max(0, self.definition.max_points - self.penalty_total)


class _SessionBuilder:
    def __init__(self, player_id: int, definition: GameDefinition):
        self.player_id = player_id
        self.definition = definition
        self.started_at: datetime | None = None
        self.ended_at: datetime | None = None
        self.last_seen_at: datetime | None = None
        self.open: _OpenLevel | None = None
        self.records: list[LevelRecord] = []
        self.settled = 0
        self.points: list[ScorePoint] = []
        self.anomalies: list[Diagnostic] = []

    # -- helpers ---------------------------------------------------------

    def _warn(self, event: GameEvent, message: str):
        self.anomalies.append(
            Diagnostic("warning", event.line, f"player {self.player_id}: {message}")
        )

    def _elapsed(self, ts: datetime) -> int:
        return int((ts - self.started_at).total_seconds())

    def _score_now(self) -> int:
        score = self.settled
        if self.open is not None:
            score += self.open.provisional()
        return score

    def _point(self, ts: datetime, mark: str, hint_number=None, penalty=None):
        self.points.append(
            ScorePoint(self._elapsed(ts), self._score_now(), mark, hint_number, penalty)
        )

    def _next_order(self) -> int:
        return len(self.records) + (1 if self.open is not None else 0) + 1

    def _close_open(self, ts: datetime, outcome: LevelStatus, earned: int):
        lvl = self.open
        self.records.append(
            LevelRecord(
                level=lvl.definition.order,
                outcome=outcome,
                earned=earned,
                entered_at=lvl.entered_at,
                exited_at=ts,
                duration_s=int((ts - lvl.entered_at).total_seconds()),
                hints_taken=tuple(lvl.hints_taken),
                wrong_flag_count=lvl.wrong_flags,
                solution_displayed=lvl.solution_displayed,
                penalty_total=lvl.penalty_total,
            )
        )
        self.settled += earned
        self.open = None

    def _check_drift(self, event: GameEvent):
        span = int((event.timestamp - self.open.entered_at).total_seconds())
        if abs(span - event.logical_time) > 1:
            self._warn(
                event,
                f"level {self.open.definition.order} clock drift: wall {span}s "
                f"vs in-level {event.logical_time}s",
            )

    # -- event dispatch --------------------------------------------------

    def feed(self, event: GameEvent):
        ts = event.timestamp
        if self.started_at is None:
            self.started_at = ts
            if event.kind is not EventKind.GAME_STARTED:
                self._warn(event, "session does not begin with a game-start event")
        self.last_seen_at = ts

        if self.ended_at is not None:
            self._warn(event, f"event after game end ignored: {event.event_text()}")
            return

        handler = {
            EventKind.GAME_STARTED: self._on_game_started,
            EventKind.GAME_ENDED: self._on_game_ended,
            EventKind.LEVEL_STARTED: self._on_level_started,
            EventKind.LEVEL_SKIPPED: self._on_level_skipped,
            EventKind.CORRECT_FLAG: self._on_correct_flag,
            EventKind.WRONG_FLAG: self._on_wrong_flag,
            EventKind.HINT_TAKEN: self._on_hint_taken,
            EventKind.SOLUTION_DISPLAYED: self._on_solution_displayed,
        }[event.kind]
        handler(event)

    def _on_game_started(self, event: GameEvent):
        if self.open is not None or self.records:
            self._warn(event, "duplicate game-start event ignored")
            return
        # Starting the game puts the player into level 1 right away; an
        # explicit level-start line may still follow and refine entered_at.
        self.open = _OpenLevel(self.definition.level(1), event.timestamp)
        self.points.append(ScorePoint(0, self._score_now(), MARK_GAME_STARTED))

    def _on_level_started(self, event: GameEvent):
        order = event.level
        if self.open is not None:
            lvl = self.open
            if order == lvl.definition.order:
                if lvl.touched:
                    self._warn(event, f"level {order} restarted mid-play, ignored")
                else:
                    lvl.entered_at = event.timestamp
                return
            self._warn(
                event,
                f"level {lvl.definition.order} left without being solved or skipped",
            )
            self._close_open(event.timestamp, LevelStatus.UNFINISHED, 0)
        if any(r.level == order for r in self.records):
            self._warn(event, f"level {order} already played, restart ignored")
            return
        if order != self._next_order():
            self._warn(
                event,
                f"level {order} started out of order (expected {self._next_order()})",
            )
        self.open = _OpenLevel(self.definition.level(order), event.timestamp)
        self._point(event.timestamp, MARK_LEVEL_STARTED)

    def _in_level(self, event: GameEvent) -> bool:
        if self.open is None:
            self._warn(event, f"{event.event_text()} outside any level, ignored")
            return False
        if event.level != self.open.definition.order:
            self._warn(
                event,
                f"{event.event_text()} tagged level {event.level} while level "
                f"{self.open.definition.order} is being played, ignored",
            )
            return False
        self.open.touched = True
        return True

    def _on_hint_taken(self, event: GameEvent):
        if not self._in_level(event):
            return
        lvl = self.open
        number = event.hint_number
        penalty = 0
        if number in lvl.hints_taken:
            self._warn(event, f"hint {number} taken again, no extra penalty")
        else:
            lvl.hints_taken.append(number)
            hint = lvl.definition.hint(number)
            if hint is not None:
                penalty = hint.penalty
                lvl.penalty_total += penalty
        self._point(event.timestamp, MARK_HINT_TAKEN, number, penalty)

    def _on_wrong_flag(self, event: GameEvent):
        if not self._in_level(event):
            return
        self.open.wrong_flags += 1
        self.open.penalty_total += self.definition.wrong_flag_penalty
        self._point(
            event.timestamp, MARK_WRONG_FLAG, penalty=self.definition.wrong_flag_penalty
        )

    def _on_solution_displayed(self, event: GameEvent):
        if not self._in_level(event):
            return
        self.open.solution_displayed = True
        self._point(event.timestamp, MARK_SOLUTION_DISPLAYED)

    def _on_level_skipped(self, event: GameEvent):
        if not self._in_level(event):
            return
        self._check_drift(event)
        self._close_open(event.timestamp, LevelStatus.SKIPPED, 0)
        self._point(event.timestamp, MARK_LEVEL_SKIPPED)

    def _on_correct_flag(self, event: GameEvent):
        if not self._in_level(event):
            return
        self._check_drift(event)
        lvl = self.open
        earned = 0 if lvl.solution_displayed else lvl.provisional()
        self._close_open(event.timestamp, LevelStatus.COMPLETED, earned)
        # No polyline point here: the provisional credit already counted
        # these points, so a correct flag never moves the score.

    def _on_game_ended(self, event: GameEvent):
        if self.open is not None:
            self._close_open(event.timestamp, LevelStatus.UNFINISHED, 0)
        self.ended_at = event.timestamp
        self._point(event.timestamp, MARK_GAME_ENDED)

    # -- finalization ----------------------------------------------------

    def build(self) -> PlayerSession:
        finished_at = self.ended_at
        if finished_at is None and self.open is None and self.records:
            last = self.records[-1]
            if last.level == self.definition.level_count and last.outcome in (
                LevelStatus.COMPLETED,
                LevelStatus.SKIPPED,
            ):
                # The final level was closed but the end-of-game line is
                # missing; the session still logically ended there.
                finished_at = last.exited_at
                self.points.append(
                    ScorePoint(self._elapsed(finished_at), self.settled, MARK_GAME_ENDED)
                )
        records = list(self.records)
        if self.open is not None:
            lvl = self.open
            records.append(
                LevelRecord(
                    level=lvl.definition.order,
                    outcome=LevelStatus.UNFINISHED,
                    earned=0,
                    entered_at=lvl.entered_at,
                    exited_at=None,
                    duration_s=int((self.last_seen_at - lvl.entered_at).total_seconds()),
                    hints_taken=tuple(lvl.hints_taken),
                    wrong_flag_count=lvl.wrong_flags,
                    solution_displayed=lvl.solution_displayed,
                    penalty_total=lvl.penalty_total,
                )
            )
        records.sort(key=lambda r: r.level)
        end = finished_at if finished_at is not None else self.last_seen_at
        return PlayerSession(
            player_id=self.player_id,
            started_at=self.started_at,
            finished_at=finished_at,
            last_seen_at=self.last_seen_at,
            levels=tuple(records),
            final_score=self.settled,
            total_duration_s=int((end - self.started_at).total_seconds()),
            score_points=tuple(self.points),
            anomalies=tuple(self.anomalies),
        )


def reconstruct_sessions(
    log: EventLog, definition: GameDefinition
) -> dict[int, PlayerSession]:
    """Replay a merged event stream into one session per player.

    The log must already be in timestamp order (``parse_event_log``
    guarantees this). Sessions come back keyed by player id in order of
    first appearance; anything the replay had to tolerate is recorded in
    each session's anomalies.
    """
    builders: dict[int, _SessionBuilder] = {}
    for event in log.events:
        builder = builders.get(event.player_id)
        if builder is None:
            builder = builders[event.player_id] = _SessionBuilder(
                event.player_id, definition
            )
        builder.feed(event)
    return {pid: b.build() for pid, b in builders.items()}


def _synthesized(event: GameEvent, what: str) -> Diagnostic:
    return Diagnostic(
        "warning",
        None,
        f"player {event.player_id}: synthesized '{what}' at "
        f"{event.timestamp.strftime('%Y-%m-%d %H:%M:%S')}",
    )


def repair_log(
    log: EventLog, definition: GameDefinition
) -> tuple[EventLog, list[Diagnostic]]:
    """Insert inferable missing structural events, one warning each.

    Three rules, mirroring what the logger writes on the happy path:
    a missing game-start goes at the player's earliest event; a missing
    level-(k+1) start goes at level k's terminal event; a missing game-end
    goes at the final level's terminal. A session that stops mid-level is
    left alone (nothing is inferable). Structurally complete logs are fixed
    points, so repairing twice equals repairing once.
    """
    before: dict[int, list[GameEvent]] = {}
    after: dict[int, list[GameEvent]] = {}
    diagnostics: list[Diagnostic] = []

    by_player: dict[int, list[tuple[int, GameEvent]]] = {}
    for idx, event in enumerate(log.events):
        by_player.setdefault(event.player_id, []).append((idx, event))

    def insert(bucket: dict[int, list[GameEvent]], idx: int, event: GameEvent, what: str):
        bucket.setdefault(idx, []).append(event)
        diagnostics.append(_synthesized(event, what))

    for pid, indexed in by_player.items():
        events = [e for _, e in indexed]
        kinds = [e.kind for e in events]

        game_start_idx: int | None = None
        if EventKind.GAME_STARTED in kinds:
            game_start_idx = indexed[kinds.index(EventKind.GAME_STARTED)][0]
        else:
            first_idx, first = indexed[0]
            insert(
                before,
                first_idx,
                GameEvent(pid, first.timestamp, 0, 1, EventKind.GAME_STARTED),
                "Game started",
            )

        has_level1_start = any(
            e.kind is EventKind.LEVEL_STARTED and e.level == 1 for e in events
        )
        if not has_level1_start:
            start_ts = events[0].timestamp
            ls1 = GameEvent(pid, start_ts, 0, 1, EventKind.LEVEL_STARTED)
            if game_start_idx is not None:
                insert(after, game_start_idx, ls1, "Level started (level 1)")
            else:
                insert(before, indexed[0][0], ls1, "Level started (level 1)")

        # Walk the level structure: whenever an in-level event shows up for
        # level k+1 while the last terminal closed level k and no explicit
        # start was seen, the start line is inferable at that terminal.
        # Level 1 is always open by now (its start was just ensured above).
        current = 1
        last_terminal: tuple[int, int, GameEvent] | None = None  # (level, idx, event)
        for idx, event in indexed:
            if event.kind is EventKind.LEVEL_STARTED:
                current = event.level
            elif event.kind in IN_LEVEL_KINDS:
                if event.level != current:
                    if (
                        last_terminal is not None
                        and last_terminal[0] == event.level - 1
                    ):
                        t_level, t_idx, t_event = last_terminal
                        insert(
                            after,
                            t_idx,
                            GameEvent(
                                pid,
                                t_event.timestamp,
                                0,
                                event.level,
                                EventKind.LEVEL_STARTED,
                            ),
                            f"Level started (level {event.level})",
                        )
                        current = event.level
                    # otherwise not inferable; reconstruction will flag it
                if event.kind in TERMINAL_KINDS and event.level == current:
                    last_terminal = (event.level, idx, event)

        if EventKind.GAME_ENDED not in kinds and last_terminal is not None:
            t_level, t_idx, t_event = last_terminal
            if t_level == definition.level_count:
                insert(
                    after,
                    t_idx,
                    GameEvent(
                        pid,
                        t_event.timestamp,
                        t_event.logical_time,
                        t_level,
                        EventKind.GAME_ENDED,
                    ),
                    "Game ended",
                )

    if not diagnostics:
        return log, []

    repaired: list[GameEvent] = []
    for idx, event in enumerate(log.events):
        repaired.extend(before.get(idx, ()))
        repaired.append(event)
        repaired.extend(after.get(idx, ()))
    return EventLog(tuple(repaired), log.diagnostics), diagnostics
