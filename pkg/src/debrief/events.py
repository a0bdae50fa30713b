"""Event-log parsing, validation, serialization, and synthesis.

Logs are CSV-like text with exactly five comma-separated fields per line:

    player_id,YYYY-MM-DD HH:MM:SS,HH:MM:SS,level,event

The second field is wall-clock time; the third is time spent in the current
level so far (hours may exceed 23). No field is ever quoted, so lines are
split on raw commas. Parsing is two-mode: strict raises with every problem
collected, lenient drops bad lines and reports them as warnings.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from enum import Enum

from .errors import LogParseError
from .game import GameDefinition

TIMESTAMP_FORMAT = "%Y-%m-%d %H:%M:%S"


class EventKind(Enum):
    GAME_STARTED = "Game started"
    GAME_ENDED = "Game ended"
    LEVEL_STARTED = "Level started"
    LEVEL_SKIPPED = "Level skipped"
    CORRECT_FLAG = "Correct flag submitted"
    WRONG_FLAG = "Wrong flag submitted"
    HINT_TAKEN = "Hint {n} taken"
    SOLUTION_DISPLAYED = "Solution displayed"


# Lowercased fixed strings -> kind, for case-insensitive matching.
_FIXED_EVENTS = {
    kind.value.lower(): kind
    for kind in EventKind
    if kind is not EventKind.HINT_TAKEN
}
_HINT_RE = re.compile(r"hint (\d+) taken", re.IGNORECASE)

# Events that happen inside a level (as opposed to framing it).
IN_LEVEL_KINDS = frozenset(
    {
        EventKind.LEVEL_SKIPPED,
        EventKind.CORRECT_FLAG,
        EventKind.WRONG_FLAG,
        EventKind.HINT_TAKEN,
        EventKind.SOLUTION_DISPLAYED,
    }
)
TERMINAL_KINDS = frozenset({EventKind.CORRECT_FLAG, EventKind.LEVEL_SKIPPED})


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "warning" | "error"
    line: int | None
    message: str

    def __str__(self):
        where = f"line {self.line}: " if self.line is not None else ""
        return f"{self.severity}: {where}{self.message}"


@dataclass(frozen=True)
class GameEvent:
    player_id: int
    timestamp: datetime
    logical_time: int  # seconds spent in the current level when emitted
    level: int
    kind: EventKind
    hint_number: int | None = None
    line: int | None = field(default=None, compare=False)

    def event_text(self) -> str:
        if self.kind is EventKind.HINT_TAKEN:
            return f"Hint {self.hint_number} taken"
        return self.kind.value


@dataclass(frozen=True)
class EventLog:
    events: tuple[GameEvent, ...]
    diagnostics: tuple[Diagnostic, ...]


def _parse_logical_time(text: str) -> int:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected HH:MM:SS, got {text!r}")
    hours, minutes, seconds = (int(p) for p in parts)
    if minutes >= 60 or seconds >= 60 or hours < 0 or minutes < 0 or seconds < 0:
        raise ValueError(f"time components out of range in {text!r}")
    return hours * 3600 + minutes * 60 + seconds


def _parse_event_text(text: str, aliases: dict[str, str]) -> tuple[EventKind, int | None]:
    canonical = aliases.get(text, text)
    kind = _FIXED_EVENTS.get(canonical.strip().lower())
    if kind is not None:
        return kind, None
    match = _HINT_RE.fullmatch(canonical.strip())
    if match:
        return EventKind.HINT_TAKEN, int(match.group(1))
    raise ValueError(f"unrecognized event {text!r}")


def _parse_line(
    text: str, line_no: int, definition: GameDefinition, mode: str
) -> tuple[GameEvent | None, list[Diagnostic]]:
    fields = text.split(",")
    if len(fields) != 5:
        return None, [
            Diagnostic("error", line_no, f"expected 5 fields, got {len(fields)}")
        ]
    raw_player, raw_ts, raw_elapsed, raw_level, raw_event = fields

    try:
        player_id = int(raw_player)
    except ValueError:
        return None, [Diagnostic("error", line_no, f"bad player_id {raw_player!r}")]
    try:
        timestamp = datetime.strptime(raw_ts, TIMESTAMP_FORMAT)
    except ValueError:
        return None, [Diagnostic("error", line_no, f"bad timestamp {raw_ts!r}")]
    try:
        logical_time = _parse_logical_time(raw_elapsed)
    except ValueError as exc:
        return None, [Diagnostic("error", line_no, f"bad elapsed time: {exc}")]
    try:
        level = int(raw_level)
    except ValueError:
        return None, [Diagnostic("error", line_no, f"bad level {raw_level!r}")]
    if not 1 <= level <= definition.level_count:
        return None, [
            Diagnostic(
                "error",
                line_no,
                f"level {level} outside 1..{definition.level_count}",
            )
        ]
    try:
        kind, hint_number = _parse_event_text(raw_event, definition.event_aliases)
    except ValueError as exc:
        return None, [Diagnostic("error", line_no, str(exc))]

    diags: list[Diagnostic] = []
    if kind is EventKind.HINT_TAKEN and definition.level(level).hint(hint_number) is None:
        message = f"hint {hint_number} not defined for level {level}"
        if mode == "strict":
            return None, [Diagnostic("error", line_no, message)]
        # Keep the event; it scores a zero penalty.
        diags.append(Diagnostic("warning", line_no, message))

    event = GameEvent(
        player_id=player_id,
        timestamp=timestamp,
        logical_time=logical_time,
        level=level,
        kind=kind,
        hint_number=hint_number,
        line=line_no,
    )
    return event, diags


def parse_event_log(
    text: str, definition: GameDefinition, mode: str = "strict"
) -> EventLog:
    """Parse a whole event log.

    Events come back in timestamp order; equal timestamps keep source order
    (same-second pairs like flag-then-next-level-start are common). In
    strict mode any bad line raises LogParseError carrying every diagnostic
    collected; in lenient mode bad lines are dropped with warnings.
    """
    if mode not in ("strict", "lenient"):
        raise ValueError(f"mode must be 'strict' or 'lenient', got {mode!r}")

    events: list[GameEvent] = []
    diagnostics: list[Diagnostic] = []
    for line_no, raw in enumerate(text.split("\n"), start=1):
        if raw.endswith("\r"):
            raw = raw[:-1]
        if not raw.strip():
            continue
        event, diags = _parse_line(raw, line_no, definition, mode)
        if event is None and mode == "lenient":
            diags = [
                Diagnostic("warning", d.line, f"dropped: {d.message}") for d in diags
            ]
        diagnostics.extend(diags)
        if event is not None:
            events.append(event)

    if mode == "strict" and any(d.severity == "error" for d in diagnostics):
        raise LogParseError(diagnostics)

    events.sort(key=lambda e: e.timestamp)  # stable; ties keep file order
    return EventLog(tuple(events), tuple(diagnostics))


def serialize_event_log(log: EventLog) -> str:
    """Render a log back to CSV text. Inverse of parse_event_log on clean input."""
    lines = []
    for event in log.events:
        hh, rem = divmod(event.logical_time, 3600)
        mm, ss = divmod(rem, 60)
        lines.append(
            f"{event.player_id},{event.timestamp.strftime(TIMESTAMP_FORMAT)},"
            f"{hh:02d}:{mm:02d}:{ss:02d},{event.level},{event.event_text()}"
        )
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


class _PlayerCheck:
    """Per-player bookkeeping for validate_log."""

    def __init__(self):
        self.first_seen = False
        self.started = False
        self.ended = False
        self.final_terminated = False
        self.current_level: int | None = None
        self.current_start: datetime | None = None
        self.missing_start_levels: set[int] = set()


def validate_log(log: EventLog, definition: GameDefinition) -> list[Diagnostic]:
    """Structural and consistency checks over a parsed log.

    All findings are warnings: a session missing its game-start or game-end
    line, a level played without its level-start line, duplicated
    game-starts, and in-level clock drift (the per-level time field
    disagreeing with the wall clock by more than one second). The log is
    never modified.
    """
    out: list[Diagnostic] = []
    players: dict[int, _PlayerCheck] = {}

    def warn(event: GameEvent, message: str):
        out.append(
            Diagnostic("warning", event.line, f"player {event.player_id}: {message}")
        )

    for event in log.events:
        check = players.get(event.player_id)
        if check is None:
            check = players[event.player_id] = _PlayerCheck()
        if not check.first_seen:
            check.first_seen = True
            if event.kind is not EventKind.GAME_STARTED:
                warn(event, "no game-start event before first activity")

        if event.kind is EventKind.GAME_STARTED:
            if check.started:
                warn(event, "duplicate game-start event")
            check.started = True
            # Level 1 counts as entered at game start even without an
            # explicit level-start line.
            if check.current_level is None:
                check.current_level = 1
                check.current_start = event.timestamp
        elif event.kind is EventKind.LEVEL_STARTED:
            check.current_level = event.level
            check.current_start = event.timestamp
        elif event.kind is EventKind.GAME_ENDED:
            check.ended = True
        elif event.kind in IN_LEVEL_KINDS:
            if event.level != check.current_level:
                if event.level not in check.missing_start_levels:
                    check.missing_start_levels.add(event.level)
                    warn(event, f"level {event.level} played without a level-start event")
                # Infer the start so later lines of this level can still be
                # drift-checked.
                check.current_level = event.level
                check.current_start = event.timestamp - timedelta(
                    seconds=event.logical_time
                )
            else:
                span = int((event.timestamp - check.current_start).total_seconds())
                if abs(span - event.logical_time) > 1:
                    warn(
                        event,
                        f"level {event.level} clock drift: wall {span}s vs "
                        f"in-level {event.logical_time}s",
                    )
            if (
                event.kind in TERMINAL_KINDS
                and event.level == definition.level_count
            ):
                check.final_terminated = True

    for player_id, check in players.items():
        if not check.ended and check.final_terminated:
            out.append(
                Diagnostic(
                    "warning",
                    None,
                    f"player {player_id}: no game-end event after the final level",
                )
            )
    return out


def generate_synthetic_log(
    definition: GameDefinition, players: int, seed: int
) -> EventLog:
    """Deterministically generate a structurally legal multi-player log.

    Every player runs the full game: game start, per-level start and
    terminal (flag or skip), game end, with randomized hint usage, wrong
    flags, solution displays, and level durations in 0.2x..3x the estimate.
    Structural pairs share a second (flag and next level start, final
    terminal and game end) exactly as the real logger writes them.
    """
    if players < 1:
        raise ValueError(f"players must be >= 1, got {players}")
    rng = random.Random(seed)
    base = datetime(2018, 8, 24, 16, 0, 0)
    all_events: list[GameEvent] = []

    for i in range(players):
        pid = 9000001 + i
        start = base + timedelta(seconds=rng.randrange(0, 601))
        events = [
            GameEvent(pid, start, 0, 1, EventKind.GAME_STARTED),
            GameEvent(pid, start, 0, 1, EventKind.LEVEL_STARTED),
        ]
        t = start
        for lvl in definition.levels:
            duration = max(1, int(lvl.estimated_duration_s * rng.uniform(0.2, 3.0)))
            skipped = rng.random() < 0.10
            solution = (not skipped) and rng.random() < 0.12
            marks: list[tuple[int, int, EventKind, int | None]] = []
            seq = 0
            for hint in lvl.hints:
                if rng.random() < 0.40:
                    marks.append(
                        (rng.randint(0, duration - 1), seq, EventKind.HINT_TAKEN, hint.number)
                    )
                    seq += 1
            for _ in range(rng.randint(0, 3)):
                marks.append(
                    (rng.randint(0, duration - 1), seq, EventKind.WRONG_FLAG, None)
                )
                seq += 1
            if solution:
                marks.append(
                    (
                        rng.randint(duration // 2, duration - 1) if duration > 1 else 0,
                        seq,
                        EventKind.SOLUTION_DISPLAYED,
                        None,
                    )
                )
            marks.sort(key=lambda m: (m[0], m[1]))
            for offset, _, kind, hint_number in marks:
                events.append(
                    GameEvent(
                        pid, t + timedelta(seconds=offset), offset, lvl.order, kind, hint_number
                    )
                )
            terminal_ts = t + timedelta(seconds=duration)
            terminal = EventKind.LEVEL_SKIPPED if skipped else EventKind.CORRECT_FLAG
            events.append(GameEvent(pid, terminal_ts, duration, lvl.order, terminal))
            if lvl.order < definition.level_count:
                events.append(
                    GameEvent(pid, terminal_ts, 0, lvl.order + 1, EventKind.LEVEL_STARTED)
                )
            else:
                events.append(
                    GameEvent(pid, terminal_ts, duration, lvl.order, EventKind.GAME_ENDED)
                )
            t = terminal_ts
        all_events.extend(events)

    all_events.sort(key=lambda e: e.timestamp)  # stable; per-player order kept
    return EventLog(tuple(all_events), ())
