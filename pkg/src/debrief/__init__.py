"""Post-game analytics and feedback for multi-level CTF training.

Parses per-player gameplay event logs, reconstructs score timelines and
per-level records, computes comparative statistics, and serves the payloads
behind the clustering and timeline feedback views.
"""

from .analytics import (
    GameStats,
    LevelStats,
    PersonalFeedback,
    RelativeStanding,
    Standing,
    dispersion_neighbors,
    game_statistics,
    level_statistics,
    nearest_by_score,
    pareto_front,
    personal_summary,
    relative_standing,
    scoreboard,
)
from .errors import DefinitionError, LogParseError, UnknownPlayerError
from .events import (
    Diagnostic,
    EventKind,
    EventLog,
    GameEvent,
    generate_synthetic_log,
    parse_event_log,
    serialize_event_log,
    validate_log,
)
from .game import (
    GameDefinition,
    HintDefinition,
    LevelDefinition,
    cumulative_maxima,
    load_game_definition,
    serialize_game_definition,
)
from .service import (
    GameSnapshot,
    SnapshotStore,
    build_snapshot,
    canonical_json,
    clustering_payload,
    create_app,
    feedback_payload,
    timeline_payload,
)
from .sessions import (
    LevelRecord,
    LevelStatus,
    PlayerSession,
    ScorePoint,
    ScoreTimeline,
    build_scoreline,
    reconstruct_sessions,
    repair_log,
)

__version__ = "0.1.0"

__all__ = [
    "DefinitionError",
    "Diagnostic",
    "EventKind",
    "EventLog",
    "GameDefinition",
    "GameEvent",
    "GameSnapshot",
    "GameStats",
    "HintDefinition",
    "LevelDefinition",
    "LevelRecord",
    "LevelStats",
    "LevelStatus",
    "LogParseError",
    "PersonalFeedback",
    "PlayerSession",
    "RelativeStanding",
    "ScorePoint",
    "ScoreTimeline",
    "SnapshotStore",
    "Standing",
    "UnknownPlayerError",
    "build_scoreline",
    "build_snapshot",
    "canonical_json",
    "clustering_payload",
    "create_app",
    "cumulative_maxima",
    "dispersion_neighbors",
    "feedback_payload",
    "game_statistics",
    "generate_synthetic_log",
    "level_statistics",
    "load_game_definition",
    "nearest_by_score",
    "pareto_front",
    "parse_event_log",
    "personal_summary",
    "reconstruct_sessions",
    "relative_standing",
    "repair_log",
    "scoreboard",
    "serialize_event_log",
    "serialize_game_definition",
    "timeline_payload",
    "validate_log",
]
