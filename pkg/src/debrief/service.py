"""View payload assembly and the HTTP service.

The two dashboard views (clustering and timeline) and all per-player query
endpoints are served from an immutable per-game snapshot that is swapped
atomically on ingestion, so readers never observe a half-updated game.
Payloads carry raw units (seconds and points); pixel mapping, snapping,
and colors are client concerns.

Everything is serialized through ``canonical_json``, and the CLI export
command calls the same builders, so the file written by ``export`` is
byte-identical to the corresponding HTTP response body.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from datetime import datetime

from fastapi import FastAPI, Request, Response

from . import analytics
from .errors import DefinitionError, LogParseError, UnknownPlayerError
from .events import Diagnostic, parse_event_log
from .game import GameDefinition, cumulative_maxima, load_game_definition
from .sessions import PlayerSession, reconstruct_sessions, repair_log

DEFAULT_DISPERSION_FRACTIONS = (0.1, 0.25, 0.5)


def canonical_json(doc) -> str:
    """Compact, key-order-preserving JSON with a trailing newline."""
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":"), allow_nan=False) + "\n"


def _fmt_ts(ts: datetime | None) -> str | None:
    return None if ts is None else ts.strftime("%Y-%m-%d %H:%M:%S")


def _diag_doc(diag: Diagnostic) -> dict:
    return {"severity": diag.severity, "line": diag.line, "message": diag.message}


@dataclass(frozen=True)
class GameSnapshot:
    game_id: str
    definition: GameDefinition
    sessions: dict[int, PlayerSession]
    revision: int
    diagnostics: tuple[Diagnostic, ...] = ()


def ingest_sessions(
    definition: GameDefinition, log_text: str, mode: str
) -> tuple[dict[int, PlayerSession], list[Diagnostic]]:
    """The one ingestion pipeline: parse, repair, reconstruct.

    Both the HTTP service and the CLI go through here, which is what makes
    their outputs byte-comparable. Raises LogParseError in strict mode.
    """
    log = parse_event_log(log_text, definition, mode)
    repaired, repair_diags = repair_log(log, definition)
    sessions = reconstruct_sessions(repaired, definition)
    diagnostics = list(log.diagnostics) + repair_diags
    for session in sessions.values():
        diagnostics.extend(session.anomalies)
    return sessions, diagnostics


def build_snapshot(
    game_id: str, definition: GameDefinition, log_text: str, mode: str = "lenient"
) -> tuple[GameSnapshot, list[Diagnostic]]:
    sessions, diagnostics = ingest_sessions(definition, log_text, mode)
    snapshot = GameSnapshot(game_id, definition, sessions, revision=1)
    return snapshot, diagnostics


# -- payload builders ------------------------------------------------------


def clustering_payload(snapshot: GameSnapshot) -> dict:
    """Bars-plus-dots data for the clustering view: overall and per level."""
    stats = analytics.game_statistics(snapshot.sessions)
    overall = {
        "scope": "overall",
        "max_duration_s": stats.max_duration_s,
        "mean_duration_s": stats.mean_duration_s,
        "score_min": stats.score_min,
        "score_max": stats.score_max,
        "dots": [
            {"player_id": pid, "duration_s": d, "score": s, "finished": f}
            for pid, d, s, f in stats.dots
        ],
    }
    levels = [
        {
            "scope": "level",
            "level": ls.level,
            "max_duration_s": ls.max_duration_s,
            "mean_duration_s": ls.mean_duration_s,
            "score_min": ls.score_min,
            "score_max": ls.score_max,
            "dots": [
                {"player_id": pid, "duration_s": d, "score": s} for pid, d, s in ls.dots
            ],
        }
        for ls in analytics.level_statistics(snapshot.sessions, snapshot.definition)
    ]
    return {
        "game_id": snapshot.game_id,
        "player_count": stats.player_count,
        "finished_count": stats.finished_count,
        "overall": overall,
        "levels": levels,
    }


def _point_doc(point) -> dict:
    doc = {"elapsed_s": point.elapsed_s, "score": point.score, "mark": point.mark}
    if point.hint_number is not None:
        doc["hint_number"] = point.hint_number
    if point.penalty is not None:
        doc["penalty"] = point.penalty
    return doc


def timeline_payload(snapshot: GameSnapshot) -> dict:
    """Scorelines, dashed maxima, estimated-time stripes, and the table.

    Scorelines and table rows share the scoreboard order; the table's
    totals are the same numbers the scorelines end at, by construction.
    """
    definition = snapshot.definition
    standings = analytics.scoreboard(snapshot.sessions)

    stripes = []
    start = 0
    for lvl in definition.levels:
        stripes.append(
            {"level": lvl.order, "start_s": start, "end_s": start + lvl.estimated_duration_s}
        )
        start += lvl.estimated_duration_s

    scorelines = []
    table = []
    for standing in standings:
        session = snapshot.sessions[standing.player_id]
        scorelines.append(
            {
                "player_id": session.player_id,
                "points": [_point_doc(p) for p in session.score_points],
            }
        )
        level_scores = []
        for lvl in definition.levels:
            record = session.level(lvl.order)
            level_scores.append(0 if record is None else record.earned)
        table.append(
            {
                "player_id": standing.player_id,
                "rank": standing.rank,
                "level_scores": level_scores,
                "final_score": standing.final_score,
                "total_duration_s": standing.total_duration_s,
                "finished": standing.finished,
            }
        )

    return {
        "game_id": snapshot.game_id,
        "cumulative_maxima": list(cumulative_maxima(definition)),
        "estimated_stripes": stripes,
        "scorelines": scorelines,
        "table": table,
    }


def feedback_payload(snapshot: GameSnapshot, player_id: int) -> dict:
    """Personal debrief for one player (tasks T1..T6 plus standings)."""
    summary = analytics.personal_summary(snapshot.sessions, snapshot.definition, player_id)
    if len(snapshot.sessions) >= 2:
        rs = analytics.relative_standing(snapshot.sessions, player_id)
        standing_doc = {
            "score_percentile": rs.score_percentile,
            "time_percentile": rs.time_percentile,
            "score_band": rs.score_band,
            "time_band": rs.time_band,
        }
    else:
        standing_doc = None
    return {
        "game_id": snapshot.game_id,
        "player_id": summary.player_id,
        "finished": summary.finished,
        "finished_at": _fmt_ts(summary.finished_at),
        "final_score": summary.final_score,
        "total_duration_s": summary.total_duration_s,
        "levels": [
            {
                "level": f.level,
                "outcome": f.outcome,
                "duration_s": f.duration_s,
                "earned": f.earned,
                "lost": f.lost,
                "max_points": f.max_points,
                "hints_taken": list(f.hints_taken),
                "wrong_flag_count": f.wrong_flag_count,
                "solution_displayed": f.solution_displayed,
            }
            for f in summary.levels
        ],
        "lowest_score_levels": list(summary.lowest_score_levels),
        "most_lost_levels": list(summary.most_lost_levels),
        "transitions": [
            {
                "from_level": t.from_level,
                "to_level": t.to_level,
                "at": _fmt_ts(t.at),
                "elapsed_s": t.elapsed_s,
            }
            for t in summary.transitions
        ],
        "top_better": list(summary.top_better),
        "top_worse": list(summary.top_worse),
        "relative_standing": standing_doc,
    }


def scoreboard_payload(snapshot: GameSnapshot) -> dict:
    return {
        "game_id": snapshot.game_id,
        "standings": [
            {
                "player_id": s.player_id,
                "rank": s.rank,
                "final_score": s.final_score,
                "total_duration_s": s.total_duration_s,
                "finished": s.finished,
            }
            for s in analytics.scoreboard(snapshot.sessions)
        ],
    }


def pareto_payload(snapshot: GameSnapshot) -> dict:
    return {
        "game_id": snapshot.game_id,
        "front": sorted(analytics.pareto_front(snapshot.sessions)),
    }


def neighbors_payload(snapshot: GameSnapshot, player_id: int, k: int) -> dict:
    neighbors = analytics.nearest_by_score(snapshot.sessions, player_id, k)
    return {
        "game_id": snapshot.game_id,
        "player_id": player_id,
        "k": k,
        "neighbors": [
            {
                "player_id": pid,
                "score_gap": gap,
                "final_score": snapshot.sessions[pid].final_score,
                "total_duration_s": snapshot.sessions[pid].total_duration_s,
            }
            for pid, gap in neighbors
        ],
    }


def dispersion_payload(
    snapshot: GameSnapshot, player_id: int, fractions: list[float]
) -> dict:
    """Nested dispersion bands for every scope the player has a point in."""
    definition = snapshot.definition
    sessions = snapshot.sessions

    def bands_doc(scope) -> list[dict]:
        bands = analytics.dispersion_neighbors(
            sessions, definition, player_id, scope, fractions
        )
        return [
            {"fraction": f, "player_ids": sorted(band)}
            for f, band in zip(fractions, bands)
        ]

    own = sessions.get(player_id)
    if own is None:
        raise UnknownPlayerError(player_id)
    levels = [
        {"level": lvl.order, "bands": bands_doc(lvl.order)}
        for lvl in definition.levels
        if own.level(lvl.order) is not None
    ]
    return {
        "game_id": snapshot.game_id,
        "player_id": player_id,
        "fractions": list(fractions),
        "overall": {"bands": bands_doc("overall")},
        "levels": levels,
    }


# -- the HTTP service ------------------------------------------------------


class SnapshotStore:
    """Per-game definitions and snapshots behind one lock.

    Ingestion replaces the whole snapshot (copy-on-ingest); readers hold a
    reference to an immutable GameSnapshot, so there are no torn reads.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._definitions: dict[str, GameDefinition] = {}
        self._snapshots: dict[str, GameSnapshot] = {}
        self._revisions: dict[str, int] = {}

    def set_definition(self, game_id: str, definition: GameDefinition):
        with self._lock:
            self._definitions[game_id] = definition
            # Old sessions were scored under the old definition; drop them.
            self._snapshots.pop(game_id, None)

    def definition(self, game_id: str) -> GameDefinition | None:
        with self._lock:
            return self._definitions.get(game_id)

    def ingest(
        self, game_id: str, log_text: str, mode: str
    ) -> tuple[GameSnapshot, list[Diagnostic]]:
        with self._lock:
            definition = self._definitions.get(game_id)
            if definition is None:
                raise KeyError(game_id)
            sessions, diagnostics = ingest_sessions(definition, log_text, mode)
            revision = self._revisions.get(game_id, 0) + 1
            self._revisions[game_id] = revision
            snapshot = GameSnapshot(
                game_id, definition, sessions, revision, tuple(diagnostics)
            )
            self._snapshots[game_id] = snapshot
            return snapshot, diagnostics

    def snapshot(self, game_id: str) -> GameSnapshot | None:
        with self._lock:
            return self._snapshots.get(game_id)

    def known(self, game_id: str) -> bool:
        with self._lock:
            return game_id in self._definitions


def _json_response(doc, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(doc),
        media_type="application/json",
        status_code=status_code,
    )


def _diagnostics_response(status_code: int, diagnostics) -> Response:
    return _json_response(
        {"diagnostics": [_diag_doc(d) for d in diagnostics]}, status_code
    )


def _error_response(status_code: int, message: str) -> Response:
    return _diagnostics_response(status_code, [Diagnostic("error", None, message)])


def create_app(store: SnapshotStore | None = None) -> FastAPI:
    """The feedback service. One store, many games, swap-on-ingest."""
    store = store if store is not None else SnapshotStore()
    app = FastAPI(title="debrief", docs_url=None, redoc_url=None)

    def _get_snapshot(game_id: str) -> GameSnapshot | Response:
        if not store.known(game_id):
            return _error_response(404, f"unknown game '{game_id}'")
        snapshot = store.snapshot(game_id)
        if snapshot is None or not snapshot.sessions:
            return _error_response(409, f"no sessions ingested for game '{game_id}'")
        return snapshot

    @app.post("/games/{game_id}/definition")
    async def post_definition(game_id: str, request: Request):
        text = (await request.body()).decode("utf-8")
        try:
            definition = load_game_definition(text)
        except DefinitionError as exc:
            return _error_response(400, str(exc))
        store.set_definition(game_id, definition)
        return _json_response(
            {
                "game_id": game_id,
                "title": definition.title,
                "levels": definition.level_count,
                "total_max": definition.total_max,
            }
        )

    @app.post("/games/{game_id}/events")
    async def post_events(game_id: str, request: Request, mode: str = "lenient"):
        if mode not in ("strict", "lenient"):
            return _error_response(400, f"mode must be 'strict' or 'lenient', got '{mode}'")
        if not store.known(game_id):
            return _error_response(404, f"unknown game '{game_id}'")
        text = (await request.body()).decode("utf-8")
        try:
            snapshot, diagnostics = store.ingest(game_id, text, mode)
        except LogParseError as exc:
            return _diagnostics_response(400, exc.diagnostics)
        return _json_response(
            {
                "game_id": game_id,
                "revision": snapshot.revision,
                "players": len(snapshot.sessions),
                "diagnostics": [_diag_doc(d) for d in diagnostics],
            }
        )

    @app.get("/games/{game_id}/views/clustering")
    def get_clustering(game_id: str):
        snapshot = _get_snapshot(game_id)
        if isinstance(snapshot, Response):
            return snapshot
        return _json_response(clustering_payload(snapshot))

    @app.get("/games/{game_id}/views/timeline")
    def get_timeline(game_id: str):
        snapshot = _get_snapshot(game_id)
        if isinstance(snapshot, Response):
            return snapshot
        return _json_response(timeline_payload(snapshot))

    @app.get("/games/{game_id}/players/{player_id}/feedback")
    def get_feedback(game_id: str, player_id: int):
        snapshot = _get_snapshot(game_id)
        if isinstance(snapshot, Response):
            return snapshot
        try:
            return _json_response(feedback_payload(snapshot, player_id))
        except UnknownPlayerError as exc:
            return _error_response(404, str(exc))

    @app.get("/games/{game_id}/scoreboard")
    def get_scoreboard(game_id: str):
        snapshot = _get_snapshot(game_id)
        if isinstance(snapshot, Response):
            return snapshot
        return _json_response(scoreboard_payload(snapshot))

    @app.get("/games/{game_id}/analytics/pareto")
    def get_pareto(game_id: str):
        snapshot = _get_snapshot(game_id)
        if isinstance(snapshot, Response):
            return snapshot
        return _json_response(pareto_payload(snapshot))

    @app.get("/games/{game_id}/players/{player_id}/neighbors")
    def get_neighbors(game_id: str, player_id: int, k: int = 3):
        snapshot = _get_snapshot(game_id)
        if isinstance(snapshot, Response):
            return snapshot
        try:
            return _json_response(neighbors_payload(snapshot, player_id, k))
        except UnknownPlayerError as exc:
            return _error_response(404, str(exc))
        except ValueError as exc:
            return _error_response(400, str(exc))

    @app.get("/games/{game_id}/players/{player_id}/dispersion")
    def get_dispersion(game_id: str, player_id: int, fractions: str = "0.1,0.25,0.5"):
        snapshot = _get_snapshot(game_id)
        if isinstance(snapshot, Response):
            return snapshot
        try:
            parsed = [float(part) for part in fractions.split(",") if part.strip()]
        except ValueError:
            return _error_response(400, f"bad fractions '{fractions}'")
        try:
            return _json_response(dispersion_payload(snapshot, player_id, parsed))
        except UnknownPlayerError as exc:
            return _error_response(404, str(exc))
        except ValueError as exc:
            return _error_response(400, str(exc))

    return app
