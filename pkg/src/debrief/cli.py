"""Operator command line: validate, stats, export, repair, synth, serve.

Exit codes: 0 success, 1 diagnostics with errors (or operational failure),
2 usage errors. The default parse mode is lenient because real logs have
missing lines; strict mode is for fixture authoring.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analytics, service
from .errors import DefinitionError, LogParseError, UnknownPlayerError
from .events import generate_synthetic_log, parse_event_log, serialize_event_log, validate_log
from .game import GameDefinition, load_game_definition
from .sessions import repair_log


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _port(text: str) -> int:
    value = int(text)
    if not 1 <= value <= 65535:
        raise argparse.ArgumentTypeError(f"port must be in 1..65535, got {value}")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="debrief",
        description="Post-game analytics and feedback for multi-level CTF training.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_mode(p):
        p.add_argument(
            "--mode",
            choices=("strict", "lenient"),
            default="lenient",
            help="strict aborts on any bad line; lenient drops them with warnings",
        )

    p = sub.add_parser("validate", help="check a log against a game definition")
    p.add_argument("definition")
    p.add_argument("log")

    p = sub.add_parser("stats", help="print level, game, and scoreboard statistics")
    p.add_argument("definition")
    p.add_argument("log")
    add_mode(p)

    p = sub.add_parser("export", help="write a view payload exactly as the service serves it")
    p.add_argument("definition")
    p.add_argument("log")
    p.add_argument("--view", required=True, metavar="clustering|timeline|feedback:<pid>")
    p.add_argument("-o", "--output", required=True, help="output file, '-' for stdout")
    add_mode(p)

    p = sub.add_parser("repair", help="insert inferable missing events, write canonical CSV")
    p.add_argument("definition")
    p.add_argument("log")
    p.add_argument("-o", "--output", required=True, help="output file, '-' for stdout")
    add_mode(p)

    p = sub.add_parser("synth", help="generate a deterministic synthetic log")
    p.add_argument("definition")
    p.add_argument("--players", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", required=True, help="output file, '-' for stdout")

    p = sub.add_parser("serve", help="run the HTTP feedback service")
    p.add_argument("--port", type=_port, default=8000)
    p.add_argument("--host", default="127.0.0.1")

    return parser


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write_text(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_definition(path: str) -> GameDefinition:
    return load_game_definition(_read_text(path))


def _fmt_duration(seconds: float) -> str:
    total = int(round(seconds))
    hh, rem = divmod(total, 3600)
    mm, ss = divmod(rem, 60)
    return f"{hh}:{mm:02d}:{ss:02d}"


def _cmd_validate(args) -> int:
    definition = _load_definition(args.definition)
    text = _read_text(args.log)
    try:
        log = parse_event_log(text, definition, "strict")
    except LogParseError as exc:
        for diag in exc.diagnostics:
            print(diag, file=sys.stderr)
        return 1
    warnings = list(log.diagnostics) + validate_log(log, definition)
    for diag in warnings:
        print(diag, file=sys.stderr)
    players = len({e.player_id for e in log.events})
    print(f"ok: {len(log.events)} events, {players} players, {len(warnings)} warnings")
    return 0


def _snapshot_from_files(args) -> service.GameSnapshot:
    definition = _load_definition(args.definition)
    text = _read_text(args.log)
    snapshot, diagnostics = service.build_snapshot(
        definition.game_id, definition, text, args.mode
    )
    if diagnostics:
        print(f"{len(diagnostics)} warnings (see 'validate' for details)", file=sys.stderr)
    return snapshot


def _cmd_stats(args) -> int:
    snapshot = _snapshot_from_files(args)
    if not snapshot.sessions:
        print("no sessions in log", file=sys.stderr)
        return 1
    definition = snapshot.definition
    stats = analytics.game_statistics(snapshot.sessions)

    print(f"game: {definition.title or definition.game_id}")
    print(
        f"players: {stats.player_count} ({stats.finished_count} finished), "
        f"total max {definition.total_max} points"
    )
    print(
        f"overall: slowest {_fmt_duration(stats.max_duration_s)}, "
        f"mean {_fmt_duration(stats.mean_duration_s)}, "
        f"scores {stats.score_min}..{stats.score_max}"
    )
    print()
    print(f"{'level':>5}  {'played':>6}  {'slowest':>9}  {'mean':>9}  {'scores':>9}")
    for ls in analytics.level_statistics(snapshot.sessions, definition):
        print(
            f"{ls.level:>5}  {len(ls.dots):>6}  {_fmt_duration(ls.max_duration_s):>9}  "
            f"{_fmt_duration(ls.mean_duration_s):>9}  "
            f"{f'{ls.score_min}..{ls.score_max}':>9}"
        )
    print()
    print(f"{'rank':>4}  {'player':>9}  {'score':>5}  {'time':>9}  finished")
    for s in analytics.scoreboard(snapshot.sessions):
        print(
            f"{s.rank:>4}  {s.player_id:>9}  {s.final_score:>5}  "
            f"{_fmt_duration(s.total_duration_s):>9}  {'yes' if s.finished else 'no'}"
        )
    return 0


def _cmd_export(args) -> int:
    view = args.view
    if view == "clustering":
        build = service.clustering_payload
    elif view == "timeline":
        build = service.timeline_payload
    elif view.startswith("feedback:"):
        try:
            player_id = int(view.split(":", 1)[1])
        except ValueError:
            print(f"bad player id in --view {view!r}", file=sys.stderr)
            return 2

        def build(snapshot):
            return service.feedback_payload(snapshot, player_id)

    else:
        print(
            f"unknown view {view!r}; expected clustering, timeline, or feedback:<pid>",
            file=sys.stderr,
        )
        return 2

    snapshot = _snapshot_from_files(args)
    if not snapshot.sessions:
        print("no sessions in log", file=sys.stderr)
        return 1
    _write_text(args.output, service.canonical_json(build(snapshot)))
    return 0


def _cmd_repair(args) -> int:
    definition = _load_definition(args.definition)
    text = _read_text(args.log)
    log = parse_event_log(text, definition, args.mode)
    repaired, diagnostics = repair_log(log, definition)
    for diag in diagnostics:
        print(diag, file=sys.stderr)
    _write_text(args.output, serialize_event_log(repaired))
    return 0


def _cmd_synth(args) -> int:
    definition = _load_definition(args.definition)
    log = generate_synthetic_log(definition, args.players, args.seed)
    _write_text(args.output, serialize_event_log(log))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run(service.create_app(), host=args.host, port=args.port, log_level="info")
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "stats": _cmd_stats,
    "export": _cmd_export,
    "repair": _cmd_repair,
    "synth": _cmd_synth,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except DefinitionError as exc:
        print(f"definition error: {exc}", file=sys.stderr)
        return 1
    except LogParseError as exc:
        for diag in exc.diagnostics:
            print(diag, file=sys.stderr)
        return 1
    except UnknownPlayerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
