"""Static structure of a multi-level CTF game.

A game is an ordered sequence of levels; each level is worth a fixed number
of points and may offer hints that cost a scoring penalty. Definitions are
loaded from a JSON document (see ``load_game_definition``) and are immutable
after construction, so they can be shared freely between threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import DefinitionError


@dataclass(frozen=True)
class HintDefinition:
    number: int
    title: str
    penalty: int

    def __post_init__(self):
        if self.number < 1:
            raise DefinitionError(f"hint number must be >= 1, got {self.number}", field="number")
        if self.penalty < 0:
            raise DefinitionError(f"hint {self.number}: penalty must be >= 0", field="penalty")


@dataclass(frozen=True)
class LevelDefinition:
    order: int
    name: str
    max_points: int
    hints: tuple[HintDefinition, ...]
    estimated_duration_s: int

    def __post_init__(self):
        prefix = f"level {self.order}"
        if self.max_points <= 0:
            raise DefinitionError(f"{prefix}: max_points must be > 0", field="max_points")
        if self.estimated_duration_s <= 0:
            raise DefinitionError(
                f"{prefix}: estimated_duration_s must be > 0", field="estimated_duration_s"
            )
        numbers = [h.number for h in self.hints]
        if numbers != list(range(1, len(numbers) + 1)):
            raise DefinitionError(
                f"{prefix}: hints must be numbered 1..{len(numbers)} contiguously, got {numbers}",
                field="hints",
            )
        for hint in self.hints:
            if hint.penalty > self.max_points:
                raise DefinitionError(
                    f"{prefix}: hint {hint.number} penalty {hint.penalty} exceeds "
                    f"max_points {self.max_points}",
                    field="hints",
                )
        total_penalty = sum(h.penalty for h in self.hints)
        if total_penalty > self.max_points:
            raise DefinitionError(
                f"{prefix}: hint penalties sum to {total_penalty}, exceeding "
                f"max_points {self.max_points}",
                field="hints",
            )

    def hint(self, number: int) -> HintDefinition | None:
        if 1 <= number <= len(self.hints):
            return self.hints[number - 1]
        return None


@dataclass(frozen=True)
class GameDefinition:
    game_id: str
    title: str
    levels: tuple[LevelDefinition, ...]
    wrong_flag_penalty: int = 0
    total_max: int = 0
    # Literal alias -> canonical event string, applied before vocabulary matching.
    event_aliases: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.levels:
            raise DefinitionError("levels: a game needs at least one level", field="levels")
        orders = [lvl.order for lvl in self.levels]
        if orders != list(range(1, len(orders) + 1)):
            raise DefinitionError(
                f"levels: must be numbered 1..{len(orders)} contiguously, got {orders}",
                field="levels",
            )
        if self.wrong_flag_penalty < 0:
            raise DefinitionError(
                "wrong_flag_penalty must be >= 0", field="wrong_flag_penalty"
            )
        expected = sum(lvl.max_points for lvl in self.levels)
        if self.total_max != expected:
            raise DefinitionError(
                f"total_max {self.total_max} does not match the sum of level "
                f"max_points {expected}",
                field="total_max",
            )

    @property
    def level_count(self) -> int:
        return len(self.levels)

    def level(self, order: int) -> LevelDefinition:
        if not 1 <= order <= len(self.levels):
            raise KeyError(order)
        return self.levels[order - 1]


def cumulative_maxima(definition: GameDefinition) -> tuple[int, ...]:
    """Prefix sums of level maxima: the most points reachable after each level."""
    out: list[int] = []
    total = 0
    for lvl in definition.levels:
        total += lvl.max_points
        out.append(total)
    return tuple(out)


def _require(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise DefinitionError(f"{where}: missing required field '{key}'", field=key)
    value = obj[key]
    if kind is int and isinstance(value, bool):
        raise DefinitionError(f"{where}: field '{key}' must be an integer", field=key)
    if not isinstance(value, kind):
        raise DefinitionError(
            f"{where}: field '{key}' must be {kind.__name__}, got {type(value).__name__}",
            field=key,
        )
    return value


def load_game_definition(text: str) -> GameDefinition:
    """Parse and validate a game-definition JSON document.

    Raises DefinitionError for malformed JSON (syntax) and for any invariant
    violation (semantic); semantic errors name the offending field.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DefinitionError(f"syntax error: {exc}") from exc
    if not isinstance(doc, dict):
        raise DefinitionError("syntax error: top level must be an object")

    game_id = _require(doc, "game_id", str, "document")
    title = doc.get("title", "")
    if not isinstance(title, str):
        raise DefinitionError("document: field 'title' must be a string", field="title")
    raw_levels = _require(doc, "levels", list, "document")
    total_max = _require(doc, "total_max", int, "document")
    wrong_flag_penalty = doc.get("wrong_flag_penalty", 0)
    if isinstance(wrong_flag_penalty, bool) or not isinstance(wrong_flag_penalty, int):
        raise DefinitionError(
            "document: field 'wrong_flag_penalty' must be an integer",
            field="wrong_flag_penalty",
        )

    aliases = doc.get("event_aliases", {})
    if not isinstance(aliases, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in aliases.items()
    ):
        raise DefinitionError(
            "document: field 'event_aliases' must map strings to strings",
            field="event_aliases",
        )

    levels = []
    for i, raw in enumerate(raw_levels):
        if not isinstance(raw, dict):
            raise DefinitionError(f"levels[{i}]: must be an object", field="levels")
        where = f"levels[{i}]"
        order = _require(raw, "order", int, where)
        hints = []
        for j, hint_raw in enumerate(raw.get("hints", [])):
            if not isinstance(hint_raw, dict):
                raise DefinitionError(f"{where}.hints[{j}]: must be an object", field="hints")
            hints.append(
                HintDefinition(
                    number=_require(hint_raw, "number", int, f"{where}.hints[{j}]"),
                    title=hint_raw.get("title", ""),
                    penalty=_require(hint_raw, "penalty", int, f"{where}.hints[{j}]"),
                )
            )
        levels.append(
            LevelDefinition(
                order=order,
                name=_require(raw, "name", str, where),
                max_points=_require(raw, "max_points", int, where),
                hints=tuple(hints),
                estimated_duration_s=_require(raw, "estimated_duration_s", int, where),
            )
        )
    levels.sort(key=lambda lvl: lvl.order)

    return GameDefinition(
        game_id=game_id,
        title=title,
        levels=tuple(levels),
        wrong_flag_penalty=wrong_flag_penalty,
        total_max=total_max,
        event_aliases=dict(aliases),
    )


def serialize_game_definition(definition: GameDefinition) -> str:
    """Emit the canonical JSON document for a definition (load round-trips)."""
    doc = {
        "game_id": definition.game_id,
        "title": definition.title,
        "wrong_flag_penalty": definition.wrong_flag_penalty,
        "total_max": definition.total_max,
        "levels": [
            {
                "order": lvl.order,
                "name": lvl.name,
                "max_points": lvl.max_points,
                "estimated_duration_s": lvl.estimated_duration_s,
                "hints": [
                    {"number": h.number, "title": h.title, "penalty": h.penalty}
                    for h in lvl.hints
                ],
            }
            for lvl in definition.levels
        ],
    }
    if definition.event_aliases:
        doc["event_aliases"] = dict(definition.event_aliases)
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"
