"""Entity and event records, and their text formats.

The canonical record format puts the record's name (the event type for
events) on its own line, followed by indented ``slot: value`` lines::

    Frederick J. Thompson
        id: ENTITY-5
        type: person
        aliases: Thompson; Fred
        employer: ENTITY-6

Alias lists are joined with "; ", every other list with ", ". Records are
separated by a blank line and entities come before events. Lines starting
with ``#`` in the first column are comments.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from infoextract.dates import NormalizedDate, normalize_date
from infoextract.errors import ConsistencyError, DateNormalizationError, ResourceError

Value = Union[str, NormalizedDate, tuple]

INDENT = "    "
ENTITY_ID = re.compile(r"ENTITY-[1-9][0-9]*")
EVENT_ID = re.compile(r"EVENT-[1-9][0-9]*")
ENTITY_SLOT_ORDER = (
    "subtype",
    "aliases",
    "normalisation",
    "location",
    "domicile",
    "profession",
    "employer",
    "business",
    "class",
    "is_in",
)
_SLOT_LINE = re.compile(r"\s+([A-Za-z_][\w-]*):(?: (.*))?")


def is_ref(value) -> bool:
    return isinstance(value, str) and bool(ENTITY_ID.fullmatch(value))


def canonical_value(value) -> Value:
    """Lists of one collapse to their element; other lists become tuples."""
    if isinstance(value, (list, tuple)):
        items = tuple(value)
        if not items:
            raise ValueError("empty list value")
        return items[0] if len(items) == 1 else items
    if isinstance(value, (str, NormalizedDate)):
        return value
    raise TypeError(f"unsupported slot value {value!r}")


def separator(slot: str) -> str:
    return "; " if slot == "aliases" else ", "


def _order_entity_slots(slots):
    rank = {name: k for k, name in enumerate(ENTITY_SLOT_ORDER)}
    keyed = sorted(enumerate(slots.items()), key=lambda kv: (rank.get(kv[1][0], len(rank)), kv[0]))
    return {k: v for _, (k, v) in keyed}


@dataclass
class EntityRecord:
    id: str
    name: str
    type: str
    slots: dict = field(default_factory=dict)
    occurrences: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        self.slots = _order_entity_slots({k: canonical_value(v) for k, v in self.slots.items()})

    def set(self, slot: str, value) -> None:
        if slot in ("id", "type"):
            raise ValueError(f"{slot!r} is not a free slot")
        self.slots[slot] = canonical_value(value)
        self.slots = _order_entity_slots(self.slots)

    @property
    def aliases(self) -> tuple:
        value = self.slots.get("aliases")
        if value is None:
            return ()
        return value if isinstance(value, tuple) else (value,)

    @property
    def header(self):
        return self.name


@dataclass
class EventRecord:
    id: str
    event_type: str
    slots: dict = field(default_factory=dict)
    triggers: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        self.slots = {k: canonical_value(v) for k, v in self.slots.items()}

    @property
    def header(self):
        return self.event_type


def iter_values(value):
    if isinstance(value, tuple):
        yield from value
    else:
        yield value


def references(record) -> list[str]:
    return [v for value in record.slots.values() for v in iter_values(value) if is_ref(v)]


def check_references(entities, events=()) -> None:
    ids = {e.id for e in entities}
    for record in [*entities, *events]:
        for ref in references(record):
            if ref not in ids:
                raise ConsistencyError(f"{record.id} refers to missing {ref}")


def format_value(slot: str, value: Value) -> str:
    if isinstance(value, NormalizedDate):
        return value.render()
    if isinstance(value, tuple):
        sep = separator(slot)
        for item in value:
            if not isinstance(item, str) or sep in item:
                raise ValueError(f"list item {item!r} of slot {slot!r} cannot be emitted")
        return sep.join(value)
    if separator(slot) in value or "\n" in value or not value.strip():
        raise ValueError(f"value {value!r} of slot {slot!r} cannot be emitted")
    return value


def record_lines(record) -> list[str]:
    header = record.header
    if not header or header != header.strip() or "\n" in header or header.startswith("#"):
        raise ValueError(f"record name {header!r} cannot be emitted")
    lines = [header, f"{INDENT}id: {record.id}"]
    if isinstance(record, EntityRecord):
        lines.append(f"{INDENT}type: {record.type}")
    for slot, value in record.slots.items():
        lines.append(f"{INDENT}{slot}: {format_value(slot, value)}")
    return lines


def emit_records(entities, events=(), fmt: str = "records") -> str:
    records = [*entities, *events]
    if fmt == "tabular":
        return emit_tabular(records)
    if fmt != "records":
        raise ValueError(f"unknown output format {fmt!r}")
    if not records:
        return ""
    return "\n\n".join("\n".join(record_lines(r)) for r in records) + "\n"


def emit_tabular(records) -> str:
    """One TAB-separated row per slot fill: id, type, slot, value."""
    if not records:
        return ""
    rows = ["id\ttype\tslot\tvalue"]
    for r in records:
        kind = r.type if isinstance(r, EntityRecord) else r.event_type
        rows.append(f"{r.id}\t{kind}\tname\t{r.header}")
        for slot, value in r.slots.items():
            if isinstance(value, NormalizedDate):
                rows.append(f"{r.id}\t{kind}\t{slot}\t{value.render()}")
                continue
            for item in iter_values(value):
                rows.append(f"{r.id}\t{kind}\t{slot}\t{item}")
    return "\n".join(rows) + "\n"


def _parse_value(slot, text, lineno, origin):
    if slot == "normalisation":
        try:
            return normalize_date(text)
        except DateNormalizationError as exc:
            raise ResourceError(str(exc), lineno, origin) from None
    sep = separator(slot)
    if sep in text:
        return tuple(text.split(sep))
    return text


def _finish(block, origin):
    header, header_line, slots = block
    if not slots or slots[0][0] != "id":
        raise ResourceError(f"record {header!r} must start with an id slot", header_line, origin)
    rid = slots[0][1]
    rest = slots[1:]
    if ENTITY_ID.fullmatch(rid):
        if not rest or rest[0][0] != "type":
            raise ResourceError(f"entity {rid} has no type slot", header_line, origin)
        values = {}
        for slot, text, lineno in rest[1:]:
            if slot in values or slot in ("id", "type"):
                raise ResourceError(f"repeated slot {slot!r}", lineno, origin)
            values[slot] = _parse_value(slot, text, lineno, origin)
        return EntityRecord(rid, header, rest[0][1], values)
    if EVENT_ID.fullmatch(rid):
        values = {}
        for slot, text, lineno in rest:
            if slot in values or slot == "id":
                raise ResourceError(f"repeated slot {slot!r}", lineno, origin)
            values[slot] = _parse_value(slot, text, lineno, origin)
        return EventRecord(rid, header, values)
    raise ResourceError(f"malformed record id {rid!r}", header_line, origin)


def parse_records(text: str, origin=None):
    """Parse canonical record text into ``(entities, events)``."""
    blocks = []
    current = None
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            current = None
            continue
        if line.startswith("#"):
            continue
        if not line[0].isspace():
            current = (line, lineno, [])
            blocks.append(current)
            continue
        m = _SLOT_LINE.fullmatch(line)
        if current is None or not m or not m.group(2) or not m.group(2).strip():
            raise ResourceError(f"malformed slot line {line.strip()!r}", lineno, origin)
        current[2].append((m.group(1), m.group(2), lineno))

    entities, events, seen = [], [], set()
    for block in blocks:
        record = _finish(block, origin)
        if record.id in seen:
            raise ResourceError(f"duplicate id {record.id}", block[1], origin)
        seen.add(record.id)
        (entities if isinstance(record, EntityRecord) else events).append(record)
    return entities, events


def read_records(path):
    path = Path(path)
    return parse_records(path.read_text(encoding="utf-8"), origin=path)
