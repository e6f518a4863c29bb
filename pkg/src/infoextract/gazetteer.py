"""Gazetteer (name list) loading and lookup.

File format, one entry per line::

    surface<TAB>class[<TAB>key=value[,key=value...]]

``#`` starts a comment. Three attribute keys are reserved:

``case=insensitive``
    match regardless of letter case (entries are case sensitive by default)
``part=<role>``
    a rule component (month name, currency symbol, title...); such entries
    are only used inside patterns and never produce a mention on their own
``name=<canonical>``
    the name a record built from this mention should carry
"""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from infoextract.errors import ResourceError
from infoextract.ontology import ENTITY_CLASSES
from infoextract.text import Document, tokenize

RESERVED = frozenset(["case", "part", "name"])
_KEY = re.compile(r"[a-z_][a-z0-9_]*")


def parse_attributes(text: str, line=None, source=None) -> dict:
    attrs = {}
    text = text.strip()
    if not text:
        return attrs
    for item in text.split(","):
        key, eq, value = item.partition("=")
        key = key.strip()
        if not eq or not _KEY.fullmatch(key):
            raise ResourceError(f"bad attribute {item!r}", line, source)
        attrs[key] = value.strip()
    return attrs


@dataclass(frozen=True)
class GazetteerEntry:
    surface: str
    entity_class: str
    attributes: dict = field(default_factory=dict, hash=False)
    case_sensitive: bool = True
    tokens: tuple = field(default=(), compare=False, hash=False)

    @property
    def part(self):
        return self.attributes.get("part")

    def key(self, i=0):
        tok = self.tokens[i]
        return tok if self.case_sensitive else tok.casefold()


def _surface_tokens(surface):
    return tuple(t.surface for t in tokenize(Document(surface)))


class Gazetteer:
    def __init__(self, entries=()):
        self.entries: list[GazetteerEntry] = []
        self._by_first = defaultdict(list)
        self._seen = set()
        for e in entries:
            self.add(e)

    def add(self, entry: GazetteerEntry) -> None:
        if not entry.surface.strip():
            raise ValueError("empty gazetteer surface")
        if entry.entity_class not in ENTITY_CLASSES:
            raise ValueError(f"unknown entity class {entry.entity_class!r}")
        if (entry.surface, entry.entity_class) in self._seen:
            raise ValueError(f"duplicate entry {entry.surface!r} ({entry.entity_class})")
        if not entry.tokens:
            entry = GazetteerEntry(
                entry.surface,
                entry.entity_class,
                dict(entry.attributes),
                entry.case_sensitive,
                _surface_tokens(entry.surface),
            )
        self._seen.add((entry.surface, entry.entity_class))
        self.entries.append(entry)
        self._by_first[entry.tokens[0].casefold()].append(entry)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def matches_at(self, tokens, pos, entity_class=None, attrs=None):
        """Yield (end, entry) for every entry whose tokens start at `pos`."""
        if pos >= len(tokens):
            return
        for entry in self._by_first.get(tokens[pos].surface.casefold(), ()):
            if entity_class is not None and entry.entity_class != entity_class:
                continue
            if attrs and any(entry.attributes.get(k) != v for k, v in attrs.items()):
                continue
            end = pos + len(entry.tokens)
            if end > len(tokens):
                continue
            window = tokens[pos:end]
            if entry.case_sensitive:
                ok = all(t.surface == s for t, s in zip(window, entry.tokens))
            else:
                ok = all(t.surface.casefold() == s.casefold() for t, s in zip(window, entry.tokens))
            if ok:
                yield end, entry


def load_gazetteer(source: str, origin=None) -> Gazetteer:
    gaz = Gazetteer()
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) < 2 or len(fields) > 3:
            raise ResourceError("expected surface<TAB>class[<TAB>attributes]", lineno, origin)
        surface, cls = fields[0].strip(), fields[1].strip()
        if not surface:
            raise ResourceError("empty surface", lineno, origin)
        if cls not in ENTITY_CLASSES:
            raise ResourceError(f"unknown entity class {cls!r}", lineno, origin)
        attrs = parse_attributes(fields[2], lineno, origin) if len(fields) == 3 else {}
        case = attrs.pop("case", "sensitive")
        if case not in ("sensitive", "insensitive"):
            raise ResourceError(f"case must be sensitive or insensitive, not {case!r}", lineno, origin)
        try:
            gaz.add(GazetteerEntry(surface, cls, attrs, case == "sensitive"))
        except ValueError as exc:
            raise ResourceError(str(exc), lineno, origin) from None
    return gaz


def read_gazetteer(path) -> Gazetteer:
    path = Path(path)
    return load_gazetteer(path.read_text(encoding="utf-8"), origin=path)
