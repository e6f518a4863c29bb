"""Presenting records in another language through direct translation tables.

Only known items are translated: slot names, type names and closed-class
values found in the locale's lexicon. Everything else (proper names,
descriptive strings) is passed through unchanged and reported as
untranslated. Dates and amounts are re-rendered with the locale format.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType

from infoextract.dates import NormalizedDate, check_date_pattern, render_date
from infoextract.errors import ResourceError
from infoextract.records import INDENT, EntityRecord, is_ref, separator

IDENTITY_LOCALE = "en"
_AMOUNT = re.compile(r"(-?)(\d+)(?:\.(\d+))? (\S+)")


@dataclass(frozen=True)
class Lexicon:
    locale: str
    entries: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __len__(self):
        return len(self.entries)

    @property
    def is_identity(self):
        return self.locale == IDENTITY_LOCALE

    def lookup(self, term: str):
        """Translation of `term`, or None when the table has no entry."""
        if self.is_identity:
            return self.entries.get(term, term)
        return self.entries.get(term)


def load_lexicon(source: str, origin=None) -> Lexicon:
    locale = None
    entries = {}
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if locale is None:
            key, _, value = line.partition(":")
            if key.strip() != "locale" or not value.strip():
                raise ResourceError("lexicon must start with 'locale: <tag>'", lineno, origin)
            locale = value.strip()
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0].strip() or not fields[1].strip():
            raise ResourceError("expected source<TAB>translation", lineno, origin)
        src, dst = fields[0].strip(), fields[1].strip()
        if src in entries:
            raise ResourceError(f"duplicate source term {src!r}", lineno, origin)
        entries[src] = dst
    if locale is None:
        raise ResourceError("missing locale header", None, origin)
    return Lexicon(locale, MappingProxyType(entries))


def read_lexicon(path) -> Lexicon:
    path = Path(path)
    return load_lexicon(path.read_text(encoding="utf-8"), origin=path)


@dataclass(frozen=True)
class LocaleFormat:
    date_pattern: str = "dd/mm/yyyy"
    decimal: str = "."
    group: str = ""

    def __post_init__(self):
        check_date_pattern(self.date_pattern)
        if len(self.decimal) != 1:
            raise ValueError("decimal separator must be one character")
        if len(self.group) > 1 or self.group == self.decimal or self.group.isdigit():
            raise ValueError(f"bad group separator {self.group!r}")

    def number(self, integer: str, fraction: str | None = None, sign: str = "") -> str:
        if self.group:
            head = len(integer) % 3 or 3
            parts = [integer[:head]] + [integer[k:k + 3] for k in range(head, len(integer), 3)]
            integer = self.group.join(parts)
        return sign + integer + (self.decimal + fraction if fraction else "")


def load_locale_format(source: str, origin=None) -> LocaleFormat:
    values = {}
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not eq or key not in ("date_pattern", "decimal", "group"):
            raise ResourceError(f"unknown format line {line!r}", lineno, origin)
        if value.startswith('"'):
            try:
                value = json.loads(value)
            except json.JSONDecodeError:
                raise ResourceError(f"bad quoted value {value}", lineno, origin) from None
        values[key] = value
    try:
        return LocaleFormat(**values)
    except ValueError as exc:
        raise ResourceError(str(exc), None, origin) from None


def read_locale_format(path) -> LocaleFormat:
    path = Path(path)
    return load_locale_format(path.read_text(encoding="utf-8"), origin=path)


class _Localizer:
    def __init__(self, lex, fmt):
        self.lex = lex
        self.fmt = fmt
        self.untranslated = []

    def term(self, text):
        out = self.lex.lookup(text)
        if out is None:
            if text not in self.untranslated:
                self.untranslated.append(text)
            return text
        return out

    def amount(self, text):
        m = _AMOUNT.fullmatch(text)
        if m is None:
            return self.term(text)
        sign, integer, fraction, currency = m.groups()
        return f"{self.fmt.number(integer, fraction, sign)} {currency}"

    def value(self, slot, value):
        if isinstance(value, NormalizedDate):
            return render_date(value, self.fmt.date_pattern)
        if isinstance(value, tuple):
            return separator(slot).join(self.value(slot, v) for v in value)
        if is_ref(value):
            return value
        if slot == "amount":
            return self.amount(value)
        return self.term(value)


def _localize(record, loc: _Localizer) -> str:
    lines = [loc.term(record.header), f"{INDENT}{loc.term('id')}: {record.id}"]
    if isinstance(record, EntityRecord):
        lines.append(f"{INDENT}{loc.term('type')}: {loc.term(record.type)}")
    for slot, value in record.slots.items():
        lines.append(f"{INDENT}{loc.term(slot)}: {loc.value(slot, value)}")
    return "\n".join(lines)


def localize_record(record, lex: Lexicon, fmt: LocaleFormat | None = None):
    """Localized text of one record and the items left untranslated."""
    loc = _Localizer(lex, fmt or LocaleFormat())
    return _localize(record, loc), loc.untranslated


def localize_records(entities, events=(), lex: Lexicon | None = None, fmt: LocaleFormat | None = None):
    """Localize a whole record set; returns ``(text, untranslated)``.

    The text mirrors canonical emission: same record and slot order, blank
    lines between records.
    """
    if lex is None:
        lex = Lexicon(IDENTITY_LOCALE)
    loc = _Localizer(lex, fmt or LocaleFormat())
    records = [*entities, *events]
    if not records:
        return "", []
    text = "\n\n".join(_localize(r, loc) for r in records) + "\n"
    return text, loc.untranslated
