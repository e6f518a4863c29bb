"""Normalisation of date, time and money expressions."""
from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Optional

from infoextract.errors import DateNormalizationError

MONTHS = {
    "january": 1, "february": 2, "march": 3, "april": 4, "may": 5, "june": 6,
    "july": 7, "august": 8, "september": 9, "october": 10, "november": 11, "december": 12,
    "jan": 1, "feb": 2, "mar": 3, "apr": 4, "jun": 6, "jul": 7, "aug": 8,
    "sep": 9, "sept": 9, "oct": 10, "nov": 11, "dec": 12,
}
WEEKDAYS = frozenset(
    "monday tuesday wednesday thursday friday saturday sunday "
    "mon tue tues wed thu thur thurs fri sat sun".split()
)
RELATIVE = frozenset("today yesterday tomorrow tonight now".split())
_FILLER = frozenset(["of", "the"])

_CANONICAL = re.compile(r"\s*(\d{1,2}|\?)\s*/\s*(\d{1,2}|\?)\s*/\s*(\d{1,4}|\?)\s*")
_WORD = re.compile(r"[A-Za-z]+|\d+(?:st|nd|rd|th)?|[^\sA-Za-z\d]")


@dataclass(frozen=True)
class NormalizedDate:
    day: Optional[int] = None
    month: Optional[int] = None
    year: Optional[int] = None

    def __post_init__(self):
        if self.day is not None and not 1 <= self.day <= 31:
            raise ValueError(f"day out of range: {self.day}")
        if self.month is not None and not 1 <= self.month <= 12:
            raise ValueError(f"month out of range: {self.month}")
        if self.year is not None and self.year < 0:
            raise ValueError(f"negative year: {self.year}")

    def render(self, pattern="dd/mm/yyyy") -> str:
        return render_date(self, pattern)

    def __str__(self):
        return self.render()


_PATTERN_PART = re.compile(r"dd|d|mm|m|yyyy|y")


def render_date(date: NormalizedDate, pattern: str = "dd/mm/yyyy") -> str:
    """Render with a pattern built from dd/d, mm/m, yyyy/y and literal separators.

    Doubled letters zero-pad; unknown components always render as "?".
    """

    def part(m):
        code = m.group()
        value = {"d": date.day, "m": date.month, "y": date.year}[code[0]]
        if value is None:
            return "?"
        if code in ("dd", "mm"):
            return f"{value:02d}"
        return str(value)

    return _PATTERN_PART.sub(part, pattern)


def check_date_pattern(pattern: str) -> None:
    seen = [m.group()[0] for m in _PATTERN_PART.finditer(pattern)]
    for c in "dmy":
        if seen.count(c) > 1:
            raise ValueError(f"date pattern {pattern!r} mentions {c!r} more than once")


def normalize_date(surface: str) -> NormalizedDate:
    """Normalise a date expression.

    Accepts the canonical ``dd/mm/yyyy`` rendering (with ``?`` for unknown
    parts) as well as written forms such as "Wednesday 12 July 1996",
    "July 12, 1996", "July 1996" and "1989". Weekday names are dropped and
    relative words ("today", "yesterday") give an all-unknown date.
    """
    m = _CANONICAL.fullmatch(surface)
    if m:
        d, mo, y = (None if g == "?" else int(g) for g in m.groups())
        try:
            return NormalizedDate(d, mo, y)
        except ValueError as exc:
            raise DateNormalizationError(f"{surface!r}: {exc}") from None

    words = _WORD.findall(surface)
    if not words:
        raise DateNormalizationError(f"empty date expression: {surface!r}")
    lowered = [w.lower() for w in words]
    content = [w for w in lowered if w not in ",."]
    if content and all(w in RELATIVE or w in _FILLER for w in content):
        return NormalizedDate()

    day = month = year = None
    for w in lowered:
        if w in ",." or w in _FILLER or w in WEEKDAYS:
            continue
        if w.rstrip(".") in MONTHS:
            if month is not None:
                raise DateNormalizationError(f"two months in {surface!r}")
            month = MONTHS[w.rstrip(".")]
            continue
        digits = re.fullmatch(r"(\d+)(st|nd|rd|th)?", w)
        if digits:
            value = int(digits.group(1))
            if len(digits.group(1)) >= 3 and digits.group(2) is None:
                if year is not None:
                    raise DateNormalizationError(f"two years in {surface!r}")
                year = value
                continue
            if 1 <= value <= 31 and day is None:
                day = value
                continue
        raise DateNormalizationError(f"cannot normalise {surface!r} (at {w!r})")
    if day is None and month is None and year is None:
        raise DateNormalizationError(f"no date components in {surface!r}")
    return NormalizedDate(day, month, year)


@dataclass(frozen=True)
class Money:
    amount: Decimal
    currency: str

    def __str__(self):
        return f"{self.amount} {self.currency}"


def normalize_money(number: str, currency: str, factor: str | int = 1) -> Money:
    try:
        amount = Decimal(number.replace(",", "")) * Decimal(factor)
    except InvalidOperation:
        raise ValueError(f"not an amount: {number!r}") from None
    if amount == amount.to_integral_value():
        amount = Decimal(int(amount))
    return Money(amount, currency)


_TIME = re.compile(r"(\d{1,2})\s*(?::\s*(\d{2}))?\s*(am|pm|a\.m\.|p\.m\.)?", re.I)


def normalize_time(surface: str) -> str:
    """"3:30 pm" -> "15:30"."""
    m = _TIME.fullmatch(surface.strip())
    if not m:
        raise DateNormalizationError(f"cannot normalise time {surface!r}")
    hour = int(m.group(1))
    minute = int(m.group(2) or 0)
    meridiem = (m.group(3) or "").lower().replace(".", "")
    if meridiem == "pm" and hour < 12:
        hour += 12
    elif meridiem == "am" and hour == 12:
        hour = 0
    if hour > 23 or minute > 59:
        raise DateNormalizationError(f"time out of range: {surface!r}")
    return f"{hour:02d}:{minute:02d}"
