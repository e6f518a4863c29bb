"""Documents, character spans, tokens and sentences.

Offsets count Unicode code points (Python string indices), so a span means
the same thing whatever encoding the text came from.
"""
from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from infoextract.errors import BoundsError

ABBREVIATIONS = frozenset(
    ["Inc.", "Ltd.", "Corp.", "Co.", "J.", "Mr.", "Mrs.", "Ms.", "Dr.", "St.", "Jr.", "Sr.", "Prof."]
)

WORD = "word"
NUMBER = "number"
PUNCTUATION = "punctuation"
SYMBOL = "symbol"

# letters/digits; hyphens join letter runs ("Downing-Jones"), "." and "," join digit runs ("1,000.50")
_ALNUM = re.compile(
    r"[^\W_]+(?:(?<=[^\W\d_])-(?=[^\W\d_])[^\W_]+|(?<=\d)[.,](?=\d)[^\W_]+)*"
)
_NUMBER = re.compile(r"\d+(?:[.,]\d+)*")
_BLANK_LINE = re.compile(r"\n[^\S\n]*\n")

TERMINATORS = frozenset(".!?")
_CLOSERS = frozenset("\"')]”’")


@dataclass(frozen=True)
class Document:
    text: str
    source_id: str = "doc"

    @classmethod
    def from_file(cls, path, source_id=None) -> "Document":
        path = Path(path)
        text = path.read_text(encoding="utf-8")
        return cls(text, source_id if source_id is not None else path.name)

    def __len__(self):
        return len(self.text)


@dataclass(frozen=True, order=True)
class Span:
    start: int
    end: int

    def __post_init__(self):
        if self.start < 0 or self.end < self.start:
            raise BoundsError(f"invalid span [{self.start}, {self.end})")

    def __len__(self):
        return self.end - self.start

    def overlaps(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end

    def contains(self, other: "Span") -> bool:
        return self.start <= other.start and other.end <= self.end


@dataclass(frozen=True)
class Token:
    span: Span
    kind: str
    surface: str

    @property
    def start(self):
        return self.span.start

    @property
    def end(self):
        return self.span.end


@dataclass(frozen=True)
class Sentence:
    span: Span
    token_range: range


def span_text(doc: Document, s: Span) -> str:
    if s.start == s.end:
        raise BoundsError(f"empty span at {s.start}")
    if s.end > len(doc.text):
        raise BoundsError(f"span [{s.start}, {s.end}) exceeds document length {len(doc.text)}")
    return doc.text[s.start:s.end]


def _char_kind(ch):
    return PUNCTUATION if unicodedata.category(ch).startswith("P") else SYMBOL


def is_abbreviation(word: str, abbreviations=ABBREVIATIONS) -> bool:
    """`word` includes its trailing period. Single capital letters count as initials."""
    if word in abbreviations:
        return True
    return len(word) == 2 and word[0].isupper() and word[0].isalpha()


def tokenize(doc: Document, abbreviations=ABBREVIATIONS) -> list[Token]:
    text = doc.text
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _ALNUM.match(text, i)
        if m:
            end = m.end()
            surface = m.group()
            if end < n and text[end] == "." and is_abbreviation(surface + ".", abbreviations):
                end += 1
                surface += "."
            kind = NUMBER if _NUMBER.fullmatch(surface) else WORD
            tokens.append(Token(Span(i, end), kind, surface))
            i = end
            continue
        tokens.append(Token(Span(i, i + 1), _char_kind(ch), ch))
        i += 1
    return tokens


def split_sentences(doc: Document, tokens: list[Token]) -> list[Sentence]:
    """Break after standalone terminator tokens and at blank lines.

    Closing quotes or brackets glued to a terminator stay with its sentence.
    """
    sentences = []
    start = 0
    i = 0
    n = len(tokens)

    def close(stop):
        nonlocal start
        if stop > start:
            span = Span(tokens[start].start, tokens[stop - 1].end)
            sentences.append(Sentence(span, range(start, stop)))
        start = stop

    while i < n:
        tok = tokens[i]
        if tok.surface in TERMINATORS:
            j = i + 1
            while (
                j < n
                and tokens[j].surface in TERMINATORS | _CLOSERS
                and tokens[j].start == tokens[j - 1].end
            ):
                j += 1
            close(j)
            i = j
            continue
        if i + 1 < n and _BLANK_LINE.search(doc.text, tok.end, tokens[i + 1].start):
            close(i + 1)
        i += 1
    close(n)
    return sentences


def sentence_index(sentences: list[Sentence]) -> list[int]:
    """Map each token index to the index of its sentence."""
    out = []
    for k, s in enumerate(sentences):
        out.extend([k] * len(s.token_range))
    return out
