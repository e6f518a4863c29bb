"""Token-sequence patterns shared by the name rules and the event triggers.

A pattern is a space-separated list of atoms, each optionally followed by a
quantifier ``+``, ``*`` or ``?``:

    "Inc."            literal token surface
    <location>        a class match supplied by the caller (gazetteer entry,
    <date:part=month>   entity occurrence, ...), optionally filtered by attributes
    {capitalized}     orthography or token-kind test
    /[0-9]{4}/        regular expression over one token surface

Matching backtracks, so ``{capitalized}+ "Inc."`` finds "Jay Street Imports Inc."
even though "Inc." is itself capitalized.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from infoextract.text import NUMBER, PUNCTUATION, SYMBOL, WORD, Token

_ATOM = re.compile(
    r"""\s*(?:
        "(?P<lit>(?:[^"\\]|\\.)*)"
      | <(?P<cls>[^>]+)>
      | \{(?P<test>[^}]+)\}
      | /(?P<re>(?:[^/\\]|\\.)+)/
    )(?P<q>[+*?]?)""",
    re.X,
)


def _alpha(s):
    return any(c.isalpha() for c in s)


TESTS = {
    "capitalized": lambda t: t.surface[:1].isupper(),
    "all-caps": lambda t: _alpha(t.surface) and t.surface.isupper(),
    "lowercase": lambda t: t.surface[:1].islower(),
    "digits": lambda t: t.kind == NUMBER,
    "word": lambda t: t.kind == WORD,
    "number": lambda t: t.kind == NUMBER,
    "punctuation": lambda t: t.kind == PUNCTUATION,
    "symbol": lambda t: t.kind == SYMBOL,
}


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class Literal:
    text: str
    casefold: bool = False

    def ends(self, ctx, pos):
        tok = ctx.tokens[pos]
        if tok.surface == self.text or (self.casefold and tok.surface.casefold() == self.text.casefold()):
            return (pos + 1,)
        return ()


@dataclass(frozen=True)
class ClassRef:
    name: str
    attrs: tuple = ()

    def ends(self, ctx, pos):
        return ctx.class_ends(pos, self.name, dict(self.attrs))


@dataclass(frozen=True)
class Test:
    name: str

    def ends(self, ctx, pos):
        return (pos + 1,) if TESTS[self.name](ctx.tokens[pos]) else ()


@dataclass(frozen=True)
class Regex:
    source: str
    compiled: re.Pattern = field(compare=False, repr=False, default=None)

    def ends(self, ctx, pos):
        return (pos + 1,) if self.compiled.fullmatch(ctx.tokens[pos].surface) else ()


@dataclass(frozen=True)
class Pattern:
    source: str
    atoms: tuple  # of (atom, quantifier)

    def __len__(self):
        return len(self.atoms)

    def class_names(self):
        return [a.name for a, _ in self.atoms if isinstance(a, ClassRef)]

    def match_ends(self, ctx, pos: int) -> set[int]:
        """All token positions where a match starting at `pos` can end."""
        atoms = self.atoms
        n_tokens = len(ctx.tokens)
        out: set[int] = set()

        @lru_cache(maxsize=None)
        def walk(i, p, repeating):
            if i == len(atoms):
                out.add(p)
                return
            atom, q = atoms[i]
            if q in ("?", "*") or repeating:
                walk(i + 1, p, False)
            if p >= n_tokens:
                return
            for end in atom.ends(ctx, p):
                if end <= p:
                    continue
                if q in ("+", "*"):
                    walk(i, end, True)
                else:
                    walk(i + 1, end, False)

        walk(0, pos, False)
        return out

    def longest(self, ctx, pos: int):
        ends = self.match_ends(ctx, pos)
        ends.discard(pos)
        return max(ends) if ends else None


def _parse_class(body):
    name, _, filt = body.partition(":")
    attrs = []
    if filt:
        for item in filt.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise PatternError(f"bad attribute filter {item!r} in <{body}>")
            attrs.append((key.strip(), value.strip()))
    return ClassRef(name.strip(), tuple(attrs))


def parse_pattern(source: str, casefold_literals: bool = False) -> Pattern:
    atoms = []
    pos = 0
    text = source.rstrip()
    while pos < len(text):
        m = _ATOM.match(text, pos)
        if not m or m.end() == pos:
            raise PatternError(f"cannot parse pattern at {text[pos:]!r}")
        if m.group("lit") is not None:
            lit = re.sub(r"\\(.)", r"\1", m.group("lit"))
            if not lit:
                raise PatternError("empty literal")
            atom = Literal(lit, casefold_literals)
        elif m.group("cls") is not None:
            atom = _parse_class(m.group("cls"))
        elif m.group("test") is not None:
            name = m.group("test").strip()
            if name not in TESTS:
                raise PatternError(f"unknown token test {{{name}}}")
            atom = Test(name)
        else:
            src = m.group("re").replace("\\/", "/")
            try:
                atom = Regex(src, re.compile(src))
            except re.error as exc:
                raise PatternError(f"bad regex /{src}/: {exc}") from None
        atoms.append((atom, m.group("q")))
        pos = m.end()
    if not atoms:
        raise PatternError("empty pattern")
    return Pattern(source.strip(), tuple(atoms))


class TokenContext:
    """Minimal matching context: tokens plus a class resolver."""

    def __init__(self, tokens: list[Token], resolver=None):
        self.tokens = tokens
        self._resolver = resolver

    def class_ends(self, pos, name, attrs):
        if self._resolver is None:
            return ()
        return self._resolver(pos, name, attrs)
