"""Named entity recognition from gazetteers and token-pattern rules.

Rule file format, one rule per line::

    id<TAB>pattern<TAB>class[<TAB>key=value,...]

Rules are prioritised in file order; gazetteer entries outrank every rule.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from infoextract.dates import normalize_date, normalize_money, normalize_time
from infoextract.errors import DateNormalizationError, ResourceError
from infoextract.gazetteer import Gazetteer, parse_attributes
from infoextract.names import edit_distance, has_corporate_suffix, strip_corporate_suffix
from infoextract.ontology import ENTITY_CLASSES, ORGANISATION_CLASSES
from infoextract.patterns import Pattern, PatternError, TokenContext, parse_pattern
from infoextract.text import WORD, Document, Span, Token

logger = logging.getLogger(__name__)

GAZETTEER_PRIORITY = 0


@dataclass(frozen=True)
class Mention:
    span: Span
    entity_class: str
    surface: str
    attributes: dict = field(default_factory=dict, hash=False)
    normalized: object = None
    token_start: int = field(default=0, compare=False)
    token_end: int = field(default=0, compare=False)
    source: str = field(default="", compare=False)

    @property
    def canonical(self) -> str:
        """Name a record should use: the gazetteer's ``name=`` if any, else the
        surface with line breaks and runs of spaces collapsed."""
        return self.attributes.get("name") or " ".join(self.surface.split())

    @property
    def start(self):
        return self.span.start

    @property
    def end(self):
        return self.span.end


@dataclass(frozen=True)
class NeRule:
    id: str
    pattern: Pattern
    entity_class: str
    attributes: dict = field(default_factory=dict, hash=False)


def load_ne_rules(source: str, origin=None) -> list[NeRule]:
    rules = []
    seen = set()
    for lineno, raw in enumerate(source.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        fields = raw.rstrip("\r\n").split("\t")
        if len(fields) not in (3, 4):
            raise ResourceError("expected id<TAB>pattern<TAB>class[<TAB>attributes]", lineno, origin)
        rule_id, pattern_src, cls = (f.strip() for f in fields[:3])
        if rule_id in seen:
            raise ResourceError(f"duplicate rule id {rule_id!r}", lineno, origin)
        if cls not in ENTITY_CLASSES:
            raise ResourceError(f"unknown entity class {cls!r}", lineno, origin)
        try:
            pattern = parse_pattern(pattern_src)
        except PatternError as exc:
            raise ResourceError(str(exc), lineno, origin) from None
        for name in pattern.class_names():
            if name not in ENTITY_CLASSES:
                raise ResourceError(f"unknown entity class <{name}> in pattern", lineno, origin)
        attrs = parse_attributes(fields[3], lineno, origin) if len(fields) == 4 else {}
        seen.add(rule_id)
        rules.append(NeRule(rule_id, pattern, cls, attrs))
    return rules


def read_ne_rules(path) -> list[NeRule]:
    path = Path(path)
    return load_ne_rules(path.read_text(encoding="utf-8"), origin=path)


def _gazetteer_resolver(tokens, gaz):
    def resolve(pos, name, attrs):
        out = []
        for end, entry in gaz.matches_at(tokens, pos, name, attrs):
            if "part" not in attrs and entry.part is not None:
                continue
            out.append(end)
        return out

    return resolve


def _normalize(entity_class, tokens, start, end, surface, gaz, attrs):
    if entity_class == "date":
        return normalize_date(surface)
    if entity_class == "time":
        return normalize_time(surface)
    if entity_class == "money":
        currency = attrs.get("currency")
        factor = 1
        number = None
        for i in range(start, end):
            if tokens[i].kind == "number" and number is None:
                number = tokens[i].surface
            for _, entry in gaz.matches_at(tokens, i, "money"):
                if "currency" in entry.attributes:
                    currency = entry.attributes["currency"]
                if "factor" in entry.attributes:
                    factor = entry.attributes["factor"]
        if number is None or currency is None:
            raise ValueError(f"incomplete amount {surface!r}")
        return normalize_money(number, currency, factor)
    return None


def _make_mention(doc, tokens, start, end, entity_class, attrs, gaz, source):
    span = Span(tokens[start].start, tokens[end - 1].end)
    surface = doc.text[span.start:span.end]
    try:
        normalized = _normalize(entity_class, tokens, start, end, surface, gaz, attrs)
    except (DateNormalizationError, ValueError) as exc:
        logger.debug("dropping %s candidate %r: %s", entity_class, surface, exc)
        return None
    return Mention(span, entity_class, surface, dict(attrs), normalized, start, end, source)


def _candidates(tokens, pos, gaz, rules, ctx):
    """(length, priority, class, attributes, source, end) for each match at `pos`."""
    out = []
    for end, entry in gaz.matches_at(tokens, pos):
        if entry.part is not None:
            continue
        out.append((end - pos, GAZETTEER_PRIORITY, entry.entity_class, entry.attributes, "gazetteer", end))
    for k, rule in enumerate(rules, 1):
        end = rule.pattern.longest(ctx, pos)
        if end is not None:
            out.append((end - pos, k, rule.entity_class, rule.attributes, rule.id, end))
    out.sort(key=lambda c: (-c[0], c[1]))
    return out


def recognize(
    doc: Document,
    tokens: list[Token],
    gaz: Gazetteer,
    rules: list[NeRule],
    propagate: bool = True,
) -> list[Mention]:
    """Leftmost-longest recognition, then propagation of short name forms.

    At each token position the longest gazetteer or rule match wins; equal
    lengths go to the gazetteer, then to the earlier rule. With `propagate`,
    tokens left uncovered are matched against forms derived from the names
    already found: surnames of multi-word person names (allowing one edit, so
    "Guliani" is caught from "Giuliani") and organisation names stripped of
    their corporate suffix and trailing word ("Jay Street" from
    "Jay Street Imports Inc.").
    """
    ctx = TokenContext(tokens, _gazetteer_resolver(tokens, gaz))
    mentions = []
    pos = 0
    while pos < len(tokens):
        chosen = None
        for length, _, cls, attrs, source, end in _candidates(tokens, pos, gaz, rules, ctx):
            chosen = _make_mention(doc, tokens, pos, end, cls, attrs, gaz, source)
            if chosen is not None:
                break
        if chosen is None:
            pos += 1
        else:
            mentions.append(chosen)
            pos = chosen.token_end
    if propagate and mentions:
        mentions = sorted(mentions + _propagate(doc, tokens, mentions), key=lambda m: m.start)
    return mentions


def _short_forms(mentions, tokens):
    surnames = {}
    org_forms = {}
    for m in mentions:
        words = [t.surface for t in tokens[m.token_start:m.token_end]]
        if m.entity_class == "person" and len(words) >= 2:
            last = words[-1]
            if last[:1].isupper() and last.isalpha():
                surnames.setdefault(last, m.entity_class)
        elif m.entity_class in ORGANISATION_CLASSES and has_corporate_suffix(words):
            stripped = strip_corporate_suffix(words)
            if stripped:
                org_forms.setdefault(tuple(stripped), m.entity_class)
            if len(stripped) >= 3:
                org_forms.setdefault(tuple(stripped[:-1]), m.entity_class)
    return surnames, org_forms


def _propagate(doc, tokens, mentions):
    surnames, org_forms = _short_forms(mentions, tokens)
    if not surnames and not org_forms:
        return []
    covered = [False] * len(tokens)
    for m in mentions:
        for i in range(m.token_start, m.token_end):
            covered[i] = True
    forms = sorted(org_forms.items(), key=lambda kv: -len(kv[0]))
    extra = []
    pos = 0
    while pos < len(tokens):
        if covered[pos]:
            pos += 1
            continue
        found = None
        for words, cls in forms:
            end = pos + len(words)
            if end <= len(tokens) and not any(covered[pos:end]) and all(
                t.surface == w for t, w in zip(tokens[pos:end], words)
            ):
                found = (end, cls)
                break
        tok = tokens[pos]
        if found is None and tok.kind == WORD and tok.surface[:1].isupper():
            if tok.surface in surnames:
                found = (pos + 1, "person")
            elif len(tok.surface) >= 5 and any(
                len(s) >= 5 and edit_distance(tok.surface, s) <= 1 for s in surnames
            ):
                found = (pos + 1, "person")
        if found is None:
            pos += 1
            continue
        end, cls = found
        m = _make_mention(doc, tokens, pos, end, cls, {}, None, "alias")
        extra.append(m)
        pos = end
    return extra


def project(mentions) -> set[tuple[str, str]]:
    """(name, class) pairs of the mentions, using canonical names."""
    return {(m.canonical, m.entity_class) for m in mentions}
