"""Scenario templates: trigger-driven event rules over entity records.

Rule file format (blocks separated by blank lines)::

    event narcotics-smuggling
    trigger: "importing" <drug>
    role destination: location scope=nearest-after cue=into|to required
    role perpetrators: person|organisation scope=nearest-before required
    role source: const unknown
    status: "accused" "of" => on-trial

Trigger literals match case-insensitively; ``<class>`` matches an entity
occurrence of that class. For ``nearest-*`` scopes the nearest entity of
*each* listed class is bound; ``same-sentence`` / ``same-document`` bind every
entity of a listed class. ``cue=`` requires the bound entity to follow one
of the given words (a determiner may intervene). Unfilled ``required`` roles
become "unknown"; other unfilled roles are left out.

Every search is capped by the extraction scope: under ``same-sentence``
nothing outside the trigger's sentence can be bound, which trades recall
for precision.
"""
from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field
from pathlib import Path

from infoextract.errors import ResourceError
from infoextract.ontology import ENTITY_CLASSES
from infoextract.patterns import PatternError, TokenContext, parse_pattern
from infoextract.records import EntityRecord, EventRecord
from infoextract.text import Document, Sentence, Span, Token, tokenize

SCOPES = ("same-sentence", "same-document", "nearest-before", "nearest-after")
CAPS = ("same-sentence", "same-document")
UNKNOWN = "unknown"
_CUE_SKIP = frozenset(["the", "a", "an"])

_ROLE = re.compile(r"role\s+([\w-]+)\s*:\s*(.+)")
_STATUS = re.compile(r"status\s*:\s*(.+?)\s*=>\s*(\S.*)")


@dataclass(frozen=True)
class Role:
    name: str
    classes: tuple = ()
    scope: str = "same-sentence"
    const: str | None = None
    cues: tuple = ()
    required: bool = False


@dataclass(frozen=True)
class ScenarioRule:
    event_type: str
    triggers: tuple  # of Pattern
    roles: tuple = ()
    status_rules: tuple = ()  # of (Pattern, value)

    @property
    def id(self):
        return self.event_type


def _parse_role(text, lineno, origin):
    m = _ROLE.fullmatch(text)
    if not m:
        raise ResourceError(f"malformed role line {text!r}", lineno, origin)
    name, spec = m.group(1), m.group(2).split()
    if spec[0] == "const":
        if len(spec) < 2:
            raise ResourceError("const role needs a value", lineno, origin)
        return Role(name, const=" ".join(spec[1:]))
    classes = tuple(spec[0].split("|"))
    for c in classes:
        if c not in ENTITY_CLASSES:
            raise ResourceError(f"unknown class {c!r} in role {name}", lineno, origin)
    scope, cues, required = "same-sentence", (), False
    for opt in spec[1:]:
        key, eq, value = opt.partition("=")
        if key == "required" and not eq:
            required = True
        elif key == "scope" and eq:
            if value not in SCOPES:
                raise ResourceError(f"unknown scope {value!r}", lineno, origin)
            scope = value
        elif key == "cue" and eq:
            cues = tuple(v.casefold() for v in value.split("|") if v)
        else:
            raise ResourceError(f"unknown role option {opt!r}", lineno, origin)
    return Role(name, classes, scope, None, cues, required)


def _pattern(text, lineno, origin):
    try:
        pattern = parse_pattern(text, casefold_literals=True)
    except PatternError as exc:
        raise ResourceError(str(exc), lineno, origin) from None
    for c in pattern.class_names():
        if c not in ENTITY_CLASSES:
            raise ResourceError(f"unknown class <{c}>", lineno, origin)
    return pattern


def load_scenario_rules(source: str, origin=None) -> list[ScenarioRule]:
    rules = []
    block = None

    def close():
        nonlocal block
        if block is not None:
            if not block["triggers"]:
                raise ResourceError(f"event {block['type']!r} has no trigger", block["line"], origin)
            rules.append(
                ScenarioRule(block["type"], tuple(block["triggers"]), tuple(block["roles"]), tuple(block["status"]))
            )
        block = None

    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            close()
            continue
        if line.startswith("event "):
            close()
            block = {"type": line[6:].strip(), "line": lineno, "triggers": [], "roles": [], "status": []}
            continue
        if block is None:
            raise ResourceError("line outside an event block", lineno, origin)
        if line.startswith("trigger:"):
            block["triggers"].append(_pattern(line[8:], lineno, origin))
        elif line.startswith("role"):
            role = _parse_role(line, lineno, origin)
            if any(r.name == role.name for r in block["roles"]):
                raise ResourceError(f"duplicate role {role.name!r}", lineno, origin)
            block["roles"].append(role)
        elif line.startswith("status"):
            m = _STATUS.fullmatch(line)
            if not m:
                raise ResourceError("expected status: <pattern> => <value>", lineno, origin)
            block["status"].append((_pattern(m.group(1), lineno, origin), m.group(2).strip()))
        else:
            raise ResourceError(f"unrecognised line {line!r}", lineno, origin)
    close()
    return rules


def read_scenario_rules(path) -> list[ScenarioRule]:
    path = Path(path)
    return load_scenario_rules(path.read_text(encoding="utf-8"), origin=path)


@dataclass(frozen=True)
class Instance:
    """One trigger hit with its role fills, before merging."""

    rule: ScenarioRule = field(compare=False)
    event_type: str
    trigger: tuple  # token (start, end)
    fills: tuple  # ((role, frozenset of entity ids | literal), ...)
    status: str | None = None

    def as_dict(self):
        return dict(self.fills)


def _entity_number(eid):
    return int(eid.rsplit("-", 1)[1])


class _Scanner:
    def __init__(self, tokens, sentences, entities):
        self.tokens = tokens
        self.folded = [t.surface.casefold() for t in tokens]
        self.sentences = sentences
        self.starts = [s.token_range.start for s in sentences]
        self.occurrences = sorted(
            (o.start, o.end, o.entity_id, o.entity_class) for e in entities for o in e.occurrences
        )
        self.by_start = {}
        for o in self.occurrences:
            self.by_start.setdefault(o[0], []).append(o)
        self.ctx = TokenContext(tokens, self._resolve)

    def _resolve(self, pos, name, attrs):
        return [o[1] for o in self.by_start.get(pos, ()) if o[3] == name]

    def sentence_range(self, token_index):
        if not self.sentences:
            return range(0, len(self.tokens))
        k = bisect.bisect_right(self.starts, token_index) - 1
        return self.sentences[k].token_range

    def cue_ok(self, start, cues):
        if not cues:
            return True
        k = start - 1
        if k >= 0 and self.folded[k] in _CUE_SKIP:
            k -= 1
        return k >= 0 and self.folded[k] in cues

    def hits(self, rule):
        pos = 0
        while pos < len(self.tokens):
            best = None
            for trig in rule.triggers:
                end = trig.longest(self.ctx, pos)
                if end is not None and (best is None or end > best):
                    best = end
            if best is None:
                pos += 1
            else:
                yield pos, best
                pos = best


def _bind(scanner, role, trigger, lo, hi):
    t0, t1 = trigger
    inside = [o for o in scanner.occurrences if lo <= o[0] and o[1] <= hi and not (o[0] < t1 and t0 < o[1])]
    inside = [o for o in inside if scanner.cue_ok(o[0], role.cues)]
    ids = set()
    if role.scope in ("same-sentence", "same-document"):
        if role.scope == "same-sentence":
            sr = scanner.sentence_range(t0)
            inside = [o for o in inside if sr.start <= o[0] and o[1] <= sr.stop]
        ids = {o[2] for o in inside if o[3] in role.classes}
    else:
        for cls in role.classes:
            if role.scope == "nearest-before":
                cands = [o for o in inside if o[3] == cls and o[1] <= t0]
                if cands:
                    ids.add(max(cands, key=lambda o: (o[1], o[0]))[2])
            else:
                cands = [o for o in inside if o[3] == cls and o[0] >= t1]
                if cands:
                    ids.add(min(cands, key=lambda o: (o[0], o[1]))[2])
    return frozenset(ids)


def _status(scanner, rule, trigger):
    sr = scanner.sentence_range(trigger[0])
    for pattern, value in rule.status_rules:
        for pos in sr:
            end = pattern.longest(scanner.ctx, pos)
            if end is not None and end <= sr.stop:
                return value
    return None


def find_instances(
    doc: Document,
    sentences: list[Sentence],
    entities: list[EntityRecord],
    rules: list[ScenarioRule],
    scope: str = "same-sentence",
    tokens: list[Token] | None = None,
) -> list[Instance]:
    """Instantiate every trigger hit; hits that bind no entity are dropped."""
    if scope not in CAPS:
        raise ValueError(f"scope must be one of {CAPS}, not {scope!r}")
    tokens = tokenize(doc) if tokens is None else tokens
    scanner = _Scanner(tokens, sentences, entities)
    out = []
    for rule in rules:
        for trigger in scanner.hits(rule):
            if scope == "same-sentence":
                sr = scanner.sentence_range(trigger[0])
                lo, hi = sr.start, sr.stop
            else:
                lo, hi = 0, len(tokens)
            fills = []
            bound = 0
            for role in rule.roles:
                if role.const is not None:
                    fills.append((role.name, role.const))
                    continue
                ids = _bind(scanner, role, trigger, lo, hi)
                if ids:
                    bound += 1
                    fills.append((role.name, ids))
            if bound:
                out.append(Instance(rule, rule.event_type, trigger, tuple(fills), _status(scanner, rule, trigger)))
    out.sort(key=lambda i: (i.trigger, rules.index(i.rule)))
    return out


def _linked(a: Instance, b: Instance) -> bool:
    """Same rule and at least one entity bound to the same role in both."""
    if a.rule is not b.rule:
        return False
    mine = a.as_dict()
    for role, value in b.fills:
        if isinstance(value, frozenset) and isinstance(mine.get(role), frozenset) and value & mine[role]:
            return True
    return False


def merge_instances(instances: list[Instance]) -> list[EventRecord]:
    """Group hits into events and number them by first trigger.

    Hits of one rule belong to the same event when they are connected by a
    chain of hits sharing an entity in some role. Widening the scope only
    adds such links, so every event found under the narrow scope lies
    inside one event found under the wide scope. Role values are unioned;
    the status comes from the earliest hit that has one.
    """
    n = len(instances)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if find(i) != find(j) and _linked(instances[i], instances[j]):
                parent[find(j)] = find(i)

    groups = {}
    for i in sorted(range(n), key=lambda i: instances[i].trigger):
        groups.setdefault(find(i), []).append(instances[i])

    events = []
    ordered = sorted(groups.values(), key=lambda g: g[0].trigger)
    for k, group in enumerate(ordered, 1):
        rule = group[0].rule
        fills = {}
        for inst in group:
            for role, value in inst.fills:
                if isinstance(value, frozenset):
                    fills[role] = fills.get(role, frozenset()) | value
                else:
                    fills.setdefault(role, value)
        slots = {}
        for role in rule.roles:
            value = fills.get(role.name)
            if value is None:
                if role.required:
                    slots[role.name] = UNKNOWN
            elif isinstance(value, frozenset):
                slots[role.name] = tuple(sorted(value, key=_entity_number))
            else:
                slots[role.name] = value
        status = next((inst.status for inst in group if inst.status is not None), None)
        if status is not None:
            slots["status"] = status
        events.append(EventRecord(f"EVENT-{k}", rule.event_type, slots, tuple(i.trigger for i in group)))
    return events


def extract_events(
    doc: Document,
    sentences: list[Sentence],
    entities: list[EntityRecord],
    rules: list[ScenarioRule],
    scope: str = "same-sentence",
    tokens: list[Token] | None = None,
) -> list[EventRecord]:
    tokens = tokenize(doc) if tokens is None else tokens
    events = merge_instances(find_instances(doc, sentences, entities, rules, scope, tokens))
    for e in events:
        e.triggers = tuple(Span(tokens[a].start, tokens[b - 1].end) for a, b in e.triggers)
    return events
