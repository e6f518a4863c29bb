"""Template elements: one record per coreference chain, with descriptive slots.

Slots come from a small set of lexical rules over the token stream plus a
world-knowledge resource:

* ``<person>, head of <organisation>``: employer and profession (role phrases
  from the ``[roles]`` table)
* ``his <location> apartment``: domicile of the pronoun's referent
* an organisation named after a place ("New York police"), or
  ``<organisation> is based in <location>``: location
* company descriptions ("transportation company Downing-Jones", "the
  company, a medium-sized import-export concern") and a news dateline
  ("Reuter -- New York"): business
* drug classes and geography (subtype, containing place) from the KB

"the company" / "the firm" refer to the most recent organisation.
"""
from __future__ import annotations

import bisect
import logging
from dataclasses import dataclass, field
from pathlib import Path

from infoextract.coref import CorefChain, PronounMention
from infoextract.errors import ResourceError
from infoextract.gazetteer import RESERVED
from infoextract.ontology import ORGANISATION_CLASSES
from infoextract.records import EntityRecord, check_references
from infoextract.text import Document, Sentence, Token

logger = logging.getLogger(__name__)

DETERMINERS = frozenset("the a an this that these those his her its their".split())
_SECTIONS = ("geography", "roles", "drugs", "descriptors", "dwellings", "dateline")


@dataclass(frozen=True)
class Place:
    subtype: str
    container: str | None = None


@dataclass
class WorldKB:
    geography: dict = field(default_factory=dict)  # name -> Place
    roles: dict = field(default_factory=dict)  # "head of" -> "managing director"
    drug_classes: dict = field(default_factory=dict)
    descriptors: frozenset = frozenset(["company", "concern", "firm"])
    dwellings: frozenset = frozenset(["apartment", "flat", "home", "house"])
    dateline: dict = field(default_factory=dict)

    def __post_init__(self):
        self.check_geography()

    def check_geography(self):
        for start in self.geography:
            seen = [start]
            place = self.geography[start]
            while place.container is not None and place.container in self.geography:
                if place.container in seen:
                    chain = " -> ".join(seen + [place.container])
                    raise ValueError(f"geography cycle: {chain}")
                seen.append(place.container)
                place = self.geography[place.container]


def load_world_kb(source: str, origin=None) -> WorldKB:
    tables = {name: [] for name in _SECTIONS}
    section = None
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in tables:
                raise ResourceError(f"unknown section [{section}]", lineno, origin)
            continue
        if section is None:
            raise ResourceError("row outside any section", lineno, origin)
        tables[section].append(([f.strip() for f in raw.split("\t")], lineno))

    def rows(name, lo, hi):
        for fields, lineno in tables[name]:
            if not lo <= len(fields) <= hi or not all(fields):
                raise ResourceError(f"bad [{name}] row", lineno, origin)
            yield fields

    geography = {}
    for fields in rows("geography", 2, 3):
        geography[fields[0]] = Place(fields[1], fields[2] if len(fields) == 3 else None)
    kwargs = dict(
        geography=geography,
        roles={f[0]: f[1] for f in rows("roles", 2, 2)},
        drug_classes={f[0]: f[1] for f in rows("drugs", 2, 2)},
        dateline={f[0]: f[1] for f in rows("dateline", 2, 2)},
    )
    if tables["descriptors"]:
        kwargs["descriptors"] = frozenset(f[0] for f in rows("descriptors", 1, 1))
    if tables["dwellings"]:
        kwargs["dwellings"] = frozenset(f[0] for f in rows("dwellings", 1, 1))
    try:
        return WorldKB(**kwargs)
    except ValueError as exc:
        raise ResourceError(str(exc), None, origin) from None


def read_world_kb(path) -> WorldKB:
    path = Path(path)
    return load_world_kb(path.read_text(encoding="utf-8"), origin=path)


@dataclass(frozen=True, order=True)
class Occurrence:
    """Tokens [start, end) that refer to the record `entity_id`."""

    start: int
    end: int
    entity_id: str
    entity_class: str
    kind: str = "name"  # name | pronoun | definite


class _Doc:
    """Token-level view of a document with its entity occurrences."""

    def __init__(self, tokens, sentences, occurrences, window):
        self.tokens = tokens
        self.folded = [t.surface.casefold() for t in tokens]
        self.sentence_starts = [s.token_range.start for s in sentences]
        self.window = window
        self.occurrences = sorted(occurrences)
        self.by_start = {}
        for o in self.occurrences:
            self.by_start.setdefault(o.start, []).append(o)

    def sentence(self, token_index):
        if not self.sentence_starts:
            return 0
        return bisect.bisect_right(self.sentence_starts, token_index) - 1

    def word(self, i):
        return self.folded[i] if 0 <= i < len(self.tokens) else None

    def starting(self, i, classes=None, kinds=("name", "pronoun", "definite")):
        for o in self.by_start.get(i, ()):
            if o.kind in kinds and (classes is None or o.entity_class in classes):
                return o
        return None

    def phrase_at(self, i, phrase):
        words = phrase.casefold().split()
        return all(self.word(i + k) == w for k, w in enumerate(words)) and len(words)

    def add(self, occ):
        bisect.insort(self.occurrences, occ)
        self.by_start.setdefault(occ.start, []).append(occ)


def _mention_tokens(m):
    if isinstance(m, PronounMention):
        return m.token_start, m.token_start + 1
    return m.token_start, m.token_end


def _resolve_definites(view: _Doc, kb: WorldKB):
    """Attach "the company"-style phrases to the most recent organisation."""
    covered = {i for o in view.occurrences for i in range(o.start, o.end)}
    for i in range(len(view.tokens) - 1):
        if view.word(i) != "the" or view.word(i + 1) not in kb.descriptors:
            continue
        if i in covered or i + 1 in covered:
            continue
        here = view.sentence(i)
        antecedent = None
        for o in view.occurrences:
            if o.end > i:
                break
            if o.entity_class in ORGANISATION_CLASSES and view.sentence(o.start) >= here - view.window:
                antecedent = o
        if antecedent is not None:
            view.add(Occurrence(i, i + 2, antecedent.entity_id, antecedent.entity_class, "definite"))


def _fill(records, entity_id, slot, value):
    record = records[entity_id]
    if slot not in record.slots:
        record.set(slot, value)


def _employer_rule(view, records, kb):
    for o in list(view.occurrences):
        if o.kind != "name" or o.entity_class != "person":
            continue
        j = o.end
        if view.word(j) == ",":
            j += 1
        for phrase, profession in kb.roles.items():
            n = view.phrase_at(j, phrase)
            if not n:
                continue
            k = j + n
            if view.word(k) == "the":
                k += 1
            org = view.starting(k, ORGANISATION_CLASSES, kinds=("name",))
            if org is not None:
                _fill(records, o.entity_id, "profession", profession)
                _fill(records, o.entity_id, "employer", org.entity_id)
                break


def _domicile_rule(view, records, kb):
    for o in list(view.occurrences):
        if o.kind != "pronoun" or o.entity_class != "person" or view.word(o.start) not in ("his", "her"):
            continue
        place = view.starting(o.end, {"location"}, kinds=("name",))
        if place is not None and view.word(place.end) in kb.dwellings:
            _fill(records, o.entity_id, "domicile", place.entity_id)


def _location_rule(view, records):
    places = [r for r in records.values() if r.type == "location"]
    for r in records.values():
        if r.type not in ORGANISATION_CLASSES:
            continue
        words = r.name.split()
        for place in sorted(places, key=lambda p: -len(p.name)):
            pw = place.name.split()
            if len(words) > len(pw) and words[: len(pw)] == pw:
                _fill(records, r.id, "location", place.id)
                break
    for o in list(view.occurrences):
        if o.kind != "name" or o.entity_class not in ORGANISATION_CLASSES:
            continue
        k = o.end
        if view.word(k) in ("is", "was", "are", "were"):
            k += 1
        if view.word(k) in ("located", "based") and view.word(k + 1) == "in":
            place = view.starting(k + 2, {"location"}, kinds=("name",))
            if place is not None:
                _fill(records, o.entity_id, "location", place.entity_id)


def _business_rule(view, records, kb):
    tokens = view.tokens
    first = view.starting(0, ORGANISATION_CLASSES, kinds=("name",))
    if first is not None and kb.dateline:
        k = first.end
        dashes = 0
        while view.word(k) in ("-", "--", "—", "–"):
            dashes += 1 if tokens[k].surface == "-" else 2
            k += 1
        if dashes >= 2:
            for slot, value in kb.dateline.items():
                _fill(records, first.entity_id, slot, value)

    for o in list(view.occurrences):
        if o.entity_class not in ORGANISATION_CLASSES:
            continue
        # "<modifier> company Downing-Jones"
        if o.kind == "name" and view.word(o.start - 1) in kb.descriptors:
            mod = o.start - 2
            if mod >= 0 and tokens[mod].surface[:1].islower() and view.word(mod) not in DETERMINERS:
                _fill(records, o.entity_id, "business", tokens[mod].surface)
                continue
        # "<org>, a medium-sized import-export concern"
        if o.kind in ("name", "definite") and view.word(o.end) == "," and view.word(o.end + 1) in ("a", "an"):
            for k in range(o.end + 2, min(o.end + 7, len(tokens))):
                if view.word(k) in kb.descriptors:
                    mod = tokens[k - 1]
                    if mod.surface[:1].islower() and view.word(k - 1) not in DETERMINERS:
                        _fill(records, o.entity_id, "business", mod.surface)
                    break
                if not tokens[k].surface[:1].islower():
                    break


def build_entities(
    doc: Document,
    tokens: list[Token],
    sentences: list[Sentence],
    chains: list[CorefChain],
    kb: WorldKB,
    window: int = 2,
) -> list[EntityRecord]:
    """One record per chain, ids in order of first mention, slots filled by rule."""
    chains = sorted(chains, key=lambda c: c.start)
    records = {}
    occurrences = []
    for k, chain in enumerate(chains, 1):
        rid = f"ENTITY-{k}"
        rep = chain.representative
        record = EntityRecord(rid, rep.canonical, chain.entity_class)
        aliases = []
        for m in chain.names:
            if m.canonical != record.name and m.canonical not in aliases:
                aliases.append(m.canonical)
        if aliases:
            record.set("aliases", aliases)
        if rep.normalized is not None:
            slot = {"date": "normalisation", "money": "amount", "time": "time"}[rep.entity_class]
            record.set(slot, rep.normalized if slot == "normalisation" else str(rep.normalized))
        for m in chain.names:
            for key, value in m.attributes.items():
                if key not in RESERVED and key not in record.slots:
                    record.set(key, value)
        for m in chain.mentions:
            start, end = _mention_tokens(m)
            kind = "pronoun" if isinstance(m, PronounMention) else "name"
            occurrences.append(Occurrence(start, end, rid, chain.entity_class, kind))
        records[rid] = record

    view = _Doc(tokens, sentences, occurrences, window)
    _resolve_definites(view, kb)
    _employer_rule(view, records, kb)
    _domicile_rule(view, records, kb)
    _location_rule(view, records)
    _business_rule(view, records, kb)
    for r in records.values():
        if r.type == "drug" and r.name in kb.drug_classes:
            r.slots.pop("class", None)
            r.set("class", kb.drug_classes[r.name])

    by_id = {}
    for o in view.occurrences:
        by_id.setdefault(o.entity_id, []).append(o)
    for rid, r in records.items():
        r.occurrences = tuple(by_id.get(rid, ()))

    out = attach_geography(list(records.values()), kb)
    check_references(out)
    return out


def attach_geography(records: list[EntityRecord], kb: WorldKB) -> list[EntityRecord]:
    """Add subtype and is_in to location records known to the KB.

    is_in names the containing place's record when the document has one,
    otherwise the container's name as a literal.
    """
    names = {}
    for r in records:
        if r.type == "location":
            names.setdefault(r.name, r.id)
            for alias in r.aliases:
                names.setdefault(alias, r.id)
    for r in records:
        if r.type != "location":
            continue
        place = kb.geography.get(r.name)
        if place is None:
            continue
        if "subtype" not in r.slots:
            r.set("subtype", place.subtype)
        if place.container is not None and "is_in" not in r.slots:
            r.set("is_in", names.get(place.container, place.container))
    return records
