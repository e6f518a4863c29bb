"""Slot-fill scoring of system records against a gold set.

Every record contributes one fill for its name (the event type for events),
one for its entity type, and one per slot. List slots are a single fill
compared as a set. A fill is correct only on an exact match; references
to other entities are correct when they point at the aligned counterpart.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from infoextract.ontology import compatible
from infoextract.records import EntityRecord, EventRecord, is_ref, iter_values


@dataclass(frozen=True)
class SlotCounts:
    correct: int = 0
    incorrect: int = 0
    missing: int = 0
    spurious: int = 0

    def __add__(self, other):
        return SlotCounts(
            self.correct + other.correct,
            self.incorrect + other.incorrect,
            self.missing + other.missing,
            self.spurious + other.spurious,
        )

    @property
    def system(self):
        return self.correct + self.incorrect + self.spurious

    @property
    def gold(self):
        return self.correct + self.incorrect + self.missing


@dataclass(frozen=True)
class Scores:
    precision: float
    recall: float
    combined: float

    @classmethod
    def from_counts(cls, counts: SlotCounts):
        p = counts.correct / counts.system if counts.system else 0.0
        r = counts.correct / counts.gold if counts.gold else 0.0
        return cls(p, r, combined(p, r))


def combined(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


@dataclass
class Alignment:
    matched: list = field(default_factory=list)  # (system, gold, SlotCounts)
    unmatched_system: list = field(default_factory=list)
    unmatched_gold: list = field(default_factory=list)
    mapping: dict = field(default_factory=dict)  # system entity id -> gold entity id

    def counts(self, task=None) -> SlotCounts:
        def wanted(r):
            if task is None:
                return True
            return isinstance(r, EntityRecord) == (task == "entity")

        total = SlotCounts()
        for s, g, c in self.matched:
            if wanted(g):
                total += c
        for r in self.unmatched_system:
            if wanted(r):
                total += SlotCounts(spurious=fill_count(r))
        for r in self.unmatched_gold:
            if wanted(r):
                total += SlotCounts(missing=fill_count(r))
        return total


def fill_count(record) -> int:
    return (2 if isinstance(record, EntityRecord) else 1) + len(record.slots)


def _fills(record):
    fills = {"name": record.header}
    if isinstance(record, EntityRecord):
        fills["type"] = record.type
    fills.update(record.slots)
    return fills


def _names(e: EntityRecord):
    return {n.casefold() for n in (e.name, *e.aliases)}


def _has_ref(value):
    return any(is_ref(v) for v in iter_values(value)) if isinstance(value, (str, tuple)) else False


def _as_set(value):
    return frozenset(value) if isinstance(value, tuple) else frozenset([value])


def _same(sys_value, gold_value, mapping):
    if _has_ref(sys_value) or _has_ref(gold_value):
        mapped = frozenset(
            mapping.get(v, ("unaligned", v)) if is_ref(v) else v for v in iter_values(sys_value)
        )
        return mapped == _as_set(gold_value)
    if isinstance(sys_value, tuple) or isinstance(gold_value, tuple):
        return _as_set(sys_value) == _as_set(gold_value)
    return sys_value == gold_value


def _pair_counts(s, g, mapping) -> SlotCounts:
    fs, fg = _fills(s), _fills(g)
    correct = incorrect = missing = spurious = 0
    for slot in fs.keys() | fg.keys():
        if slot not in fg:
            spurious += 1
        elif slot not in fs:
            missing += 1
        elif _same(fs[slot], fg[slot], mapping):
            correct += 1
        else:
            incorrect += 1
    return SlotCounts(correct, incorrect, missing, spurious)


def _content_key(record, index):
    """Order-independent description of a record; refs become (type, name) of the target."""

    def value_key(v):
        out = []
        for item in iter_values(v):
            target = index.get(item) if is_ref(item) else None
            out.append(repr((target.type, target.name)) if target is not None else str(item))
        return tuple(sorted(out))

    return tuple(sorted((k, value_key(v)) for k, v in _fills(record).items()))


def _greedy(candidates, system, gold, sys_index, gold_index):
    """Take pairs by descending score; ties resolved identically if the sides are swapped."""
    keyed = []
    for score, i, j in candidates:
        ks = _content_key(system[i], sys_index)
        kg = _content_key(gold[j], gold_index)
        keyed.append(((-score, tuple(sorted([ks, kg])), tuple(sorted([i, j]))), i, j))
    keyed.sort()
    used_s, used_g, pairs = set(), set(), []
    for _, i, j in keyed:
        if i not in used_s and j not in used_g:
            used_s.add(i)
            used_g.add(j)
            pairs.append((i, j))
    return pairs


def align(system, gold) -> Alignment:
    """Pair system records with gold records.

    `system` and `gold` are ``(entities, events)`` pairs or flat record lists.
    Entities pair when their types are compatible and their names or aliases
    overlap (case-folded); events pair on equal event type. Among candidates
    the pairing is greedy on the number of agreeing fills.
    """
    s_ent, s_evt = _split(system)
    g_ent, g_evt = _split(gold)
    s_index = {e.id: e for e in s_ent}
    g_index = {e.id: e for e in g_ent}

    candidates = []
    for i, s in enumerate(s_ent):
        for j, g in enumerate(g_ent):
            if compatible(s.type, g.type) and _names(s) & _names(g):
                fs, fg = _fills(s), _fills(g)
                score = sum(
                    1 for k in fs.keys() & fg.keys()
                    if not _has_ref(fs[k]) and not _has_ref(fg[k]) and _same(fs[k], fg[k], {})
                )
                candidates.append((score, i, j))
    entity_pairs = _greedy(candidates, s_ent, g_ent, s_index, g_index)
    mapping = {s_ent[i].id: g_ent[j].id for i, j in entity_pairs}

    candidates = []
    for i, s in enumerate(s_evt):
        for j, g in enumerate(g_evt):
            if s.event_type == g.event_type:
                candidates.append((_pair_counts(s, g, mapping).correct, i, j))
    event_pairs = _greedy(candidates, s_evt, g_evt, s_index, g_index)

    out = Alignment(mapping=mapping)
    for (sys_records, gold_records), pairs in (((s_ent, g_ent), entity_pairs), ((s_evt, g_evt), event_pairs)):
        for i, j in sorted(pairs, key=lambda p: p[1]):
            out.matched.append((sys_records[i], gold_records[j], _pair_counts(sys_records[i], gold_records[j], mapping)))
        done_s = {i for i, _ in pairs}
        done_g = {j for _, j in pairs}
        out.unmatched_system += [r for k, r in enumerate(sys_records) if k not in done_s]
        out.unmatched_gold += [r for k, r in enumerate(gold_records) if k not in done_g]
    return out


def _split(records):
    if isinstance(records, tuple) and len(records) == 2 and all(isinstance(x, list) for x in records):
        return list(records[0]), list(records[1])
    records = list(records)
    return (
        [r for r in records if isinstance(r, EntityRecord)],
        [r for r in records if isinstance(r, EventRecord)],
    )


def score(alignment: Alignment, task=None) -> Scores:
    """Scores over all fills, or only "entity" / "event" fills."""
    if task not in (None, "entity", "event"):
        raise ValueError(f"unknown task {task!r}")
    return Scores.from_counts(alignment.counts(task))


def score_report(alignment: Alignment) -> str:
    rows = ["task\tprecision\trecall\tcombined"]
    for label, task in (("entity", "entity"), ("event", "event"), ("overall", None)):
        s = score(alignment, task)
        rows.append(f"{label}\t{s.precision:.4f}\t{s.recall:.4f}\t{s.combined:.4f}")
    return "\n".join(rows) + "\n"
