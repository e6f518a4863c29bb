"""Coreference: proper-name alias clustering and pronoun attachment.

Proper names are linked by a symmetric alias test and clustered by
transitive closure. Pronouns then join the nearest preceding chain of a
compatible class within a sentence window; anything else is left
unattached rather than guessed.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from pathlib import Path

from infoextract.errors import ResourceError
from infoextract.ne import Mention
from infoextract.names import acronym, edit_distance, strip_corporate_suffix
from infoextract.ontology import ENTITY_CLASSES, ORGANISATION_CLASSES, compatible
from infoextract.text import Document, Sentence, Span, Token

DEFAULT_PRONOUNS = {
    **{p: frozenset(["person"]) for p in "he him his himself she her hers herself".split()},
    **{p: frozenset(ORGANISATION_CLASSES | {"location"}) for p in ("it", "its", "itself")},
}


@dataclass(frozen=True)
class PronounMention:
    span: Span
    surface: str
    classes: frozenset
    token_start: int = field(default=0, compare=False)

    @property
    def start(self):
        return self.span.start

    @property
    def end(self):
        return self.span.end

    def accepts(self, entity_class: str) -> bool:
        return entity_class in self.classes


@dataclass(frozen=True)
class CorefChain:
    chain_id: int
    mentions: tuple  # Mention or PronounMention, in document order
    representative: Mention

    @property
    def entity_class(self) -> str:
        return self.representative.entity_class

    @property
    def names(self) -> tuple:
        return tuple(m for m in self.mentions if isinstance(m, Mention))

    @property
    def pronouns(self) -> tuple:
        return tuple(m for m in self.mentions if isinstance(m, PronounMention))

    @property
    def start(self):
        return self.mentions[0].start

    def surfaces(self) -> list[str]:
        return [m.surface for m in self.mentions]


def load_nicknames(source: str, origin=None) -> dict[str, frozenset]:
    table: dict[str, set] = {}
    for lineno, raw in enumerate(source.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        fields = [f.strip() for f in raw.split("\t")]
        if len(fields) != 2 or not all(fields):
            raise ResourceError("expected short<TAB>full", lineno, origin)
        table.setdefault(fields[0], set()).add(fields[1])
    return {k: frozenset(v) for k, v in table.items()}


def load_pronouns(source: str, origin=None) -> dict[str, frozenset]:
    lexicon = {}
    for lineno, raw in enumerate(source.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        fields = [f.strip() for f in raw.split("\t")]
        if len(fields) != 2:
            raise ResourceError("expected surface<TAB>classes", lineno, origin)
        classes = frozenset(c.strip() for c in fields[1].split(",") if c.strip())
        unknown = classes - ENTITY_CLASSES
        if not classes or unknown:
            raise ResourceError(f"bad class list {fields[1]!r}", lineno, origin)
        lexicon[fields[0].casefold()] = classes
    return lexicon


def read_nicknames(path):
    path = Path(path)
    return load_nicknames(path.read_text(encoding="utf-8"), path)


def read_pronouns(path):
    path = Path(path)
    return load_pronouns(path.read_text(encoding="utf-8"), path)


def find_pronouns(tokens: list[Token], mentions, lexicon=None) -> list[PronounMention]:
    """Pronoun tokens outside any name mention. First-person forms are never listed."""
    lexicon = DEFAULT_PRONOUNS if lexicon is None else lexicon
    spans = [(m.start, m.end) for m in mentions]
    out = []
    for i, tok in enumerate(tokens):
        classes = lexicon.get(tok.surface.casefold())
        if classes is None:
            continue
        if any(s <= tok.start < e for s, e in spans):
            continue
        out.append(PronounMention(tok.span, tok.surface, classes, i))
    return out


def _words(m: Mention):
    return m.surface.split()


def _nick_match(a: str, b: str, nicknames) -> bool:
    if a == b:
        return True
    return b in nicknames.get(a, ()) or a in nicknames.get(b, ())


def _surname_match(a: str, b: str) -> bool:
    if a == b:
        return True
    return min(len(a), len(b)) >= 5 and edit_distance(a, b) <= 1


def is_alias(a: Mention, b: Mention, nicknames=None) -> bool:
    """Symmetric alias test between two proper-name mentions.

    Fires on: identical names; for organisations, one name being a word
    prefix of the other once corporate suffixes are stripped (or a suffix
    of two words or more), or an acronym of it; for people, a shared surname (one edit allowed on longer
    surnames) when one side is a bare surname or the first names agree, and a
    bare first name or nickname matching the other's first name.
    """
    if not compatible(a.entity_class, b.entity_class):
        return False
    nicknames = nicknames or {}
    wa, wb = _words(a), _words(b)
    if [w.casefold() for w in wa] == [w.casefold() for w in wb]:
        return True
    if len(wa) > len(wb) or (len(wa) == len(wb) and a.surface > b.surface):
        wa, wb = wb, wa
    # wa is now the shorter (or canonical-first) name
    if a.entity_class in ORGANISATION_CLASSES:
        sa, sb = strip_corporate_suffix(wa), strip_corporate_suffix(wb)
        if not sa or not sb:
            return False
        if sa == sb:
            return True
        if len(sa) < len(sb) and sb[: len(sa)] == sa:
            return True
        # a bare trailing word ("Imports") is too generic to be an alias
        if 2 <= len(sa) < len(sb) and sb[-len(sa):] == sa:
            return True
        if len(sa) == 1 and sa[0].isupper() and len(sa[0]) >= 2 and len(sb) >= 2:
            return acronym(sb) == sa[0]
        return False
    if a.entity_class == "person":
        if len(wa) == 1:
            only = wa[0]
            if len(wb) >= 2 and _surname_match(only, wb[-1]):
                return True
            if len(wb) >= 2 and _nick_match(only, wb[0], nicknames):
                return True
            if len(wb) == 1:
                return _nick_match(only, wb[0], nicknames)
            return False
        return _nick_match(wa[0], wb[0], nicknames) and _surname_match(wa[-1], wb[-1])
    return False


def cluster_proper_names(mentions: list[Mention], nicknames=None) -> list[CorefChain]:
    """Partition mentions into chains: transitive closure of `is_alias`."""
    n = len(mentions)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if find(i) != find(j) and is_alias(mentions[i], mentions[j], nicknames):
                parent[find(j)] = find(i)

    groups: dict[int, list[Mention]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(mentions[i])
    ordered = sorted(groups.values(), key=lambda g: min(m.start for m in g))
    return [_chain(k, group) for k, group in enumerate(ordered, 1)]


def _chain(chain_id, members):
    members = tuple(sorted(members, key=lambda m: m.start))
    names = [m for m in members if isinstance(m, Mention)]
    representative = max(names, key=lambda m: (len(m.canonical), -m.start))
    return CorefChain(chain_id, members, representative)


def _sentence_of(sentences: list[Sentence], offset: int) -> int:
    starts = [s.span.start for s in sentences]
    return max(bisect.bisect_right(starts, offset) - 1, 0)


def resolve_pronouns(
    doc: Document,
    sentences: list[Sentence],
    chains: list[CorefChain],
    pronouns: list[PronounMention],
    window: int = 2,
):
    """Attach each pronoun to the nearest preceding compatible chain.

    Candidates must have a member in the pronoun's sentence or one of the
    `window` sentences before it. Returns ``(chains, unresolved)``.
    """
    if window < 0:
        raise ValueError("pronoun window must be non-negative")
    members = {c.chain_id: list(c.mentions) for c in chains}
    by_id = {c.chain_id: c for c in chains}
    unresolved = []
    for p in sorted(pronouns, key=lambda p: p.start):
        here = _sentence_of(sentences, p.start) if sentences else 0
        best = None
        for cid, ms in members.items():
            if not p.accepts(by_id[cid].entity_class):
                continue
            for m in ms:
                if m.end > p.start:
                    continue
                if sentences and _sentence_of(sentences, m.start) < here - window:
                    continue
                if best is None or m.end > best[0]:
                    best = (m.end, cid)
        if best is None:
            unresolved.append(p)
        else:
            members[best[1]].append(p)
    out = []
    for c in chains:
        ms = tuple(sorted(members[c.chain_id], key=lambda m: m.start))
        out.append(CorefChain(c.chain_id, ms, c.representative))
    return out, unresolved
