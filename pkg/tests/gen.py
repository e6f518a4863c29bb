"""Seeded generators shared by the property and acceptance tests."""
import random

from infoextract.dates import NormalizedDate
from infoextract.records import EntityRecord, EventRecord

WORDS = ["Alder", "Birch", "Cedar", "Dover", "Elm", "Fenwick", "Garth", "Holm", "Ives", "Juniper", "Kestrel"]
TYPES = ["person", "organisation", "company", "location", "date", "drug", "money"]
LITERALS = ["city", "country", "news", "A", "B", "import-export", "managing director", "unknown", "on-trial"]
EVENT_TYPES = ["narcotics-smuggling", "joint-venture", "takeover"]


def random_date(rng):
    return NormalizedDate(
        rng.choice([None, rng.randint(1, 31)]),
        rng.choice([None, rng.randint(1, 12)]),
        rng.choice([None, rng.randint(0, 9999)]),
    )


def _name(rng):
    return " ".join(rng.sample(WORDS, rng.randint(1, 3)))


def random_records(rng, max_entities=8, max_events=3):
    """A well-formed (entities, events) pair: ids dense, every ref resolvable."""
    n = rng.randint(0, max_entities)
    ids = [f"ENTITY-{k}" for k in range(1, n + 1)]
    entities = []
    for rid in ids:
        slots = {}
        if rng.random() < 0.5:
            aliases = rng.sample(WORDS, rng.randint(1, 3))
            slots["aliases"] = aliases
        if rng.random() < 0.3:
            slots["normalisation"] = random_date(rng)
        for slot in ("subtype", "business", "class"):
            if rng.random() < 0.3:
                slots[slot] = rng.choice(LITERALS)
        if ids and rng.random() < 0.4:
            slots["employer"] = rng.choice(ids)
        if ids and rng.random() < 0.2:
            slots["is_in"] = rng.choice([rng.choice(ids), rng.choice(LITERALS)])
        entities.append(EntityRecord(rid, _name(rng), rng.choice(TYPES), slots))
    events = []
    for k in range(1, rng.randint(0, max_events) + 1):
        slots = {}
        if ids:
            slots["perpetrators"] = sorted(rng.sample(ids, rng.randint(1, min(3, len(ids)))))
            slots["destination"] = rng.choice([rng.choice(ids), "unknown"])
        if rng.random() < 0.5:
            slots["status"] = rng.choice(["past", "on-trial"])
        events.append(EventRecord(f"EVENT-{k}", rng.choice(EVENT_TYPES), slots))
    return entities, events


def perturb(rng, records):
    """A noisy copy: some records dropped, some slots altered, some records added."""
    entities, events = records
    out_e = []
    for e in entities:
        if rng.random() < 0.15:
            continue
        slots = dict(e.slots)
        for slot in list(slots):
            r = rng.random()
            if r < 0.15:
                del slots[slot]
            elif r < 0.3 and slot not in ("aliases", "normalisation"):
                slots[slot] = rng.choice(LITERALS)
        if rng.random() < 0.2:
            slots["business"] = rng.choice(LITERALS)
        out_e.append(EntityRecord(e.id, e.name, e.type, slots))
    if rng.random() < 0.5:
        out_e.append(EntityRecord(f"ENTITY-{len(entities) + 1}", _name(rng), rng.choice(TYPES), {}))
    kept = {e.id for e in out_e}

    def keep_refs(value):
        if isinstance(value, tuple):
            items = tuple(v for v in value if not v.startswith("ENTITY-") or v in kept)
            return items or None
        if isinstance(value, str) and value.startswith("ENTITY-") and value not in kept:
            return None
        return value

    for e in out_e:
        e.slots = {k: v for k, v in ((k, keep_refs(v)) for k, v in e.slots.items()) if v is not None}
    out_v = []
    for v in events:
        if rng.random() < 0.2:
            continue
        slots = {k: keep_refs(x) for k, x in v.slots.items()}
        slots = {k: x for k, x in slots.items() if x is not None}
        if rng.random() < 0.3:
            slots["status"] = rng.choice(["past", "on-trial", "convicted"])
        out_v.append(EventRecord(v.id, v.event_type, slots))
    return out_e, out_v


PEOPLE = ["Peter Hale", "Mary Quinn", "James Carter", "Anna Berg", "John Marsh", "Elizabeth Crane", "William Stone"]
COMPANIES = ["Burns Fry Ltd.", "IBM Europe", "Downing-Jones", "Harbor Freight Inc.", "Westline Corp."]
PLACES = ["Miami", "London", "Toronto", "Paris", "Lyon", "Colombia", "Denmark", "Canada", "Manhattan"]
DRUGS = ["heroin", "cocaine", "cannabis"]
MONTHS = ["January", "March", "May", "July", "September", "November"]
SENTENCES = [
    "{place} police arrested {person}, head of {company}, on {day} {month} {year}.",
    "{surname} is accused of smuggling {drug} into {place2} from {place}.",
    "{company} announced a transport venture with {company2}.",
    "The company said the venture had been planned since {year}.",
    "{person} was taken from his {place} apartment.",
    "Several associates of {company2} declined to comment.",
    "{surname} was charged with importing {drug} into {place2}.",
    "Officers said he had visited {place2} in {month} {year}.",
    "The transportation company {company2} denied any involvement.",
]


def corpus_documents(n=50, seed=1996):
    """`n` short news-like documents as (file name, text) pairs."""
    rng = random.Random(seed)
    docs = []
    for k in range(n):
        person = rng.choice(PEOPLE)
        company, company2 = rng.sample(COMPANIES, 2)
        place, place2 = rng.sample(PLACES, 2)
        values = dict(
            person=person,
            surname=person.split()[-1],
            company=company,
            company2=company2,
            place=place,
            place2=place2,
            drug=rng.choice(DRUGS),
            day=rng.randint(1, 28),
            month=rng.choice(MONTHS),
            year=rng.randint(1980, 1999),
        )
        picked = rng.sample(SENTENCES, rng.randint(2, 6))
        paragraphs = [" ".join(s.format(**values) for s in picked[i:i + 2]) for i in range(0, len(picked), 2)]
        docs.append((f"doc{k:03d}.txt", f"Reuter -- {place}.\n\n" + "\n\n".join(paragraphs) + "\n"))
    return docs
