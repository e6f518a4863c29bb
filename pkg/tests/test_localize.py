import pytest
from conftest import GOLD, RESOURCES

from infoextract.dates import NormalizedDate
from infoextract.errors import ResourceError
from infoextract.localize import (
    Lexicon,
    LocaleFormat,
    load_lexicon,
    load_locale_format,
    localize_record,
    localize_records,
    read_lexicon,
    read_locale_format,
)
from infoextract.records import EntityRecord, EventRecord, read_records

FR = read_lexicon(RESOURCES / "lexicon.fr.tsv")


def test_lexicon_counts():
    assert len(load_lexicon("locale: xx\na\tb\nc\td\ne\tf\ng\th\n")) == 4
    assert len(load_lexicon("locale: xx\n")) == 0


def test_lexicon_errors():
    with pytest.raises(ResourceError) as err:
        load_lexicon("locale: fr\nlocation\tlieu\nlocation\tendroit\n")
    assert err.value.line == 3
    with pytest.raises(ResourceError):
        load_lexicon("location\tlieu\n")
    with pytest.raises(ResourceError):
        load_lexicon("locale: fr\nlocation lieu\n")
    with pytest.raises(ResourceError):
        load_lexicon("")


def test_empty_lexicon_passes_everything_through():
    lex = load_lexicon("locale: xx\n")
    text, untranslated = localize_record(EntityRecord("ENTITY-1", "heroin", "drug"), lex)
    assert text == "heroin\n    id: ENTITY-1\n    type: drug"
    assert untranslated == ["heroin", "id", "type", "drug"]


def test_slot_name_lookup():
    text, _ = localize_record(EntityRecord("ENTITY-4", "New York police", "organisation", {"location": "ENTITY-2"}), FR)
    assert "    lieu: ENTITY-2" in text.splitlines()


def test_date_rendering():
    us = LocaleFormat("m/d/yyyy")
    record = EntityRecord("ENTITY-3", "Wednesday 12 July 1996", "date", {"normalisation": NormalizedDate(12, 7, 1996)})
    text, _ = localize_record(record, FR, us)
    assert text.splitlines()[-1] == "    normalisation: 7/12/1996"
    partial = EntityRecord("ENTITY-9", "1989", "date", {"normalisation": NormalizedDate(None, None, 1989)})
    for path in sorted(RESOURCES.glob("format.*.txt")):
        text, _ = localize_record(partial, FR, read_locale_format(path))
        assert text.splitlines()[-1].count("?") == 2


def test_amount_formatting():
    fr = read_locale_format(RESOURCES / "format.fr.txt")
    de = read_locale_format(RESOURCES / "format.de.txt")
    rec = EntityRecord("ENTITY-1", "$1.5 million", "money", {"amount": "1500000.25 USD"})
    assert localize_record(rec, FR, fr)[0].splitlines()[-1].endswith(": 1 500 000,25 USD")
    assert localize_record(rec, FR, de)[0].splitlines()[-1].endswith(": 1.500.000,25 USD")
    assert localize_record(rec, Lexicon("en"), LocaleFormat())[0].splitlines()[-1] == "    amount: 1500000.25 USD"


def test_names_flagged_and_structure_kept():
    entities, events = read_records(GOLD)
    record = entities[4]
    text, untranslated = localize_record(record, FR)
    assert text.splitlines()[0] == "Frederick J. Thompson"
    assert untranslated == ["Frederick J. Thompson", "Thompson", "Fred"]
    assert len(text.splitlines()) == 2 + 1 + len(record.slots)
    ev_text, _ = localize_record(events[0], FR)
    assert ev_text.splitlines()[0] == "trafic-de-stupéfiants"
    assert "    auteurs: ENTITY-5, ENTITY-6" in ev_text.splitlines()


def test_locale_format_file():
    fmt = load_locale_format('date_pattern = dd.mm.yyyy\ndecimal = ","\ngroup = " "\n')
    assert fmt == LocaleFormat("dd.mm.yyyy", ",", " ")
    with pytest.raises(ResourceError):
        load_locale_format("colour = blue\n")
    with pytest.raises(ResourceError):
        load_locale_format("date_pattern = d/d/y\n")
    with pytest.raises(ResourceError):
        load_locale_format('decimal = ","\ngroup = ","\n')


def test_shipped_lexicons_load():
    for path in RESOURCES.glob("lexicon.*.tsv"):
        assert read_lexicon(path).locale == path.name.split(".")[1]


def test_empty_input():
    assert localize_records([], [], FR) == ("", [])


def test_identity_for_events_and_entities():
    e = EntityRecord("ENTITY-1", "Reuter", "company", {"business": "news"})
    v = EventRecord("EVENT-1", "joint-venture", {"companies": "ENTITY-1", "status": "past"})
    text, flagged = localize_records([e], [v], Lexicon("en"))
    assert text == "Reuter\n    id: ENTITY-1\n    type: company\n    business: news\n\njoint-venture\n    id: EVENT-1\n    companies: ENTITY-1\n    status: past\n"
    assert flagged == []
