import pytest
from conftest import FIXTURE, GOLD, RESOURCES

from infoextract.cli import main
from infoextract.pipeline import ConfigError, PipelineConfig, load_config, run_pipeline
from infoextract.records import parse_records
from infoextract.text import Document


def write_config(tmp_path, **overrides):
    lines = {
        "gazetteer": RESOURCES / "gazetteer.tsv",
        "ne_rules": RESOURCES / "ne_rules.tsv",
        "world_kb": RESOURCES / "world_kb.txt",
        "scenario_rules": RESOURCES / "scenarios.txt",
    }
    lines.update(overrides)
    path = tmp_path / "test.conf"
    path.write_text("".join(f"{k} = {v}\n" for k, v in lines.items()))
    return path


# configuration ---------------------------------------------------------------


def test_default_config():
    cfg = load_config()
    assert cfg.pronoun_window == 2
    assert cfg.scenario_scope == "same-sentence"
    assert cfg.output_format == "records"


def test_missing_gazetteer_names_path(tmp_path):
    path = write_config(tmp_path, gazetteer=tmp_path / "nowhere.tsv")
    with pytest.raises(ConfigError, match="nowhere.tsv"):
        load_config(path)


def test_relative_paths_resolve_against_config(tmp_path):
    (tmp_path / "g.tsv").write_text("Paris\tlocation\n")
    cfg = load_config(write_config(tmp_path, gazetteer="g.tsv"))
    assert cfg.gazetteer == tmp_path / "g.tsv"
    result = run_pipeline(cfg, Document("Paris."))
    assert [e.name for e in result.entities] == ["Paris"]


@pytest.mark.parametrize(
    "extra",
    [{"pronoun_window": "0"}, {"pronoun_window": "two"}, {"scenario_scope": "paragraph"}, {"output_format": "xml"}, {"colour": "blue"}],
)
def test_bad_config_values(tmp_path, extra):
    with pytest.raises(ConfigError):
        load_config(write_config(tmp_path, **extra))


def test_config_requires_core_resources(tmp_path):
    path = tmp_path / "c.conf"
    path.write_text(f"gazetteer = {RESOURCES / 'gazetteer.tsv'}\n")
    with pytest.raises(ConfigError, match="missing"):
        load_config(path)
    with pytest.raises(ConfigError):
        PipelineConfig(RESOURCES / "gazetteer.tsv", RESOURCES / "ne_rules.tsv", RESOURCES / "world_kb.txt",
                       RESOURCES / "scenarios.txt", pronoun_window=True)


def test_pipeline_result_contents():
    result = run_pipeline(load_config(), Document.from_file(FIXTURE))
    assert result.source_id == FIXTURE.name
    assert (len(result.entities), len(result.events)) == (13, 2)
    assert len(result.chains) == 13
    assert result.diagnostics["unresolved_pronouns"] == []
    empty = run_pipeline(load_config(), Document(""))
    assert (empty.mentions, empty.entities, empty.events, empty.emit()) == ([], [], [], "")


# commands -------------------------------------------------------------------


def test_extract_stdout(capsys):
    assert main(["extract", "default", str(FIXTURE)]) == 0
    assert capsys.readouterr().out == GOLD.read_text()


def test_extract_tabular_to_dir(tmp_path):
    out = tmp_path / "out"
    assert main(["extract", "default", str(FIXTURE), "--format", "tabular", "--out-dir", str(out)]) == 0
    rows = (out / "reuter-1996-07-12.tsv").read_text().splitlines()
    assert rows[0] == "id\ttype\tslot\tvalue"
    assert "ENTITY-12\tdrug\tclass\tA" in rows


def test_extract_directory_and_bad_document(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    (corpus / "a.txt").write_text("Peter Hale met Anna Berg in Paris.")
    (corpus / "b.txt").write_bytes(b"\xff\xfe not utf-8")
    (corpus / "c.txt").write_text("Mary Quinn left London.")
    (corpus / "ignored.md").write_text("Paris")
    code = main(["extract", "default", str(corpus)])
    captured = capsys.readouterr()
    assert code == 2
    assert "b.txt" in captured.err
    assert [line for line in captured.out.splitlines() if line.startswith("# ")] == ["# a.txt", "# c.txt"]


def test_extract_duplicate_stems_rejected(tmp_path):
    (tmp_path / "x").mkdir()
    (tmp_path / "y").mkdir()
    (tmp_path / "x" / "a.txt").write_text("Paris")
    (tmp_path / "y" / "a.txt").write_text("London")
    args = ["extract", "default", str(tmp_path / "x" / "a.txt"), str(tmp_path / "y" / "a.txt"), "--out-dir", str(tmp_path / "o")]
    assert main(args) == 1


def test_extract_bad_config(tmp_path, capsys):
    assert main(["extract", str(tmp_path / "none.conf"), str(FIXTURE)]) == 1
    broken = tmp_path / "rules.tsv"
    broken.write_text("r\t{nonsense}\tperson\n")
    assert main(["extract", str(write_config(tmp_path, ne_rules=broken)), str(FIXTURE)]) == 1
    assert "rules.tsv:1" in capsys.readouterr().err


def test_usage_errors_exit_1():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["extract", "default", str(FIXTURE), "--scope", "paragraph"])
    assert exc.value.code == 1
    assert main(["extract", "default", str(FIXTURE), "--jobs", "0"]) == 1


def test_score(tmp_path, capsys):
    assert main(["score", str(GOLD), str(GOLD)]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "overall\t1.0000\t1.0000\t1.0000"
    partial = tmp_path / "partial.records"
    partial.write_text(GOLD.read_text().split("\n\nDowning-Jones")[0] + "\n")
    assert main(["score", str(partial), str(GOLD)]) == 0
    rows = {r.split("\t")[0]: r.split("\t")[1:] for r in capsys.readouterr().out.splitlines()[1:]}
    assert rows["entity"][0] == "1.0000" and float(rows["entity"][1]) < 1


def test_score_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.records"
    bad.write_text("heroin\n    id: ENTITY-1\n    type drug\n")
    assert main(["score", str(bad), str(GOLD)]) == 2
    assert "bad.records:3" in capsys.readouterr().err
    assert main(["score", str(tmp_path / "missing"), str(GOLD)]) == 2


def test_localize(tmp_path, capsys):
    listing = tmp_path / "untranslated.txt"
    assert main(["localize", str(GOLD), "fr", "--untranslated", str(listing)]) == 0
    out = capsys.readouterr().out
    assert "    lieu: ENTITY-2" in out
    assert "Frederick J. Thompson" in listing.read_text().splitlines()
    assert main(["localize", str(GOLD), "en"]) == 0
    assert capsys.readouterr().out == GOLD.read_text()
    assert main(["localize", str(GOLD), "tlh"]) == 1


def test_output_parses_back(capsys):
    main(["extract", "default", str(FIXTURE)])
    entities, events = parse_records(capsys.readouterr().out)
    assert len(entities) == 13
