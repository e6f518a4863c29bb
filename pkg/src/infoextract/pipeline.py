"""Configuration and the NE -> CO -> TE -> ST driver."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from infoextract.coref import (
    DEFAULT_PRONOUNS,
    cluster_proper_names,
    find_pronouns,
    read_nicknames,
    read_pronouns,
    resolve_pronouns,
)
from infoextract.errors import ResourceError
from infoextract.gazetteer import read_gazetteer
from infoextract.localize import read_lexicon, read_locale_format
from infoextract.ne import read_ne_rules, recognize
from infoextract.records import emit_records
from infoextract.scenario import CAPS, extract_events, read_scenario_rules
from infoextract.templates import build_entities, read_world_kb
from infoextract.text import Document, split_sentences, tokenize

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("records", "tabular")
_PATH_KEYS = ("gazetteer", "ne_rules", "nicknames", "pronouns", "world_kb", "scenario_rules", "lexicons")
_REQUIRED = ("gazetteer", "ne_rules", "world_kb", "scenario_rules")


class ConfigError(ValueError):
    pass


def default_config_path() -> Path:
    return Path(str(resources.files("infoextract") / "resources" / "default.conf"))


@dataclass(frozen=True)
class PipelineConfig:
    gazetteer: Path
    ne_rules: Path
    world_kb: Path
    scenario_rules: Path
    nicknames: Path | None = None
    pronouns: Path | None = None
    lexicons: Path | None = None
    pronoun_window: int = 2
    scenario_scope: str = "same-sentence"
    output_format: str = "records"

    def __post_init__(self):
        if isinstance(self.pronoun_window, bool) or not isinstance(self.pronoun_window, int) or self.pronoun_window < 1:
            raise ConfigError(f"pronoun_window must be a positive integer, got {self.pronoun_window!r}")
        if self.scenario_scope not in CAPS:
            raise ConfigError(f"scenario_scope must be one of {', '.join(CAPS)}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"output_format must be one of {', '.join(OUTPUT_FORMATS)}")
        for key in _PATH_KEYS:
            path = getattr(self, key)
            if path is None:
                continue
            if key == "lexicons":
                if not Path(path).is_dir():
                    raise ConfigError(f"lexicons: not a directory: {path}")
            elif not Path(path).is_file():
                raise ConfigError(f"{key}: no such file: {path}")


def parse_config(text: str, base: Path, origin=None) -> PipelineConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, value = (part.strip() for part in line.partition("="))
        if not eq or not key or not value:
            raise ConfigError(f"{origin}:{lineno}: expected key = value")
        if key in values:
            raise ConfigError(f"{origin}:{lineno}: repeated key {key!r}")
        if key in _PATH_KEYS:
            values[key] = (base / value).resolve()
        elif key == "pronoun_window":
            try:
                values[key] = int(value)
            except ValueError:
                raise ConfigError(f"{origin}:{lineno}: pronoun_window must be an integer") from None
        elif key in ("scenario_scope", "output_format"):
            values[key] = value
        else:
            raise ConfigError(f"{origin}:{lineno}: unknown key {key!r}")
    missing = [k for k in _REQUIRED if k not in values]
    if missing:
        raise ConfigError(f"{origin}: missing {', '.join(missing)}")
    return PipelineConfig(**values)


def load_config(path="default") -> PipelineConfig:
    """Read a key = value config; relative paths resolve against its directory."""
    path = default_config_path() if str(path) == "default" else Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, path.parent, origin=path)


@dataclass
class ExtractionResult:
    source_id: str
    mentions: list = field(default_factory=list)
    chains: list = field(default_factory=list)
    entities: list = field(default_factory=list)
    events: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    def emit(self, fmt="records") -> str:
        return emit_records(self.entities, self.events, fmt)


class Pipeline:
    """Loaded, immutable resources; safe to share between threads."""

    def __init__(self, config: PipelineConfig):
        self.config = config
        try:
            self.gazetteer = read_gazetteer(config.gazetteer)
            self.ne_rules = read_ne_rules(config.ne_rules)
            self.nicknames = read_nicknames(config.nicknames) if config.nicknames else {}
            self.pronouns = read_pronouns(config.pronouns) if config.pronouns else DEFAULT_PRONOUNS
            self.world_kb = read_world_kb(config.world_kb)
            self.scenario_rules = read_scenario_rules(config.scenario_rules)
        except OSError as exc:
            raise ConfigError(f"cannot read {exc.filename}: {exc.strerror}") from None

    def lexicon(self, locale: str):
        """(Lexicon, LocaleFormat) for `locale` from the lexicon directory."""
        if self.config.lexicons is None:
            raise ConfigError("no lexicon directory configured")
        return read_locale_resources(self.config.lexicons, locale)

    def run(self, doc: Document, scope: str | None = None) -> ExtractionResult:
        scope = scope or self.config.scenario_scope
        tokens = tokenize(doc)
        sentences = split_sentences(doc, tokens)
        mentions = recognize(doc, tokens, self.gazetteer, self.ne_rules)
        chains = cluster_proper_names(mentions, self.nicknames)
        pronouns = find_pronouns(tokens, mentions, self.pronouns)
        chains, unresolved = resolve_pronouns(doc, sentences, chains, pronouns, self.config.pronoun_window)
        entities = build_entities(doc, tokens, sentences, chains, self.world_kb, self.config.pronoun_window)
        events = extract_events(doc, sentences, entities, self.scenario_rules, scope, tokens)
        return ExtractionResult(
            doc.source_id,
            mentions,
            chains,
            entities,
            events,
            {"unresolved_pronouns": [p.surface for p in unresolved], "untranslated": []},
        )


def read_locale_resources(directory, locale: str):
    directory = Path(directory)
    lex_path = directory / f"lexicon.{locale}.tsv"
    fmt_path = directory / f"format.{locale}.txt"
    if not lex_path.is_file():
        raise ConfigError(f"no lexicon for locale {locale!r} in {directory}")
    lex = read_lexicon(lex_path)
    if lex.locale != locale:
        raise ResourceError(f"lexicon declares locale {lex.locale!r}, expected {locale!r}", None, lex_path)
    fmt = read_locale_format(fmt_path) if fmt_path.is_file() else None
    return lex, fmt


def run_pipeline(config: PipelineConfig, doc: Document) -> ExtractionResult:
    return Pipeline(config).run(doc)
