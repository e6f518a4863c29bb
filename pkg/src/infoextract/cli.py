"""Command line entry point: ``infoextract extract|score|localize``.

Exit status is 0 on success, 1 for usage or configuration problems and 2
when an input document or record file cannot be read or parsed.
"""
from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from infoextract.errors import ResourceError
from infoextract.localize import localize_records
from infoextract.pipeline import ConfigError, Pipeline, default_config_path, load_config, read_locale_resources
from infoextract.records import read_records
from infoextract.scenario import CAPS
from infoextract.scoring import align, score_report
from infoextract.text import Document

logger = logging.getLogger("infoextract")

EXIT_OK, EXIT_USAGE, EXIT_INPUT = 0, 1, 2
SUFFIX = {"records": ".records", "tabular": ".tsv"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="infoextract", description="Rule-based information extraction.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ex = sub.add_parser("extract", help="extract entity and event records from text files")
    ex.add_argument("config", help="pipeline config file, or 'default' for the shipped resources")
    ex.add_argument("inputs", nargs="+", help="text files or directories of *.txt files")
    ex.add_argument("--out-dir", type=Path, help="write one output file per document here")
    ex.add_argument("--format", choices=sorted(SUFFIX), help="override the configured output format")
    ex.add_argument("--scope", choices=CAPS, help="override the configured scenario scope")
    ex.add_argument("--jobs", type=int, default=1, help="documents processed concurrently")

    sc = sub.add_parser("score", help="score system records against gold records")
    sc.add_argument("system")
    sc.add_argument("gold")

    lo = sub.add_parser("localize", help="render a record file in another locale")
    lo.add_argument("records")
    lo.add_argument("locale", help="locale tag, e.g. fr")
    lo.add_argument("--resources", type=Path, help="directory with lexicon.<tag>.tsv and format.<tag>.txt")
    lo.add_argument("--untranslated", type=Path, help="write untranslated items here, one per line")
    return parser


def _expand(inputs):
    """Manifest order: arguments as given, directories expanded in name order."""
    out = []
    for item in inputs:
        path = Path(item)
        if path.is_dir():
            out.extend(sorted(p for p in path.iterdir() if p.suffix == ".txt" and p.is_file()))
        else:
            out.append(path)
    return out


def _process(pipeline, path, fmt, scope):
    try:
        doc = Document.from_file(path)
    except (OSError, UnicodeDecodeError) as exc:
        return path, None, f"{path}: {exc}"
    try:
        result = pipeline.run(doc, scope)
        return path, result.emit(fmt), None
    except Exception as exc:  # one bad document must not stop the corpus
        logger.exception("failed on %s", path)
        return path, None, f"{path}: {type(exc).__name__}: {exc}"


def cmd_extract(args):
    if args.jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    config = load_config(args.config)
    pipeline = Pipeline(config)
    fmt = args.format or config.output_format
    paths = _expand(args.inputs)
    if args.out_dir is not None:
        stems = [p.stem for p in paths]
        dupes = sorted({s for s in stems if stems.count(s) > 1})
        if dupes:
            raise ConfigError(f"several inputs would write the same output: {', '.join(dupes)}")
        args.out_dir.mkdir(parents=True, exist_ok=True)

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(lambda p: _process(pipeline, p, fmt, args.scope), paths))

    failed = 0
    for path, text, error in results:
        if error is not None:
            failed += 1
            print(f"infoextract: skipped {error}", file=sys.stderr)
            continue
        if args.out_dir is not None:
            (args.out_dir / (path.stem + SUFFIX[fmt])).write_text(text, encoding="utf-8")
        elif len(paths) == 1:
            sys.stdout.write(text)
        else:
            sys.stdout.write(f"# {path.name}\n{text}\n")
        logger.info("%s done", path)
    return EXIT_INPUT if failed else EXIT_OK


def _read(path):
    try:
        return read_records(path)
    except OSError as exc:
        raise ResourceError(exc.strerror or str(exc), None, path) from None
    except UnicodeDecodeError as exc:
        raise ResourceError(f"not UTF-8 text ({exc.reason})", None, path) from None


def cmd_score(args):
    system = _read(args.system)
    gold = _read(args.gold)
    sys.stdout.write(score_report(align(system, gold)))
    return EXIT_OK


def cmd_localize(args):
    directory = args.resources or default_config_path().parent
    try:
        lex, fmt = read_locale_resources(directory, args.locale)
    except ResourceError as exc:
        raise ConfigError(str(exc)) from None
    entities, events = _read(args.records)
    text, untranslated = localize_records(entities, events, lex, fmt)
    sys.stdout.write(text)
    if args.untranslated is not None:
        args.untranslated.write_text("".join(f"{u}\n" for u in untranslated), encoding="utf-8")
    elif untranslated:
        print(f"infoextract: {len(untranslated)} untranslated item(s)", file=sys.stderr)
    return EXIT_OK


COMMANDS = {"extract": cmd_extract, "score": cmd_score, "localize": cmd_localize}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"infoextract: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        # bad shipped/configured resources are configuration errors; bad record inputs are input errors
        print(f"infoextract: {exc}", file=sys.stderr)
        return EXIT_USAGE if args.command == "extract" else EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
