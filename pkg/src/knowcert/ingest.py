"""Streaming TSV ingestion: predications, sentences, article metadata.

Input files mirror SemMedDB-style exports: UTF-8, tab-separated, one
required header line that must match the declared column layout exactly.
Parsers are single-pass and per-row pure, so partitions of a file can be
parsed in parallel and merged; `link` is the single-threaded join.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable, Iterator, TextIO

from .model import (
    ArticleMetadata,
    ClaimCorpus,
    Concept,
    Location,
    MAX_PUB_YEAR,
    MIN_PUB_YEAR,
    Predicate,
    PredicationRecord,
    SentenceRecord,
)


class FormatError(ValueError):
    """Fatal layout problem: missing or mismatched header."""


class RowError(ValueError):
    """A malformed row. Collected in lenient mode, raised in strict mode."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass(frozen=True)
class FormatSpec:
    """Declared column layout of one input file kind."""

    columns: tuple[str, ...]
    delimiter: str = "\t"
    list_delimiter: str = ","


PREDICATIONS_FORMAT = FormatSpec(
    columns=(
        "PREDICATION_ID",
        "SENTENCE_ID",
        "PMID",
        "PREDICATE",
        "SUBJECT_CUI",
        "SUBJECT_NAME",
        "SUBJECT_SEMTYPES",
        "OBJECT_CUI",
        "OBJECT_NAME",
        "OBJECT_SEMTYPES",
    ),
    list_delimiter=",",
)

SENTENCES_FORMAT = FormatSpec(
    columns=("SENTENCE_ID", "PMID", "LOCATION", "ORDINAL", "TEXT"),
)

ARTICLES_FORMAT = FormatSpec(
    columns=("PMID", "PUB_DATE", "PUB_TYPES", "MESH_HEADINGS"),
    list_delimiter="|",
)

_MONTHS = ("Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec")
_MONTH_NUMBER = {name.lower(): i + 1 for i, name in enumerate(_MONTHS)}


def _text_stream(stream: BinaryIO | TextIO) -> TextIO:
    if isinstance(stream, io.TextIOBase):
        return stream
    return io.TextIOWrapper(stream, encoding="utf-8", newline="")


def _rows(
    stream: BinaryIO | TextIO,
    fmt: FormatSpec,
    strict: bool,
    errors: list[RowError] | None,
) -> Iterator[tuple[int, list[str]]]:
    """Yield (line_number, fields) for well-shaped rows; validate the header."""
    reader = csv.reader(_text_stream(stream), delimiter=fmt.delimiter, quoting=csv.QUOTE_NONE)
    header = next(reader, None)
    if header is None:
        return  # empty input: vacuously fine, zero records
    if tuple(header) != fmt.columns:
        raise FormatError(
            f"header mismatch: expected {list(fmt.columns)}, got {header}"
        )
    want = len(fmt.columns)
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue  # blank line
        if len(row) != want:
            _report(RowError(lineno, f"expected {want} columns, got {len(row)}"), strict, errors)
            continue
        yield lineno, row


def _report(err: RowError, strict: bool, errors: list[RowError] | None) -> None:
    if strict:
        raise err
    if errors is not None:
        errors.append(err)


def _split_set(raw: str, delim: str) -> frozenset[str]:
    return frozenset(part.strip() for part in raw.split(delim) if part.strip())


def parse_predications(
    stream: BinaryIO | TextIO,
    fmt: FormatSpec = PREDICATIONS_FORMAT,
    *,
    strict: bool = False,
    errors: list[RowError] | None = None,
) -> list[PredicationRecord]:
    """Parse predication rows, splitting raw predicate names into (base, negated).

    Row order is preserved. Malformed rows are collected into `errors`
    (or raised, in strict mode); a bad header is always fatal.
    """
    records: list[PredicationRecord] = []
    # Concepts and predicates repeat heavily across rows; dedupe so a
    # million-row corpus shares one object per distinct concept.
    concepts: dict[tuple[str, str, str], Concept] = {}
    predicates: dict[str, Predicate] = {}

    def concept(cui: str, name: str, semtypes: str) -> Concept:
        key = (cui, name, semtypes)
        got = concepts.get(key)
        if got is None:
            got = concepts[key] = Concept(cui, name, _split_set(semtypes, fmt.list_delimiter))
        return got

    for lineno, row in _rows(stream, fmt, strict, errors):
        pid, sid, pmid, pred_raw, s_cui, s_name, s_types, o_cui, o_name, o_types = (
            f.strip() for f in row
        )
        try:
            pred_raw = pred_raw.upper()
            predicate = predicates.get(pred_raw)
            if predicate is None:
                predicate = predicates[pred_raw] = Predicate.from_raw(pred_raw)
            records.append(
                PredicationRecord(
                    predication_id=pid,
                    sentence_id=sid,
                    article_id=pmid,
                    subject=concept(s_cui, s_name, s_types),
                    predicate=predicate,
                    object=concept(o_cui, o_name, o_types),
                )
            )
        except ValueError as exc:
            _report(RowError(lineno, str(exc)), strict, errors)
    return records


def parse_sentences(
    stream: BinaryIO | TextIO,
    fmt: FormatSpec = SENTENCES_FORMAT,
    *,
    strict: bool = False,
    errors: list[RowError] | None = None,
) -> list[SentenceRecord]:
    """Parse sentence rows. Text keeps interior whitespace verbatim;
    only leading/trailing whitespace is stripped."""
    records: list[SentenceRecord] = []
    for lineno, row in _rows(stream, fmt, strict, errors):
        sid, pmid, loc, ordinal, text = row
        try:
            records.append(
                SentenceRecord(
                    sentence_id=sid.strip(),
                    article_id=pmid.strip(),
                    location=Location(loc.strip()),
                    ordinal=int(ordinal.strip()),
                    text=text.strip(),
                )
            )
        except ValueError as exc:
            _report(RowError(lineno, str(exc)), strict, errors)
    return records


def parse_pub_date(raw: str) -> tuple[int | None, int | None]:
    """Parse a "YYYY" or "YYYY Mon" date field into (year, month).

    An unparseable year yields (None, None); an unparseable month is
    dropped but the year kept.
    """
    tokens = raw.split()
    if not tokens:
        return None, None
    try:
        year = int(tokens[0])
    except ValueError:
        return None, None
    if not (MIN_PUB_YEAR <= year <= MAX_PUB_YEAR):
        return None, None
    month = _MONTH_NUMBER.get(tokens[1].lower()) if len(tokens) > 1 else None
    return year, month


def format_pub_date(year: int | None, month: int | None) -> str:
    if year is None:
        return ""
    if month is None:
        return str(year)
    return f"{year} {_MONTHS[month - 1]}"


def parse_metadata(
    stream: BinaryIO | TextIO,
    fmt: FormatSpec = ARTICLES_FORMAT,
    *,
    strict: bool = False,
    errors: list[RowError] | None = None,
) -> list[ArticleMetadata]:
    """Parse article metadata rows; PT and MeSH fields are `|`-delimited sets.

    A record with an unparseable date is kept with pub_year absent and a
    warning collected.
    """
    records: list[ArticleMetadata] = []
    for lineno, row in _rows(stream, fmt, strict, errors):
        pmid, pub_date, pub_types, mesh = (f.strip() for f in row)
        year, month = parse_pub_date(pub_date)
        if year is None and pub_date:
            # Kept, but flag the unusable date so operators can fix the dump.
            if errors is not None:
                errors.append(RowError(lineno, f"unparseable pub date {pub_date!r}; year dropped"))
        try:
            records.append(
                ArticleMetadata(
                    article_id=pmid,
                    pub_year=year,
                    pub_month=month,
                    publication_types=_split_set(pub_types, fmt.list_delimiter),
                    mesh_headings=_split_set(mesh, fmt.list_delimiter),
                )
            )
        except ValueError as exc:
            _report(RowError(lineno, str(exc)), strict, errors)
    return records


def link(
    predications: Iterable[PredicationRecord],
    sentences: Iterable[SentenceRecord],
    metadata: Iterable[ArticleMetadata],
    *,
    strict: bool = False,
) -> ClaimCorpus:
    """Cross-reference the three collections into a ClaimCorpus.

    Predications whose sentence or article is missing are quarantined;
    in strict mode any dangling reference is fatal. Duplicate sentence,
    article, or predication ids are always fatal (corpus integrity).
    """
    sentence_map: dict[str, SentenceRecord] = {}
    for s in sentences:
        if s.sentence_id in sentence_map:
            raise ValueError(f"duplicate sentence id {s.sentence_id}")
        sentence_map[s.sentence_id] = s
    article_map: dict[str, ArticleMetadata] = {}
    for a in metadata:
        if a.article_id in article_map:
            raise ValueError(f"duplicate article id {a.article_id}")
        article_map[a.article_id] = a

    seen_pids: set[str] = set()
    linked: list[PredicationRecord] = []
    quarantined: list[PredicationRecord] = []
    for p in predications:
        if p.predication_id in seen_pids:
            raise ValueError(f"duplicate predication id {p.predication_id}")
        seen_pids.add(p.predication_id)
        if p.sentence_id in sentence_map and p.article_id in article_map:
            linked.append(p)
        elif strict:
            missing = "sentence" if p.sentence_id not in sentence_map else "article"
            raise ValueError(
                f"predication {p.predication_id}: dangling {missing} reference"
            )
        else:
            quarantined.append(p)
    return ClaimCorpus(
        predications=tuple(linked),
        sentences=sentence_map,
        articles=article_map,
        quarantined=tuple(quarantined),
    )


# --- writers: corpus back to the input format (round-trip support) ---------


def _write_row(out: TextIO, fields: Iterable[str]) -> None:
    out.write("\t".join(fields))
    out.write("\n")


def write_predications(records: Iterable[PredicationRecord], out: TextIO,
                       fmt: FormatSpec = PREDICATIONS_FORMAT) -> None:
    _write_row(out, fmt.columns)
    delim = fmt.list_delimiter
    for p in records:
        _write_row(out, (
            p.predication_id,
            p.sentence_id,
            p.article_id,
            p.predicate.raw,
            p.subject.cui,
            p.subject.preferred_name,
            delim.join(sorted(p.subject.semantic_types)),
            p.object.cui,
            p.object.preferred_name,
            delim.join(sorted(p.object.semantic_types)),
        ))


def write_sentences(records: Iterable[SentenceRecord], out: TextIO,
                    fmt: FormatSpec = SENTENCES_FORMAT) -> None:
    _write_row(out, fmt.columns)
    for s in records:
        _write_row(out, (s.sentence_id, s.article_id, s.location.value, str(s.ordinal), s.text))


def write_metadata(records: Iterable[ArticleMetadata], out: TextIO,
                   fmt: FormatSpec = ARTICLES_FORMAT) -> None:
    _write_row(out, fmt.columns)
    delim = fmt.list_delimiter
    for a in records:
        _write_row(out, (
            a.article_id,
            format_pub_date(a.pub_year, a.pub_month),
            delim.join(sorted(a.publication_types)),
            delim.join(sorted(a.mesh_headings)),
        ))


def write_corpus_tsv(corpus: ClaimCorpus) -> tuple[str, str, str]:
    """Serialize a corpus back to (predications, sentences, articles) TSV text.

    Quarantined predications are appended after the linked ones so that
    re-parsing and re-linking reproduces the corpus field-by-field.
    """
    pred_out, sent_out, art_out = io.StringIO(), io.StringIO(), io.StringIO()
    write_predications(list(corpus.predications) + list(corpus.quarantined), pred_out)
    write_sentences(corpus.sentences.values(), sent_out)
    write_metadata(corpus.articles.values(), art_out)
    return pred_out.getvalue(), sent_out.getvalue(), art_out.getvalue()
