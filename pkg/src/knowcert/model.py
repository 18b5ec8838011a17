"""Core domain types: concepts, predicates, predications, sentences, articles.

Concept identity is the CUI everywhere; preferred names are display-only.
All types are immutable and hashable so they can be shared freely across
threads and used as dict/set keys.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Location(str, enum.Enum):
    """Where a sentence sits in its article. Codes match the TSV layout."""

    TITLE = "ti"
    ABSTRACT = "ab"


NEG_PREFIX = "NEG_"


@dataclass(frozen=True, slots=True)
class Predicate:
    """A relation name split into its base form and negation flag.

    The raw SemRep-style name round-trips exactly: ``NEG_TREATS`` becomes
    ``Predicate("TREATS", negated=True)`` and `.raw` rebuilds the input.
    """

    base: str
    negated: bool = False

    def __post_init__(self) -> None:
        if not self.base:
            raise ValueError("predicate base must be non-empty")
        if self.base.startswith(NEG_PREFIX):
            raise ValueError(f"predicate base may not start with {NEG_PREFIX!r}: {self.base!r}")

    @classmethod
    def from_raw(cls, raw: str) -> Predicate:
        """Split a raw predicate name into (base, negated).

        A single leading ``NEG_`` sets the flag; a doubled prefix is malformed
        because it cannot be represented losslessly.
        """
        if raw.startswith(NEG_PREFIX):
            return cls(raw[len(NEG_PREFIX):], negated=True)
        return cls(raw, negated=False)

    @property
    def raw(self) -> str:
        return (NEG_PREFIX if self.negated else "") + self.base

    def flip(self) -> Predicate:
        """Toggle the negation flag, keeping the base."""
        return Predicate(self.base, not self.negated)

    def __str__(self) -> str:
        return self.raw


@dataclass(frozen=True, slots=True)
class Concept:
    """A UMLS concept: CUI plus display name and semantic-type codes."""

    cui: str
    preferred_name: str
    semantic_types: frozenset[str]

    def __post_init__(self) -> None:
        if not self.cui:
            raise ValueError("concept CUI must be non-empty")
        if not self.semantic_types:
            raise ValueError(f"concept {self.cui} must carry at least one semantic type")


@dataclass(frozen=True, slots=True)
class PredicationRecord:
    """One extracted SPO triple tied to one sentence of one article."""

    predication_id: str
    sentence_id: str
    article_id: str
    subject: Concept
    predicate: Predicate
    object: Concept

    def __post_init__(self) -> None:
        if not (self.predication_id and self.sentence_id and self.article_id):
            raise ValueError("predication, sentence and article ids must be non-empty")


@dataclass(frozen=True, slots=True)
class SentenceRecord:
    """A source sentence; `text` keeps interior whitespace verbatim."""

    sentence_id: str
    article_id: str
    location: Location
    ordinal: int
    text: str

    def __post_init__(self) -> None:
        if not self.sentence_id:
            raise ValueError("sentence id must be non-empty")
        if not self.text:
            raise ValueError(f"sentence {self.sentence_id} has empty text")
        if self.ordinal < 0:
            raise ValueError(f"sentence {self.sentence_id} has negative ordinal")

    @property
    def claim_key(self) -> str:
        """Display key combining article, location, and ordinal, e.g. ``21862624.ab.11``."""
        return f"{self.article_id}.{self.location.value}.{self.ordinal}"


MIN_PUB_YEAR = 1800
MAX_PUB_YEAR = 2100


@dataclass(frozen=True, slots=True)
class ArticleMetadata:
    """Per-article evidence metadata: date, publication types, MeSH headings."""

    article_id: str
    pub_year: int | None
    pub_month: int | None = None
    publication_types: frozenset[str] = frozenset()
    mesh_headings: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if not self.article_id:
            raise ValueError("article id must be non-empty")
        if self.pub_year is not None and not (MIN_PUB_YEAR <= self.pub_year <= MAX_PUB_YEAR):
            raise ValueError(f"article {self.article_id}: pub_year {self.pub_year} out of range")
        if self.pub_month is not None and not (1 <= self.pub_month <= 12):
            raise ValueError(f"article {self.article_id}: pub_month {self.pub_month} out of range")


@dataclass(frozen=True)
class ClaimCorpus:
    """A linked, immutable claim corpus.

    Every predication's sentence_id and article_id resolve in the maps;
    records that failed to link sit in `quarantined` (lenient mode only).
    """

    predications: tuple[PredicationRecord, ...]
    sentences: dict[str, SentenceRecord]
    articles: dict[str, ArticleMetadata]
    quarantined: tuple[PredicationRecord, ...] = field(default_factory=tuple)

    def validate(self) -> None:
        """Check referential integrity; raises ValueError on a dangling ref."""
        for p in self.predications:
            if p.sentence_id not in self.sentences:
                raise ValueError(f"predication {p.predication_id}: unknown sentence {p.sentence_id}")
            if p.article_id not in self.articles:
                raise ValueError(f"predication {p.predication_id}: unknown article {p.article_id}")

    def sentence_of(self, p: PredicationRecord) -> SentenceRecord:
        return self.sentences[p.sentence_id]

    def article_of(self, p: PredicationRecord) -> ArticleMetadata:
        return self.articles[p.article_id]
