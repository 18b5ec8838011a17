"""Aggregation of predications into knowledge units and knowledge objects.

A knowledge unit collects every claim sharing one (subject CUI, predicate,
object CUI) key. A claim is a distinct (sentence, key) pair: the same
sentence yielding the same triple twice is an extraction artifact and
collapses to the claim with the smallest predication id. A knowledge
object wraps a unit with a stable content-hash id and an uncertainty
status/score derived from its claims' cue tags.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping

from .cues import CueTags
from .model import ClaimCorpus, Predicate


class Status(enum.Enum):
    HEDGING = "Hedging"
    DIVERSITY = "Diversity"
    CONTROVERSY_CONTRADICTION = "ControversyContradiction"


class HedgeMode(enum.Enum):
    # Remove hedged claims everywhere; drop units left empty.
    DROP_CLAIMS = "drop_claims"
    # Drop only units whose every claim is hedged; mixed units keep all claims.
    DROP_UNITS_IF_EMPTY = "drop_units_if_empty"


class ScoreMode(enum.Enum):
    HEDGE = "hedge"  # only hedged claims count as uncertain
    ALL = "all"      # hedged or disagreement-cue claims count


@dataclass(frozen=True, slots=True)
class UnitKey:
    subject_cui: str
    predicate: Predicate
    object_cui: str

    @property
    def sort_key(self) -> tuple[str, str, str]:
        return (self.subject_cui, self.predicate.raw, self.object_cui)


@dataclass(frozen=True, slots=True)
class Claim:
    predication_id: str
    sentence_id: str
    article_id: str
    pub_year: int | None
    pub_month: int | None
    hedged: bool
    disagreement_cue: str | None

    @property
    def sort_key(self) -> tuple:
        # Unknown dates sort after known ones, matching the timeline's
        # trailing "unknown" bucket.
        return (
            self.pub_year is None,
            self.pub_year or 0,
            self.pub_month is None,
            self.pub_month or 0,
            self.article_id,
            self.sentence_id,
        )


@dataclass(frozen=True, slots=True)
class KnowledgeUnit:
    key: UnitKey
    claims: tuple[Claim, ...]

    def __post_init__(self) -> None:
        if not self.claims:
            raise ValueError("knowledge unit must carry at least one claim")
        sentence_ids = [c.sentence_id for c in self.claims]
        if len(set(sentence_ids)) != len(sentence_ids):
            raise ValueError(f"duplicate sentence claims in unit {self.key.sort_key}")


@dataclass(frozen=True, slots=True)
class KnowledgeObject:
    id: str
    unit: KnowledgeUnit
    statuses: frozenset[Status]
    uncertainty_score: Fraction

    def __post_init__(self) -> None:
        if not (0 <= self.uncertainty_score <= 1):
            raise ValueError("uncertainty score out of [0, 1]")


def object_id(key: UnitKey, corpus_version: str) -> str:
    payload = "\x1f".join((key.subject_cui, key.predicate.raw, key.object_cui, corpus_version))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def build_units(
    corpus: ClaimCorpus, tags: Mapping[str, CueTags]
) -> dict[UnitKey, KnowledgeUnit]:
    """Group the corpus into knowledge units, collapsing duplicate
    (sentence, key) extractions to the smallest predication id.

    The returned map is sorted by key and each unit's claims by
    (pub date, article, sentence), so the result is independent of input
    row order. Sentences absent from `tags` are treated as cue-free.
    """
    grouped: dict[UnitKey, dict[str, Claim]] = {}
    for p in corpus.predications:
        key = UnitKey(p.subject.cui, p.predicate, p.object.cui)
        bucket = grouped.setdefault(key, {})
        prior = bucket.get(p.sentence_id)
        if prior is not None and prior.predication_id <= p.predication_id:
            continue
        article = corpus.articles[p.article_id]
        tag = tags.get(p.sentence_id)
        bucket[p.sentence_id] = Claim(
            predication_id=p.predication_id,
            sentence_id=p.sentence_id,
            article_id=p.article_id,
            pub_year=article.pub_year,
            pub_month=article.pub_month,
            hedged=tag.hedged if tag else False,
            disagreement_cue=tag.first_disagreement_cue if tag else None,
        )
    return {
        key: KnowledgeUnit(key, tuple(sorted(grouped[key].values(), key=lambda c: c.sort_key)))
        for key in sorted(grouped, key=lambda k: k.sort_key)
    }


def make_object(
    unit: KnowledgeUnit,
    corpus_version: str,
    score_mode: ScoreMode = ScoreMode.ALL,
) -> KnowledgeObject:
    """Wrap a unit as a knowledge object: deterministic id, Hedging status
    iff any claim is hedged, and score = uncertain claims / total claims."""
    uncertain = sum(1 for c in unit.claims if _uncertain(c, score_mode))
    statuses = frozenset({Status.HEDGING}) if any(c.hedged for c in unit.claims) else frozenset()
    return KnowledgeObject(
        id=object_id(unit.key, corpus_version),
        unit=unit,
        statuses=statuses,
        uncertainty_score=Fraction(uncertain, len(unit.claims)),
    )


def _uncertain(c: Claim, mode: ScoreMode) -> bool:
    if mode is ScoreMode.HEDGE:
        return c.hedged
    return c.hedged or c.disagreement_cue is not None


def exclude_hedged(
    units: Mapping[UnitKey, KnowledgeUnit],
    mode: HedgeMode = HedgeMode.DROP_CLAIMS,
) -> dict[UnitKey, KnowledgeUnit]:
    """Apply the hedging exclusion. In DROP_CLAIMS mode every hedged claim
    is removed and emptied units disappear; in DROP_UNITS_IF_EMPTY mode a
    unit survives intact unless all of its claims are hedged."""
    out: dict[UnitKey, KnowledgeUnit] = {}
    for key, unit in units.items():
        kept = tuple(c for c in unit.claims if not c.hedged)
        if not kept:
            continue
        if mode is HedgeMode.DROP_UNITS_IF_EMPTY:
            out[key] = unit
        else:
            out[key] = KnowledgeUnit(key, kept) if len(kept) < len(unit.claims) else unit
    return out


def timeline(unit: KnowledgeUnit) -> list[tuple[int | None, int, int]]:
    """Per-year (year, claim_count, uncertain_claim_count) rows, ascending,
    with a trailing None-year bucket for undated claims. A claim is
    uncertain here iff hedged or carrying a disagreement cue."""
    buckets: dict[int | None, list[int]] = {}
    for c in unit.claims:
        row = buckets.setdefault(c.pub_year, [0, 0])
        row[0] += 1
        if c.hedged or c.disagreement_cue is not None:
            row[1] += 1
    years = sorted((y for y in buckets if y is not None))
    if None in buckets:
        years.append(None)  # type: ignore[arg-type]
    return [(y, buckets[y][0], buckets[y][1]) for y in years]


@dataclass(frozen=True)
class UnitsSnapshot:
    """Serialized payload of the `units` pipeline stage: the unit map plus
    the knowledge objects built from it, and the knobs used."""

    corpus_version: str
    score_mode: ScoreMode
    hedge_mode: HedgeMode | None
    excluded_claims: int
    units: dict[UnitKey, KnowledgeUnit]
    objects: dict[str, KnowledgeObject] = field(default_factory=dict)


def build_snapshot(
    corpus: ClaimCorpus,
    tags: Mapping[str, CueTags],
    corpus_version: str,
    *,
    hedge_mode: HedgeMode | None = None,
    score_mode: ScoreMode = ScoreMode.ALL,
) -> UnitsSnapshot:
    """Full units stage: aggregate, optionally exclude hedged claims, and
    mint knowledge objects for the surviving units."""
    units = build_units(corpus, tags)
    before = sum(len(u.claims) for u in units.values())
    if hedge_mode is not None:
        units = exclude_hedged(units, hedge_mode)
    after = sum(len(u.claims) for u in units.values())
    objects = {
        obj.id: obj
        for unit in units.values()
        for obj in (make_object(unit, corpus_version, score_mode),)
    }
    return UnitsSnapshot(
        corpus_version=corpus_version,
        score_mode=score_mode,
        hedge_mode=hedge_mode,
        excluded_claims=before - after,
        units=units,
        objects=objects,
    )
