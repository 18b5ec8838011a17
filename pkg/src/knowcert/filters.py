"""Evidence-level and concept-type filtering of a claim corpus.

Articles pass when any publication type or any MeSH heading matches the
policy (exact string comparison, case-sensitive, after trimming).
Predications pass when the subject looks like a drug, the object like a
disorder, and the subject is not a generic pharmacologic-action concept.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from typing import Iterable

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .model import ArticleMetadata, ClaimCorpus, PredicationRecord


class PolicyError(ValueError):
    """Malformed or vacuous policy file."""


@dataclass(frozen=True)
class EvidencePolicy:
    publication_types: frozenset[str]
    mesh_topics: frozenset[str]
    match_mode: str = "any"

    def __post_init__(self) -> None:
        if not self.publication_types and not self.mesh_topics:
            raise PolicyError("evidence policy needs at least one PT or MeSH entry")
        if self.match_mode != "any":
            raise PolicyError(f"unsupported match mode {self.match_mode!r}")


@dataclass(frozen=True)
class ConceptPolicy:
    subject_semtypes: frozenset[str]
    object_semtypes: frozenset[str]
    excluded_subject_cuis: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not self.subject_semtypes or not self.object_semtypes:
            raise PolicyError("concept policy semtype sets must be non-empty")


def matches_evidence(meta: ArticleMetadata, policy: EvidencePolicy) -> bool:
    return bool(
        meta.publication_types & policy.publication_types
        or meta.mesh_headings & policy.mesh_topics
    )


def is_drug_disease(p: PredicationRecord, policy: ConceptPolicy) -> bool:
    return (
        p.subject.cui not in policy.excluded_subject_cuis
        and bool(p.subject.semantic_types & policy.subject_semtypes)
        and bool(p.object.semantic_types & policy.object_semtypes)
    )


def filter_corpus(
    corpus: ClaimCorpus, ep: EvidencePolicy, cp: ConceptPolicy
) -> ClaimCorpus:
    """Keep predications passing both policies; drop newly orphaned
    sentences and articles. Quarantined rows never re-enter."""
    survivors = tuple(
        p
        for p in corpus.predications
        if matches_evidence(corpus.articles[p.article_id], ep) and is_drug_disease(p, cp)
    )
    live_sentences = {p.sentence_id for p in survivors}
    live_articles = {p.article_id for p in survivors}
    return ClaimCorpus(
        predications=survivors,
        sentences={sid: s for sid, s in corpus.sentences.items() if sid in live_sentences},
        articles={aid: a for aid, a in corpus.articles.items() if aid in live_articles},
        quarantined=(),
    )


def _string_set(data: dict, key: str, where: str) -> frozenset[str]:
    values = data.get(key, [])
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise PolicyError(f"{where}: {key} must be a list of strings")
    return frozenset(v.strip() for v in values if v.strip())


def parse_evidence_policy(text: str, where: str = "evidence policy") -> EvidencePolicy:
    data = tomllib.loads(text)
    return EvidencePolicy(
        publication_types=_string_set(data, "publication_types", where),
        mesh_topics=_string_set(data, "mesh_topics", where),
    )


def parse_concept_policy(text: str, where: str = "concept policy") -> ConceptPolicy:
    data = tomllib.loads(text)
    return ConceptPolicy(
        subject_semtypes=frozenset(
            c.lower() for c in _string_set(data, "subject_semtypes", where)
        ),
        object_semtypes=frozenset(
            c.lower() for c in _string_set(data, "object_semtypes", where)
        ),
        excluded_subject_cuis=_string_set(data, "excluded_subject_cuis", where),
    )


def load_evidence_policy(path: str) -> EvidencePolicy:
    with open(path, "rb") as fh:
        return parse_evidence_policy(fh.read().decode("utf-8"), path)


def load_concept_policy(path: str) -> ConceptPolicy:
    with open(path, "rb") as fh:
        return parse_concept_policy(fh.read().decode("utf-8"), path)


def parse_cui_list(lines: Iterable[str]) -> frozenset[str]:
    """One CUI per line; `#` starts a comment (whole-line or trailing)."""
    cuis: set[str] = set()
    for line in lines:
        body = line.split("#", 1)[0].strip()
        if body:
            cuis.add(body)
    return frozenset(cuis)


def load_excluded_cuis(path: str) -> frozenset[str]:
    with open(path, encoding="utf-8") as fh:
        return parse_cui_list(fh)


def _data_text(name: str) -> str:
    return (
        importlib.resources.files("knowcert.data").joinpath(name).read_text(encoding="utf-8")
    )


def default_evidence_policy() -> EvidencePolicy:
    return parse_evidence_policy(_data_text("evidence_policy.toml"))


def default_concept_policy() -> ConceptPolicy:
    return parse_concept_policy(_data_text("concept_policy.toml"))
