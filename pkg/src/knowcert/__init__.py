"""knowcert: computable medical knowledge objects with uncertainty status.

Pipeline: ingest SemMedDB-style predication/sentence/article TSVs, filter
to high-evidence drug-disease claims, tag uncertainty cues, aggregate
into knowledge units/objects, detect contradictory and diverse claims by
predicate polarity, curate findings over an append-only decision log,
and export report tables.
"""

from .cues import CueLexicon, CueTags, default_lexicon, is_hedged, tag_corpus, tag_sentence
from .detect import (
    ApparentFinding,
    ContradictionFinding,
    CurationState,
    CurationStatus,
    DiversityFinding,
    Finding,
    PairKey,
    detect_apparent,
    detect_contradictions,
    detect_diversity,
    mark_statuses,
)
from .filters import (
    ConceptPolicy,
    EvidencePolicy,
    default_concept_policy,
    default_evidence_policy,
    filter_corpus,
    is_drug_disease,
    matches_evidence,
)
from .ingest import (
    ARTICLES_FORMAT,
    PREDICATIONS_FORMAT,
    SENTENCES_FORMAT,
    FormatError,
    FormatSpec,
    RowError,
    link,
    parse_metadata,
    parse_predications,
    parse_sentences,
)
from .model import (
    ArticleMetadata,
    ClaimCorpus,
    Concept,
    Location,
    Predicate,
    PredicationRecord,
    SentenceRecord,
)
from .polarity import (
    Polarity,
    PolarityTable,
    contradicts,
    default_polarity_table,
    flip,
)
from .store import (
    Claim,
    HedgeMode,
    KnowledgeObject,
    KnowledgeUnit,
    ScoreMode,
    Status,
    UnitKey,
    build_units,
    exclude_hedged,
    make_object,
    timeline,
)

__version__ = "0.1.0"

__all__ = [
    "ARTICLES_FORMAT",
    "ApparentFinding",
    "ArticleMetadata",
    "Claim",
    "ClaimCorpus",
    "Concept",
    "ConceptPolicy",
    "ContradictionFinding",
    "CueLexicon",
    "CueTags",
    "CurationState",
    "CurationStatus",
    "DiversityFinding",
    "EvidencePolicy",
    "Finding",
    "FormatError",
    "FormatSpec",
    "HedgeMode",
    "KnowledgeObject",
    "KnowledgeUnit",
    "Location",
    "PREDICATIONS_FORMAT",
    "PairKey",
    "Polarity",
    "PolarityTable",
    "Predicate",
    "PredicationRecord",
    "RowError",
    "SENTENCES_FORMAT",
    "ScoreMode",
    "SentenceRecord",
    "Status",
    "UnitKey",
    "build_units",
    "contradicts",
    "default_concept_policy",
    "default_evidence_policy",
    "default_lexicon",
    "default_polarity_table",
    "detect_apparent",
    "detect_contradictions",
    "detect_diversity",
    "exclude_hedged",
    "filter_corpus",
    "flip",
    "is_drug_disease",
    "is_hedged",
    "link",
    "make_object",
    "mark_statuses",
    "matches_evidence",
    "parse_metadata",
    "parse_predications",
    "parse_sentences",
    "tag_corpus",
    "tag_sentence",
    "timeline",
]
