from __future__ import annotations

import io
from pathlib import Path

import pytest

from knowcert import cues, filters, ingest, store
from knowcert.detect import detect_apparent, detect_contradictions, detect_diversity
from knowcert.model import ClaimCorpus
from knowcert.polarity import default_polarity_table

DATA = Path(__file__).parent / "data"


def fixture_texts(stem: str) -> tuple[str, str, str]:
    return (
        (DATA / f"{stem}_predications.tsv").read_text(encoding="utf-8"),
        (DATA / f"{stem}_sentences.tsv").read_text(encoding="utf-8"),
        (DATA / f"{stem}_articles.tsv").read_text(encoding="utf-8"),
    )


def corpus_from_texts(pred_tsv: str, sent_tsv: str, art_tsv: str, *, strict: bool = True) -> ClaimCorpus:
    predications = ingest.parse_predications(io.StringIO(pred_tsv), strict=strict)
    sentences = ingest.parse_sentences(io.StringIO(sent_tsv), strict=strict)
    articles = ingest.parse_metadata(io.StringIO(art_tsv), strict=strict)
    return ingest.link(predications, sentences, articles, strict=strict)


def load_fixture_corpus(stem: str) -> ClaimCorpus:
    return corpus_from_texts(*fixture_texts(stem))


def run_pipeline(
    pred_tsv: str,
    sent_tsv: str,
    art_tsv: str,
    *,
    exclude_hedged: bool = True,
    min_claims: int = 1,
    corpus_version: str = "test",
    strict: bool = False,
):
    """Full pipeline on in-memory TSV text with the shipped policies.

    Returns (filtered corpus, tags, units snapshot, findings list) in the
    same composition the CLI stages use.
    """
    corpus = corpus_from_texts(pred_tsv, sent_tsv, art_tsv, strict=strict)
    corpus = filters.filter_corpus(
        corpus, filters.default_evidence_policy(), filters.default_concept_policy()
    )
    lexicon = cues.default_lexicon()
    tags = cues.tag_corpus(corpus, lexicon)
    snapshot = store.build_snapshot(
        corpus,
        tags,
        corpus_version,
        hedge_mode=store.HedgeMode.DROP_CLAIMS if exclude_hedged else None,
    )
    table = default_polarity_table()
    findings = []
    findings.extend(detect_contradictions(snapshot.units, table, min_claims=min_claims))
    findings.extend(detect_diversity(snapshot.units, table, min_claims=min_claims))
    findings.extend(detect_apparent(snapshot.units, tags))
    return corpus, tags, snapshot, findings


@pytest.fixture(scope="session")
def polarity_table():
    return default_polarity_table()


@pytest.fixture(scope="session")
def lexicon():
    return cues.default_lexicon()
