"""Synthetic SemMedDB-shaped corpora for tests and benchmarks.

Generation is deterministic per seed and emits the same TSV text the
real parsers consume, so synthetic runs exercise the full pipeline. The
sentence vocabulary mixes in near-miss tokens ("mayor", "maybe",
"couldn't", "uncontradictory") that must never match the cue lexicons.
"""

from __future__ import annotations

import io
import random
from dataclasses import dataclass, field

DEFAULT_PREDICATES: tuple[str, ...] = (
    # Excitatory
    "CAUSES",
    "PREDISPOSES",
    "AUGMENTS",
    "NEG_PREVENTS",
    "NEG_TREATS",
    # Inhibitory
    "TREATS",
    "PREVENTS",
    "INHIBITS",
    "NEG_CAUSES",
    "NEG_PREDISPOSES",
    # Neutral
    "ASSOCIATED_WITH",
    "COEXISTS_WITH",
    "AFFECTS",
)

_WORDS = (
    "tumor", "cells", "growth", "therapy", "patients", "survival", "response",
    "treatment", "dose", "trial", "cohort", "risk", "markers", "tissue",
    "mayor", "maybe", "dismayed", "couldn't", "mightily", "uncontradictory",
    "non-small", "first-line", "outcomes", "baseline",
)

_MATCHING_PTS = ("Randomized Controlled Trial", "Meta-Analysis", "Clinical Trial")
_NON_MATCHING_PTS = ("Case Reports", "Editorial", "Letter")
_MATCHING_MESH = ("Clinical Trials as Topic",)
_SUBJECT_SEMTYPES = ("phsu", "phsu,orch", "vita", "horm")
_OBJECT_SEMTYPES = ("dsyn", "neop", "dsyn,fndg", "sosy")
_OFF_POLICY_SEMTYPES = ("gngm", "topp", "aggp")

_HEDGES = ("may", "could", "might")
_CUES = ("conflicting", "controversial", "contradictory")


@dataclass(frozen=True)
class SynthConfig:
    predications: int = 1000
    subjects: int = 25
    objects: int = 12
    sentences_per_article: int = 6
    predications_per_sentence: float = 1.4
    hedge_rate: float = 0.2
    disagreement_rate: float = 0.05
    pt_match_rate: float = 0.9
    concept_match_rate: float = 0.95
    duplicate_rate: float = 0.03
    predicates: tuple[str, ...] = DEFAULT_PREDICATES
    seed: int = 0


@dataclass
class SynthCorpus:
    predications_tsv: str
    sentences_tsv: str
    articles_tsv: str
    config: SynthConfig = field(repr=False, default_factory=SynthConfig)


def _sentence_text(rng: random.Random, hedge_rate: float, cue_rate: float) -> str:
    words = [rng.choice(_WORDS) for _ in range(rng.randint(6, 14))]
    if rng.random() < hedge_rate:
        words.insert(rng.randrange(len(words) + 1), rng.choice(_HEDGES))
    if rng.random() < cue_rate:
        words.insert(rng.randrange(len(words) + 1), rng.choice(_CUES))
    words[0] = words[0].capitalize()
    return " ".join(words) + "."


def generate(cfg: SynthConfig) -> SynthCorpus:
    """Emit a linked three-file corpus with cfg.predications rows."""
    rng = random.Random(cfg.seed)
    n_sentences = max(1, int(cfg.predications / cfg.predications_per_sentence))
    n_articles = max(1, n_sentences // cfg.sentences_per_article + 1)

    art_out = io.StringIO()
    art_out.write("PMID\tPUB_DATE\tPUB_TYPES\tMESH_HEADINGS\n")
    for a in range(n_articles):
        pmid = f"9{a:07d}"
        year = rng.randint(1999, 2019)
        date = f"{year} {rng.choice(('Jan', 'Apr', 'Jul', 'Oct'))}" if rng.random() < 0.8 else str(year)
        if rng.random() < cfg.pt_match_rate:
            pts = rng.choice(_MATCHING_PTS)
            mesh = rng.choice(_MATCHING_MESH) if rng.random() < 0.3 else ""
        else:
            pts = rng.choice(_NON_MATCHING_PTS)
            mesh = ""
        art_out.write(f"{pmid}\t{date}\t{pts}\t{mesh}\n")

    sent_out = io.StringIO()
    sent_out.write("SENTENCE_ID\tPMID\tLOCATION\tORDINAL\tTEXT\n")
    sentence_ids: list[str] = []
    for s in range(n_sentences):
        article = s // cfg.sentences_per_article
        pmid = f"9{article:07d}"
        ordinal = s % cfg.sentences_per_article
        location = "ti" if ordinal == 0 and rng.random() < 0.3 else "ab"
        sid = f"S{s:08d}"
        sentence_ids.append(sid)
        text = _sentence_text(rng, cfg.hedge_rate, cfg.disagreement_rate)
        sent_out.write(f"{sid}\t{pmid}\t{location}\t{ordinal}\t{text}\n")

    pred_out = io.StringIO()
    pred_out.write(
        "PREDICATION_ID\tSENTENCE_ID\tPMID\tPREDICATE\tSUBJECT_CUI\tSUBJECT_NAME"
        "\tSUBJECT_SEMTYPES\tOBJECT_CUI\tOBJECT_NAME\tOBJECT_SEMTYPES\n"
    )
    pid = 0
    emitted = 0
    last_row: str | None = None
    while emitted < cfg.predications:
        if last_row is not None and rng.random() < cfg.duplicate_rate:
            # Same sentence and triple under a fresh predication id: the
            # claim-dedup path must collapse these.
            row = last_row
        else:
            s_index = rng.randrange(n_sentences)
            sid = sentence_ids[s_index]
            pmid = f"9{s_index // cfg.sentences_per_article:07d}"
            subj = rng.randrange(cfg.subjects)
            obj = rng.randrange(cfg.objects)
            predicate = rng.choice(cfg.predicates)
            if rng.random() < cfg.concept_match_rate:
                s_types = rng.choice(_SUBJECT_SEMTYPES)
                o_types = rng.choice(_OBJECT_SEMTYPES)
            else:
                s_types = rng.choice(_OFF_POLICY_SEMTYPES)
                o_types = rng.choice(_OBJECT_SEMTYPES)
            s_name = f"Drug {subj}" if rng.random() < 0.9 else f"drug {subj}"
            row = (
                f"{sid}\t{pmid}\t{predicate}\tC9{subj:06d}\t{s_name}\t{s_types}"
                f"\tC8{obj:06d}\tDisease {obj}\t{o_types}"
            )
            last_row = row
        pid += 1
        pred_out.write(f"P{pid:09d}\t{row}\n")
        emitted += 1

    return SynthCorpus(
        predications_tsv=pred_out.getvalue(),
        sentences_tsv=sent_out.getvalue(),
        articles_tsv=art_out.getvalue(),
        config=cfg,
    )


def write_corpus(corpus: SynthCorpus, directory: str) -> tuple[str, str, str]:
    import os

    paths = (
        os.path.join(directory, "predications.tsv"),
        os.path.join(directory, "sentences.tsv"),
        os.path.join(directory, "articles.tsv"),
    )
    for path, text in zip(
        paths, (corpus.predications_tsv, corpus.sentences_tsv, corpus.articles_tsv)
    ):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return paths
