"""Tabular exports of curated findings and pipeline statistics.

Every report is an ordered header plus string rows, rendered to CSV,
JSON, or Markdown with identical logical content. Row and column orders
are fixed, and no timestamps appear in data rows, so equal inputs export
byte-identically.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .detect import (
    ApparentFinding,
    ContradictionFinding,
    DiversityFinding,
    Finding,
    PredicateEvidence,
)
from .ingest import format_pub_date
from .model import ClaimCorpus
from .store import KnowledgeObject

UNLABELED = "/"


@dataclass(frozen=True)
class Report:
    kind: str
    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != len(self.header):
                raise ValueError(f"row width {len(row)} != header width {len(self.header)}")


def display_names(corpus: ClaimCorpus) -> dict[str, str]:
    """Most frequent preferred spelling per CUI, ties broken alphabetically."""
    tallies: dict[str, Counter[str]] = {}
    for p in corpus.predications:
        for concept in (p.subject, p.object):
            tallies.setdefault(concept.cui, Counter())[concept.preferred_name] += 1
    return {
        cui: min(counts.items(), key=lambda kv: (-kv[1], kv[0]))[0]
        for cui, counts in tallies.items()
    }


def _predicate_counts(evidence: Iterable[PredicateEvidence]) -> str:
    return " ".join(f"{ev.predicate.raw} ({ev.claim_count})" for ev in evidence)


def contradiction_table(
    findings: Sequence[Finding],
    names: Mapping[str, str] | None = None,
) -> Report:
    """One row per contradiction: Excitatory predicates first, then
    Inhibitory, each side alphabetical, every predicate with its claim
    count. The Category column carries the curation label, `/` if none."""
    names = names or {}
    rows: list[tuple[str, ...]] = []
    for f in findings:
        if not isinstance(f, ContradictionFinding):
            continue
        rows.append(
            (
                f.pair.subject_cui,
                names.get(f.pair.subject_cui, f.pair.subject_cui),
                _predicate_counts(f.excitatory) + " " + _predicate_counts(f.inhibitory),
                f.pair.object_cui,
                names.get(f.pair.object_cui, f.pair.object_cui),
                f.status.category_label or UNLABELED,
            )
        )
    return Report(
        kind="contradictions",
        header=(
            "Subject CUI",
            "Subject",
            "Predicate (# claims)",
            "Object CUI",
            "Object",
            "Category",
        ),
        rows=tuple(rows),
    )


def diversity_histogram(findings: Sequence[Finding]) -> Report:
    """Distinct diversity label sets with pair counts, most common first."""
    counts: Counter[str] = Counter()
    for f in findings:
        if isinstance(f, DiversityFinding):
            counts[", ".join(sorted(p.raw for p in f.label_set))] += 1
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return Report(
        kind="diversity",
        header=("Diversity", "#"),
        rows=tuple((label, str(n)) for label, n in ordered),
    )


def apparent_table(
    findings: Sequence[Finding],
    corpus: ClaimCorpus,
    names: Mapping[str, str] | None = None,
) -> Report:
    """One row per apparent finding, publication-date ascending; undated
    rows last. The knowledge source column pairs the claim key with the
    full sentence text."""
    names = names if names is not None else display_names(corpus)
    apparent = [f for f in findings if isinstance(f, ApparentFinding)]

    def date_key(f: ApparentFinding):
        c = f.claim
        return (
            c.pub_year is None,
            c.pub_year or 0,
            c.pub_month is None,
            c.pub_month or 0,
            c.sentence_id,
            f.cue,
        )

    rows: list[tuple[str, ...]] = []
    for f in sorted(apparent, key=date_key):
        sentence = corpus.sentences.get(f.claim.sentence_id)
        claim_key = sentence.claim_key if sentence else f.claim.sentence_id
        text = sentence.text if sentence else ""
        triple = "-".join(
            (
                names.get(f.unit_key.subject_cui, f.unit_key.subject_cui),
                f.unit_key.predicate.raw,
                names.get(f.unit_key.object_cui, f.unit_key.object_cui),
            )
        )
        rows.append(
            (
                format_pub_date(f.claim.pub_year, f.claim.pub_month),
                f"{claim_key} {text}".strip(),
                triple,
                f.cue,
            )
        )
    return Report(
        kind="apparent",
        header=(
            "Date of Publication",
            "Knowledge source (PMID-claims)",
            "Basic knowledge unit (S-P-O triple)",
            "Knowledge status (uncertainty)",
        ),
        rows=tuple(rows),
    )


def summary(
    objects: Mapping[str, KnowledgeObject],
    findings: Sequence[Finding],
    *,
    corpus: ClaimCorpus | None = None,
    excluded_claims: int | None = None,
) -> dict[str, int]:
    """Flat totals across the pipeline artifacts."""
    states = Counter(f.status.state.value for f in findings)
    return {
        "predications": len(corpus.predications) if corpus else 0,
        "sentences": len(corpus.sentences) if corpus else 0,
        "articles": len(corpus.articles) if corpus else 0,
        "units": len(objects),
        "claims": sum(len(o.unit.claims) for o in objects.values()),
        "hedged_claims_excluded": excluded_claims or 0,
        "contradiction_candidates": sum(
            1 for f in findings if isinstance(f, ContradictionFinding)
        ),
        "diversity_candidates": sum(1 for f in findings if isinstance(f, DiversityFinding)),
        "apparent_findings": sum(1 for f in findings if isinstance(f, ApparentFinding)),
        "pending": states.get("pending", 0),
        "accepted": states.get("accepted", 0),
        "rejected": states.get("rejected", 0),
        "reclassified": states.get("reclassified", 0),
    }


def summary_report(stats: Mapping[str, int]) -> Report:
    return Report(
        kind="summary",
        header=("Metric", "Value"),
        rows=tuple((key, str(value)) for key, value in stats.items()),
    )


def render_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(report.header)
    writer.writerows(report.rows)
    return buf.getvalue()


def render_json(report: Report) -> str:
    payload = {
        "kind": report.kind,
        "columns": list(report.header),
        "rows": [dict(zip(report.header, row)) for row in report.rows],
    }
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def render_md(report: Report) -> str:
    def escape(cell: str) -> str:
        return cell.replace("|", "\\|")

    lines = [
        "| " + " | ".join(escape(h) for h in report.header) + " |",
        "|" + "|".join(" --- " for _ in report.header) + "|",
    ]
    lines.extend("| " + " | ".join(escape(c) for c in row) + " |" for row in report.rows)
    return "\n".join(lines) + "\n"


RENDERERS = {"csv": render_csv, "json": render_json, "md": render_md}
