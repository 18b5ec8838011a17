from __future__ import annotations

import csv
import io
import json

import pytest

from knowcert import report
from knowcert.curation import CurationDecision, Verdict, apply_decisions
from knowcert.detect import ContradictionFinding, DiversityFinding
from knowcert.model import ClaimCorpus, Concept, Predicate, PredicationRecord
from knowcert.polarity import default_polarity_table
from knowcert.report import (
    Report,
    apparent_table,
    contradiction_table,
    display_names,
    diversity_histogram,
    render_csv,
    render_json,
    render_md,
    summary,
)

from conftest import fixture_texts, run_pipeline


def _run(stem: str):
    return run_pipeline(*fixture_texts(stem))


def test_contradiction_table_renders_claim_counts() -> None:
    corpus, _, _, findings = _run("carotene_lung")
    table = contradiction_table(findings, display_names(corpus))
    assert table.header == (
        "Subject CUI",
        "Subject",
        "Predicate (# claims)",
        "Object CUI",
        "Object",
        "Category",
    )
    (row,) = table.rows
    assert row[0] == "C0053396"
    assert row[1] == "Beta Carotene"
    assert row[2] == "AUGMENTS (2) NEG_PREVENTS (3) PREDISPOSES (3) PREVENTS (1)"
    assert row[4] == "Malignant neoplasm of lung"
    assert row[5] == "/"


def test_contradiction_table_carries_curation_label() -> None:
    corpus, _, snapshot, findings = _run("carotene_lung")
    contradiction = next(f for f in findings if isinstance(f, ContradictionFinding))
    import datetime as dt

    decision = CurationDecision(
        finding_id=contradiction.id,
        verdict=Verdict.VALID,
        curator="rb",
        timestamp=dt.datetime(2024, 1, 1, tzinfo=dt.timezone.utc),
        category_label="Dosage aspects",
    )
    curated = apply_decisions(findings, snapshot.units, [decision], default_polarity_table())
    table = contradiction_table(curated, display_names(corpus))
    assert table.rows[0][5] == "Dosage aspects"


def test_diversity_histogram_counts_label_sets() -> None:
    _, _, _, findings = _run("selenium_lung")
    table = diversity_histogram(findings)
    assert table.header == ("Diversity", "#")
    assert table.rows == (("PREVENTS, TREATS", "1"),)


def test_apparent_table_rows_sorted_by_date() -> None:
    corpus, _, _, findings = _run("apparent_cues")
    table = apparent_table(findings, corpus)
    assert table.header == (
        "Date of Publication",
        "Knowledge source (PMID-claims)",
        "Basic knowledge unit (S-P-O triple)",
        "Knowledge status (uncertainty)",
    )
    assert [row[0] for row in table.rows] == ["2008 Jan", "2011 Nov"]
    first, second = table.rows
    assert first[1].startswith("18187393.ab.1 BACKGROUND: Prior studies")
    assert first[2] == "Aspirin-PREVENTS-Non-Small Cell Lung Carcinoma"
    assert first[3] == "contradictory"
    assert second[2] == "Selenium-PREVENTS-Malignant neoplasm of lung"
    assert second[3] == "conflicting"


def test_summary_totals() -> None:
    corpus, _, snapshot, findings = _run("carotene_lung")
    stats = summary(
        snapshot.objects, findings, corpus=corpus, excluded_claims=snapshot.excluded_claims
    )
    assert stats["predications"] == 9
    assert stats["units"] == 4
    assert stats["claims"] == 9
    assert stats["contradiction_candidates"] == 1
    assert stats["diversity_candidates"] == 0
    assert stats["apparent_findings"] == 0
    assert stats["pending"] == 1


def test_display_names_majority_then_alphabetical() -> None:
    def pred(pid: str, name: str) -> PredicationRecord:
        return PredicationRecord(
            predication_id=pid,
            sentence_id="S" + pid,
            article_id="A1",
            subject=Concept("C1", name, frozenset({"phsu"})),
            predicate=Predicate("TREATS"),
            object=Concept("C2", "disease", frozenset({"dsyn"})),
        )

    corpus = ClaimCorpus(
        predications=(pred("1", "aspirin"), pred("2", "Aspirin"), pred("3", "Aspirin")),
        sentences={},
        articles={},
    )
    assert display_names(corpus)["C1"] == "Aspirin"  # majority
    tied = ClaimCorpus(
        predications=(pred("1", "zeta"), pred("2", "alpha")),
        sentences={},
        articles={},
    )
    assert display_names(tied)["C1"] == "alpha"  # tie broken alphabetically


def test_renderers_carry_identical_content() -> None:
    corpus, _, _, findings = _run("carotene_lung")
    table = contradiction_table(findings, display_names(corpus))

    parsed_csv = list(csv.reader(io.StringIO(render_csv(table))))
    assert tuple(parsed_csv[0]) == table.header
    assert [tuple(r) for r in parsed_csv[1:]] == list(table.rows)

    parsed_json = json.loads(render_json(table))
    assert parsed_json["columns"] == list(table.header)
    assert [tuple(r[h] for h in table.header) for r in parsed_json["rows"]] == list(table.rows)

    md = render_md(table)
    lines = md.splitlines()
    assert lines[0].count("|") == len(table.header) + 1
    assert "AUGMENTS (2)" in md


def test_md_escapes_pipes() -> None:
    table = Report(kind="x", header=("A",), rows=(("a|b",),))
    assert "a\\|b" in render_md(table)


def test_report_width_validated() -> None:
    with pytest.raises(ValueError, match="width"):
        Report(kind="x", header=("A", "B"), rows=(("only-one",),))


def test_renderers_are_deterministic() -> None:
    corpus, _, _, findings = _run("carotene_lung")
    names = display_names(corpus)
    table_a = contradiction_table(findings, names)
    table_b = contradiction_table(list(findings), dict(names))
    assert render_csv(table_a) == render_csv(table_b)
    assert render_json(table_a) == render_json(table_b)
    assert render_md(table_a) == render_md(table_b)
