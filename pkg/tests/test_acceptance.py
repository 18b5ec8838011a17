"""Acceptance gate: one test per hard requirement, at the stated tolerance.

Each test here re-derives its expectation independently (fixed fixture
values, the brute-force oracles, or wall-clock/memory budgets) rather
than trusting any intermediate artifact.
"""

from __future__ import annotations

import datetime as dt
import gc
import random
import time
from pathlib import Path

from knowcert import artifacts, cues, filters, ingest, report, store
from knowcert.curation import (
    CurationDecision,
    DecisionLog,
    Verdict,
    apply_decisions,
)
from knowcert.detect import (
    ApparentFinding,
    ContradictionFinding,
    CurationState,
    DiversityFinding,
    detect_apparent,
    detect_contradictions,
    detect_diversity,
)
from knowcert.model import Predicate
from knowcert.polarity import Polarity, contradicts, default_polarity_table
from knowcert.report import contradiction_table, display_names
from knowcert.store import KnowledgeUnit, UnitKey
from knowcert.synth import SynthConfig, generate, write_corpus

from conftest import fixture_texts, run_pipeline
from oracles import (
    ORACLE_EXCITATORY,
    ORACLE_INHIBITORY,
    finding_signatures,
    oracle_apparent,
    oracle_claims,
    oracle_hedge_hits,
    oracle_polarity,
    oracle_units,
    oracle_detect,
    read_tsv,
)

UTC = dt.timezone.utc


def test_primary_cotinine_fixture_single_contradiction() -> None:
    start = time.perf_counter()
    _, _, _, findings = run_pipeline(*fixture_texts("cotinine_lung"))
    elapsed = time.perf_counter() - start
    assert len(findings) == 1
    (finding,) = findings
    assert isinstance(finding, ContradictionFinding)
    assert (finding.pair.subject_cui, finding.pair.object_cui) == ("C0010124", "C0242379")
    assert [e.predicate.raw for e in finding.excitatory] == ["PREDISPOSES"]
    assert [e.predicate.raw for e in finding.inhibitory] == ["NEG_PREDISPOSES"]
    assert elapsed < 1.0, f"fixture pipeline took {elapsed:.3f}s"


def test_primary_selenium_fixture_single_diversity() -> None:
    start = time.perf_counter()
    _, _, _, findings = run_pipeline(*fixture_texts("selenium_lung"))
    elapsed = time.perf_counter() - start
    assert not [f for f in findings if isinstance(f, ContradictionFinding)]
    diversity = [f for f in findings if isinstance(f, DiversityFinding)]
    assert len(diversity) == 1
    (finding,) = diversity
    assert {p.raw for p in finding.label_set} == {"PREVENTS", "TREATS"}
    assert finding.group is Polarity.INHIBITORY
    assert elapsed < 1.0, f"fixture pipeline took {elapsed:.3f}s"


def test_primary_carotene_fixture_claim_counts_and_row_shape() -> None:
    corpus, _, _, findings = run_pipeline(*fixture_texts("carotene_lung"))
    contradictions = [f for f in findings if isinstance(f, ContradictionFinding)]
    assert len(contradictions) == 1
    (finding,) = contradictions
    counts = {e.predicate.raw: e.claim_count for e in finding.evidence}
    assert counts == {"NEG_PREVENTS": 3, "PREVENTS": 1, "PREDISPOSES": 3, "AUGMENTS": 2}

    table = contradiction_table(findings, display_names(corpus))
    assert len(table.header) == len(table.rows[0]) == 6
    (row,) = table.rows
    assert row[1] == "Beta Carotene"
    assert row[2] == "AUGMENTS (2) NEG_PREVENTS (3) PREDISPOSES (3) PREVENTS (1)"
    assert row[4] == "Malignant neoplasm of lung"


def test_primary_cued_sentence_fixture_apparent_finding() -> None:
    _, _, _, findings = run_pipeline(*fixture_texts("apparent_cues"))
    hits = [
        f
        for f in findings
        if isinstance(f, ApparentFinding)
        and f.unit_key.sort_key == ("C0004057", "PREVENTS", "C0007131")
    ]
    assert len(hits) == 1
    assert hits[0].cue == "contradictory"


def test_primary_polarity_suite() -> None:
    table = default_polarity_table()
    # All twenty memberships, exactly.
    assert {p.raw for p in table.excitatory} == set(ORACLE_EXCITATORY)
    assert {p.raw for p in table.inhibitory} == set(ORACLE_INHIBITORY)

    inventory = [Predicate.from_raw(r) for r in sorted(ORACLE_EXCITATORY | ORACLE_INHIBITORY)]
    rng = random.Random(99)
    randomized = []
    for _ in range(1000):
        base = "".join(rng.choice("ABCDEFGHIJKLMNOPQRSTUVWXYZ") for _ in range(rng.randint(3, 10)))
        randomized.append(Predicate(base, negated=rng.random() < 0.5))
    everything = inventory + randomized

    opposite = {
        Polarity.EXCITATORY: Polarity.INHIBITORY,
        Polarity.INHIBITORY: Polarity.EXCITATORY,
        Polarity.NEUTRAL: Polarity.NEUTRAL,
    }
    for p in everything:
        group = table.polarity(p)
        if p in inventory:
            # Flip-antisymmetry on the inventory.
            assert table.polarity(p.flip()) is opposite[group]
        assert not contradicts(p, p, table)  # irreflexivity
        if group is Polarity.NEUTRAL:
            # Neutral absorption: an unlisted predicate contradicts nothing.
            assert all(not contradicts(p, q, table) for q in inventory[:4])
    for a in everything[:40]:
        for b in everything[:40]:
            assert contradicts(a, b, table) == contradicts(b, a, table)  # symmetry
            assert contradicts(a, b, table) == (
                {oracle_polarity(a.raw), oracle_polarity(b.raw)} == {"E", "I"}
            )


def test_primary_oracle_equivalence_over_200_randomized_corpora() -> None:
    start = time.perf_counter()
    for trial in range(200):
        size = 50 + (trial * 7) % 451  # 50..500
        hedge_rate = 0.1 + (trial % 4) * 0.1  # 10%..40%
        synth = generate(
            SynthConfig(predications=size, seed=1000 + trial, hedge_rate=hedge_rate)
        )
        _, _, _, findings = run_pipeline(
            synth.predications_tsv, synth.sentences_tsv, synth.articles_tsv
        )
        units = oracle_units(
            oracle_claims(synth.predications_tsv, synth.sentences_tsv, synth.articles_tsv)
        )
        want_contra, want_div = oracle_detect(units)
        got_contra, got_div, got_apparent = finding_signatures(findings)
        assert got_contra == want_contra, f"trial {trial}: contradiction sets differ"
        assert got_div == want_div, f"trial {trial}: diversity sets differ"
        assert got_apparent == oracle_apparent(units), f"trial {trial}: apparent sets differ"

        # No hedged claim may appear in any finding.
        sentences = {
            r["SENTENCE_ID"]: r["TEXT"] for r in read_tsv(synth.sentences_tsv)
        }
        for f in findings:
            for ev in f.evidence:
                for c in ev.claims:
                    assert not c.hedged
                    assert not oracle_hedge_hits(sentences[c.sentence_id])

        # Exclusivity: no pair is both contradictory and diverse.
        contra_pairs = {(s, o) for s, o, *_ in got_contra}
        div_pairs = {(s, o) for _, s, o, _ in got_div}
        assert not contra_pairs & div_pairs, f"trial {trial}: exclusivity violated"
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"200 oracle trials took {elapsed:.1f}s"


HEDGE_PREDICATIONS = """PREDICATION_ID\tSENTENCE_ID\tPMID\tPREDICATE\tSUBJECT_CUI\tSUBJECT_NAME\tSUBJECT_SEMTYPES\tOBJECT_CUI\tOBJECT_NAME\tOBJECT_SEMTYPES
H001\tS1\t601\tTREATS\tC0004057\tAspirin\tphsu\tC0018681\tHeadache\tsosy
H002\tS2\t602\tCAUSES\tC0004057\tAspirin\tphsu\tC0018681\tHeadache\tsosy
"""

HEDGE_SENTENCE = "Aspirin {}headache in susceptible patients."

HEDGE_ARTICLES = """PMID\tPUB_DATE\tPUB_TYPES\tMESH_HEADINGS
601\t2013 Jun\tMeta-Analysis\t
602\t2014 Feb\tRandomized Controlled Trial\t
"""


def _hedge_sentences(hedged: bool) -> str:
    first = HEDGE_SENTENCE.format("may treat " if hedged else "treats ")
    second = HEDGE_SENTENCE.format("causes ")
    return (
        "SENTENCE_ID\tPMID\tLOCATION\tORDINAL\tTEXT\n"
        f"S1\t601\tab\t1\t{first}\n"
        f"S2\t602\tab\t1\t{second}\n"
    )


def test_primary_hedging_filter_excludes_and_readmits() -> None:
    treats_key = ("C0004057", "TREATS", "C0018681")

    _, _, snapshot, findings = run_pipeline(
        HEDGE_PREDICATIONS, _hedge_sentences(hedged=True), HEDGE_ARTICLES
    )
    assert treats_key not in {k.sort_key for k in snapshot.units}
    assert snapshot.excluded_claims == 1
    assert findings == []  # the lone surviving CAUSES unit cannot pair

    _, _, snapshot, findings = run_pipeline(
        HEDGE_PREDICATIONS, _hedge_sentences(hedged=False), HEDGE_ARTICLES
    )
    assert treats_key in {k.sort_key for k in snapshot.units}
    assert len(findings) == 1
    (finding,) = findings
    assert isinstance(finding, ContradictionFinding)
    involved = {e.predicate.raw for e in finding.evidence}
    assert involved == {"CAUSES", "TREATS"}


def _random_decisions(findings, rng: random.Random, count: int) -> list[CurationDecision]:
    decisions = []
    verdicts = list(Verdict)
    for i in range(count):
        target = rng.choice(findings)
        verdict = rng.choice(verdicts)
        affected: tuple[str, ...] = ()
        if verdict in (Verdict.NER_ERROR, Verdict.SRE_ERROR) and rng.random() < 0.6:
            claims = [c.predication_id for ev in target.evidence for c in ev.claims]
            affected = tuple(rng.sample(claims, k=rng.randint(1, len(claims))))
        decisions.append(
            CurationDecision(
                finding_id=target.id,
                verdict=verdict,
                curator=f"cur{rng.randint(1, 3)}",
                timestamp=dt.datetime(2024, 6, 1, 8, 0, tzinfo=UTC)
                + dt.timedelta(minutes=rng.randint(0, 500)),
                affected_claims=affected,
                category_label=rng.choice((None, "dose", "population")),
            )
        )
    return decisions


def test_primary_curation_replay_and_reclassification(tmp_path: Path) -> None:
    synth = generate(SynthConfig(predications=420, seed=77, hedge_rate=0.15))
    _, tags, snapshot, findings = run_pipeline(
        synth.predications_tsv, synth.sentences_tsv, synth.articles_tsv
    )
    table = default_polarity_table()
    rng = random.Random(4242)
    log = DecisionLog(tmp_path / "replay.jsonl")
    for d in _random_decisions(findings, rng, count=60):
        log.append(d)

    curated = apply_decisions(findings, snapshot.units, log, table)

    # Re-detection oracle: strike the claims named by effective error
    # verdicts (last write wins) and re-run the detectors from scratch.
    effective: dict[str, tuple[CurationDecision, int]] = {}
    for index, d in enumerate(log.read()):
        prior = effective.get(d.finding_id)
        if prior is None or (d.timestamp, index) >= (prior[0].timestamp, prior[1]):
            effective[d.finding_id] = (d, index)
    struck: set[str] = set()
    by_id = {f.id: f for f in findings}
    for fid, (d, _) in effective.items():
        if d.verdict in (Verdict.NER_ERROR, Verdict.SRE_ERROR) and fid in by_id:
            if d.affected_claims:
                struck.update(d.affected_claims)
            else:
                struck.update(
                    c.predication_id for ev in by_id[fid].evidence for c in ev.claims
                )
    filtered: dict[UnitKey, KnowledgeUnit] = {}
    for key, unit in snapshot.units.items():
        kept = tuple(c for c in unit.claims if c.predication_id not in struck)
        if kept:
            filtered[key] = KnowledgeUnit(key, kept)
    redetected = (
        detect_contradictions(filtered, table)
        + detect_diversity(filtered, table)
        + detect_apparent(filtered, tags)
    )
    assert finding_signatures(curated) == finding_signatures(redetected)

    # Replay never breaks at a record boundary.
    raw = (tmp_path / "replay.jsonl").read_bytes()
    offsets = [i + 1 for i, b in enumerate(raw) if b == 0x0A]
    for cut in [0, *offsets]:
        trunc = tmp_path / "trunc.jsonl"
        trunc.write_bytes(raw[:cut])
        partial_log = DecisionLog(trunc)
        assert len(partial_log.read()) == raw[:cut].count(b"\n")
        apply_decisions(findings, snapshot.units, partial_log, table)

    # One sre_error flips a thin contradiction into diversity.
    units, scenario_findings = _reclassification_scenario(table)
    contradiction = next(f for f in scenario_findings if isinstance(f, ContradictionFinding))
    decision = CurationDecision(
        finding_id=contradiction.id,
        verdict=Verdict.SRE_ERROR,
        curator="rb",
        timestamp=dt.datetime(2024, 6, 2, tzinfo=UTC),
        affected_claims=("x1",),
    )
    recurated = apply_decisions(scenario_findings, units, [decision], table)
    survivor = next(f for f in recurated if f.id == contradiction.id)
    assert isinstance(survivor, DiversityFinding)
    assert survivor.status.state is CurationState.RECLASSIFIED


def _reclassification_scenario(table):
    def claim(sid: str, pid: str):
        return store.Claim(
            predication_id=pid, sentence_id=sid, article_id="A1",
            pub_year=2016, pub_month=None, hedged=False, disagreement_cue=None,
        )

    def key(pred: str) -> UnitKey:
        return UnitKey("C1", Predicate.from_raw(pred), "C2")

    units = {
        key("CAUSES"): KnowledgeUnit(key("CAUSES"), (claim("X1", "x1"),)),
        key("TREATS"): KnowledgeUnit(key("TREATS"), (claim("X2", "t1"),)),
        key("PREVENTS"): KnowledgeUnit(key("PREVENTS"), (claim("X3", "v1"),)),
    }
    findings = detect_contradictions(units, table) + detect_diversity(units, table)
    return units, findings


def test_primary_determinism_under_row_permutation(tmp_path: Path) -> None:
    synth = generate(SynthConfig(predications=400, seed=31, hedge_rate=0.2))

    def shuffled(tsv: str, seed: int) -> str:
        header, *rows = tsv.splitlines()
        random.Random(seed).shuffle(rows)
        return "\n".join([header, *rows]) + "\n"

    def artifacts_for(p: str, s: str, a: str) -> tuple[str, dict[str, str]]:
        corpus, tags, snapshot, findings = run_pipeline(p, s, a)
        names = display_names(corpus)
        reports = {}
        for fmt in ("csv", "json", "md"):
            render = report.RENDERERS[fmt]
            reports[f"contradictions.{fmt}"] = render(
                report.contradiction_table(findings, names)
            )
            reports[f"diversity.{fmt}"] = render(report.diversity_histogram(findings))
            reports[f"apparent.{fmt}"] = render(
                report.apparent_table(findings, corpus, names)
            )
            reports[f"summary.{fmt}"] = render(
                report.summary_report(
                    report.summary(
                        snapshot.objects,
                        findings,
                        corpus=corpus,
                        excluded_claims=snapshot.excluded_claims,
                    )
                )
            )
        return artifacts.dump_findings(findings), reports

    base_findings, base_reports = artifacts_for(
        synth.predications_tsv, synth.sentences_tsv, synth.articles_tsv
    )
    for seed in (1, 2):
        perm_findings, perm_reports = artifacts_for(
            shuffled(synth.predications_tsv, seed),
            shuffled(synth.sentences_tsv, seed + 10),
            shuffled(synth.articles_tsv, seed + 20),
        )
        assert perm_findings == base_findings
        assert perm_reports == base_reports


def test_primary_scale_smoke_million_rows(tmp_path: Path) -> None:
    import psutil

    synth = generate(SynthConfig(predications=1_000_000, seed=5))
    paths = write_corpus(synth, str(tmp_path))
    del synth
    gc.collect()

    process = psutil.Process()
    start = time.perf_counter()
    with open(paths[0], "rb") as fh:
        predications = ingest.parse_predications(fh)
    with open(paths[1], "rb") as fh:
        sentences = ingest.parse_sentences(fh)
    with open(paths[2], "rb") as fh:
        articles = ingest.parse_metadata(fh)
    corpus = ingest.link(predications, sentences, articles)
    del predications, sentences, articles
    corpus = filters.filter_corpus(
        corpus, filters.default_evidence_policy(), filters.default_concept_policy()
    )
    lexicon = cues.default_lexicon()
    tags = cues.tag_corpus(corpus, lexicon)
    units = store.build_units(corpus, tags)
    units = store.exclude_hedged(units, store.HedgeMode.DROP_CLAIMS)
    table = default_polarity_table()
    findings = detect_contradictions(units, table) + detect_diversity(units, table)
    findings += detect_apparent(units, tags)
    elapsed = time.perf_counter() - start
    rss = process.memory_info().rss

    assert len(corpus.predications) > 500_000
    assert findings, "a million-row corpus should surface findings"
    assert elapsed < 60.0, f"ingest + detect took {elapsed:.1f}s"
    assert rss < 2 * 1024**3, f"resident set {rss / 1024**3:.2f} GiB"

    del corpus, tags, units, findings
    gc.collect()
