"""Benchmark ingest + detect on a synthetic corpus.

Prints a per-stage timing breakdown and the peak resident set, so
regressions show up as numbers rather than as a failed budget assert.

    python3 scripts/scale_smoke.py --rows 1000000 --seed 5
"""

from __future__ import annotations

import argparse
import sys
import tempfile
import time
from pathlib import Path

import psutil

from knowcert import cues, filters, ingest, store
from knowcert.detect import detect_apparent, detect_contradictions, detect_diversity
from knowcert.polarity import default_polarity_table
from knowcert.synth import SynthConfig, generate, write_corpus


def run(rows: int, seed: int, workdir: Path) -> int:
    print(f"generating {rows:,} predications (seed {seed}) ...", flush=True)
    synth = generate(SynthConfig(predications=rows, seed=seed))
    pred_path, sent_path, art_path = write_corpus(synth, str(workdir))
    del synth

    process = psutil.Process()
    stages: list[tuple[str, float]] = []

    def stage(label: str, started: float) -> None:
        stages.append((label, time.perf_counter() - started))

    total_start = time.perf_counter()

    t = time.perf_counter()
    with open(pred_path, "rb") as fh:
        predications = ingest.parse_predications(fh)
    with open(sent_path, "rb") as fh:
        sentences = ingest.parse_sentences(fh)
    with open(art_path, "rb") as fh:
        articles = ingest.parse_metadata(fh)
    corpus = ingest.link(predications, sentences, articles)
    del predications, sentences, articles
    stage("parse + link", t)

    t = time.perf_counter()
    corpus = filters.filter_corpus(
        corpus, filters.default_evidence_policy(), filters.default_concept_policy()
    )
    stage("evidence/concept filter", t)

    t = time.perf_counter()
    tags = cues.tag_corpus(corpus, cues.default_lexicon())
    stage("cue tagging", t)

    t = time.perf_counter()
    units = store.exclude_hedged(store.build_units(corpus, tags))
    stage("unit aggregation", t)

    t = time.perf_counter()
    table = default_polarity_table()
    findings = detect_contradictions(units, table)
    findings += detect_diversity(units, table)
    findings += detect_apparent(units, tags)
    stage("detection", t)

    total = time.perf_counter() - total_start
    rss = process.memory_info().rss

    width = max(len(label) for label, _ in stages)
    for label, seconds in stages:
        print(f"  {label:<{width}}  {seconds:7.2f} s")
    print(f"  {'total':<{width}}  {total:7.2f} s")
    print(
        f"kept {len(corpus.predications):,} predications, {len(units):,} units, "
        f"{len(findings):,} findings; rss {rss / 1024**3:.2f} GiB"
    )

    ok = total < 60.0 and rss < 2 * 1024**3
    print("within budget (60 s / 2 GiB)" if ok else "OVER BUDGET")
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=1_000_000)
    parser.add_argument("--seed", type=int, default=5)
    parser.add_argument(
        "--workdir", help="where to write the synthetic TSVs (default: a temp dir)"
    )
    args = parser.parse_args(argv)
    if args.workdir:
        Path(args.workdir).mkdir(parents=True, exist_ok=True)
        return run(args.rows, args.seed, Path(args.workdir))
    with tempfile.TemporaryDirectory(prefix="knowcert-smoke-") as tmp:
        return run(args.rows, args.seed, Path(tmp))


if __name__ == "__main__":
    sys.exit(main())
