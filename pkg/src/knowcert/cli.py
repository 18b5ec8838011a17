"""Command-line pipeline: ingest -> filter -> tag -> units -> detect ->
serve/apply -> report.

Each stage reads and writes explicit artifact files so runs are
resumable and diffable; nothing is cached implicitly.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import artifacts, cues, filters, ingest, polarity, report, store
from .curation import DecisionLog, apply_decisions
from .detect import detect_apparent, detect_contradictions, detect_diversity
from .ingest import RowError
from .store import HedgeMode, ScoreMode


def _warn_rows(errors: list[RowError], label: str) -> None:
    for err in errors[:20]:
        print(f"warning: {label}: {err}", file=sys.stderr)
    if len(errors) > 20:
        print(f"warning: {label}: {len(errors) - 20} further row errors", file=sys.stderr)


def cmd_ingest(args: argparse.Namespace) -> int:
    errors: list[RowError] = []
    with open(args.predications, "rb") as fh:
        predications = ingest.parse_predications(fh, strict=args.strict, errors=errors)
    _warn_rows(errors, args.predications)
    errors.clear()
    with open(args.sentences, "rb") as fh:
        sentences = ingest.parse_sentences(fh, strict=args.strict, errors=errors)
    _warn_rows(errors, args.sentences)
    errors.clear()
    with open(args.articles, "rb") as fh:
        articles = ingest.parse_metadata(fh, strict=args.strict, errors=errors)
    _warn_rows(errors, args.articles)
    corpus = ingest.link(predications, sentences, articles, strict=args.strict)
    artifacts.save_corpus(corpus, args.out)
    print(
        f"{len(corpus.predications)} predications, {len(corpus.sentences)} sentences, "
        f"{len(corpus.articles)} articles, {len(corpus.quarantined)} quarantined -> {args.out}"
    )
    return 0


def cmd_filter(args: argparse.Namespace) -> int:
    corpus = artifacts.load_corpus(args.corpus)
    ep = (
        filters.load_evidence_policy(args.evidence_policy)
        if args.evidence_policy
        else filters.default_evidence_policy()
    )
    cp = (
        filters.load_concept_policy(args.concept_policy)
        if args.concept_policy
        else filters.default_concept_policy()
    )
    if args.excluded_cuis:
        cp = filters.ConceptPolicy(
            subject_semtypes=cp.subject_semtypes,
            object_semtypes=cp.object_semtypes,
            excluded_subject_cuis=cp.excluded_subject_cuis
            | filters.load_excluded_cuis(args.excluded_cuis),
        )
    filtered = filters.filter_corpus(corpus, ep, cp)
    artifacts.save_corpus(filtered, args.out)
    print(
        f"{len(filtered.predications)}/{len(corpus.predications)} predications kept -> {args.out}"
    )
    return 0


def cmd_tag(args: argparse.Namespace) -> int:
    corpus = artifacts.load_corpus(args.corpus)
    lexicon = cues.load_lexicon(args.lexicon) if args.lexicon else cues.default_lexicon()
    tags = cues.tag_corpus(corpus, lexicon)
    artifacts.save_tags(artifacts.TagsSnapshot(lexicon=lexicon, tags=tags), args.out)
    hedged = sum(1 for t in tags.values() if t.hedged)
    cued = sum(1 for t in tags.values() if t.disagreement_hits)
    print(
        f"{len(tags)} sentences tagged: {hedged} hedged, "
        f"{cued} with disagreement cues -> {args.out}"
    )
    return 0


def cmd_units(args: argparse.Namespace) -> int:
    corpus = artifacts.load_corpus(args.corpus)
    tags = artifacts.load_tags(args.tags)
    snapshot = store.build_snapshot(
        corpus,
        tags.tags,
        args.corpus_version,
        hedge_mode=HedgeMode(args.hedge_mode) if args.exclude_hedged else None,
        score_mode=ScoreMode(args.score_cues),
    )
    artifacts.save_units(snapshot, args.out)
    print(
        f"{len(snapshot.units)} units, {snapshot.excluded_claims} hedged claims "
        f"excluded -> {args.out}"
    )
    return 0


def cmd_detect(args: argparse.Namespace) -> int:
    snapshot = artifacts.load_units(args.units)
    table = (
        polarity.load_polarity_table(args.polarity)
        if args.polarity
        else polarity.default_polarity_table()
    )
    tags = artifacts.load_tags(args.tags)
    units = snapshot.units
    pair_units = units
    if args.drop_cue_claims:
        # Keep cue-bearing sentences for apparent detection but hide them
        # from the cross-sentence polarity rules.
        pair_units = {}
        for key, unit in units.items():
            kept = tuple(c for c in unit.claims if c.disagreement_cue is None)
            if kept:
                pair_units[key] = store.KnowledgeUnit(key, kept)
    findings: list = []
    findings.extend(detect_contradictions(pair_units, table, min_claims=args.min_claims))
    findings.extend(detect_diversity(pair_units, table, min_claims=args.min_claims))
    findings.extend(detect_apparent(units, tags.tags))
    artifacts.write_findings(findings, args.out)
    kinds = {}
    for f in findings:
        kinds[f.type.value] = kinds.get(f.type.value, 0) + 1
    print(
        " ".join(f"{kinds.get(k, 0)} {k}" for k in ("contradiction", "diversity", "apparent"))
        + f" -> {args.out}"
    )
    return 0


def cmd_show(args: argparse.Namespace) -> int:
    snapshot = artifacts.load_units(args.units)
    obj = snapshot.objects.get(args.object_id)
    if obj is None:
        matches = [o for oid, o in snapshot.objects.items() if oid.startswith(args.object_id)]
        if len(matches) == 1:
            obj = matches[0]
        elif matches:
            print(f"ambiguous id prefix {args.object_id!r}", file=sys.stderr)
            return 1
    if obj is None:
        print(f"no knowledge object {args.object_id!r}", file=sys.stderr)
        return 1
    key = obj.unit.key
    payload = {
        "id": obj.id,
        "subject_cui": key.subject_cui,
        "predicate": key.predicate.raw,
        "object_cui": key.object_cui,
        "statuses": sorted(s.value for s in obj.statuses),
        "uncertainty_score": {
            "numerator": obj.uncertainty_score.numerator,
            "denominator": obj.uncertainty_score.denominator,
        },
        "claims": [artifacts.claim_to_json(c) for c in obj.unit.claims],
        "timeline": [
            {"year": y, "claims": n, "uncertain": u} for y, n, u in store.timeline(obj.unit)
        ],
    }
    print(json.dumps(payload, ensure_ascii=False, indent=2))
    return 0


def cmd_apply(args: argparse.Namespace) -> int:
    findings = artifacts.read_findings(args.findings)
    snapshot = artifacts.load_units(args.units)
    table = (
        polarity.load_polarity_table(args.polarity)
        if args.polarity
        else polarity.default_polarity_table()
    )
    log = DecisionLog(args.log)
    curated = apply_decisions(findings, snapshot.units, log, table, min_claims=args.min_claims)
    artifacts.write_findings(curated, args.out)
    print(f"{len(curated)}/{len(findings)} findings after curation -> {args.out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import ServiceState, create_app

    corpus = artifacts.load_corpus(args.corpus)
    snapshot = artifacts.load_units(args.units)
    findings = artifacts.read_findings(args.findings)
    table = (
        polarity.load_polarity_table(args.polarity)
        if args.polarity
        else polarity.default_polarity_table()
    )
    lexicon = cues.load_lexicon(args.lexicon) if args.lexicon else cues.default_lexicon()
    state = ServiceState(
        corpus=corpus,
        units=snapshot,
        findings=findings,
        log=DecisionLog(args.log),
        table=table,
        lexicon=lexicon,
    )
    app = create_app(state, static_dir=args.static)
    host, _, port = args.bind.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    findings = artifacts.read_findings(args.findings)
    corpus = artifacts.load_corpus(args.corpus) if args.corpus else None
    names = report.display_names(corpus) if corpus else {}
    if args.kind == "contradictions":
        rep = report.contradiction_table(findings, names)
    elif args.kind == "diversity":
        rep = report.diversity_histogram(findings)
    elif args.kind == "apparent":
        if corpus is None:
            print("apparent report needs --corpus for sentence texts", file=sys.stderr)
            return 1
        rep = report.apparent_table(findings, corpus, names)
    else:
        snapshot = artifacts.load_units(args.units) if args.units else None
        stats = report.summary(
            snapshot.objects if snapshot else {},
            findings,
            corpus=corpus,
            excluded_claims=snapshot.excluded_claims if snapshot else 0,
        )
        rep = report.summary_report(stats)
    rendered = report.RENDERERS[args.format](rep)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(rendered)
        print(f"{len(rep.rows)} rows -> {args.out}")
    else:
        sys.stdout.write(rendered)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knowcert",
        description="Turn semantic predications into knowledge objects and "
        "surface contradictory or diverse claims.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse and link the three TSV inputs")
    p.add_argument("--predications", required=True)
    p.add_argument("--sentences", required=True)
    p.add_argument("--articles", required=True)
    p.add_argument("--strict", action="store_true", help="make row and link errors fatal")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("filter", help="keep high-evidence drug-disease claims")
    p.add_argument("--corpus", required=True)
    p.add_argument("--evidence-policy", help="TOML policy; default is the shipped list")
    p.add_argument("--concept-policy", help="TOML policy; default is the shipped list")
    p.add_argument("--excluded-cuis", help="extra excluded subject CUIs, one per line")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("tag", help="tag sentences with uncertainty cues")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon", help="cue lexicon TSV; default is the shipped one")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("units", help="aggregate claims into knowledge units/objects")
    p.add_argument("--corpus", required=True)
    p.add_argument("--tags", required=True)
    p.add_argument("--exclude-hedged", action="store_true")
    p.add_argument(
        "--hedge-mode",
        choices=[m.value for m in HedgeMode],
        default=HedgeMode.DROP_CLAIMS.value,
    )
    p.add_argument(
        "--score-cues",
        choices=[m.value for m in ScoreMode],
        default=ScoreMode.ALL.value,
        help="which cues count toward the uncertainty score",
    )
    p.add_argument("--corpus-version", default="dev")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_units)

    p = sub.add_parser("detect", help="run contradiction/diversity/apparent detection")
    p.add_argument("--units", required=True)
    p.add_argument("--tags", required=True)
    p.add_argument("--polarity", help="polarity TSV; default is the shipped table")
    p.add_argument("--min-claims", type=int, default=1)
    p.add_argument(
        "--drop-cue-claims",
        action="store_true",
        help="hide disagreement-cue claims from the pair-level detectors",
    )
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("show", help="print one knowledge object as JSON")
    p.add_argument("object_id")
    p.add_argument("--units", required=True)
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("apply", help="apply curation decisions to findings")
    p.add_argument("--log", required=True)
    p.add_argument("--findings", required=True)
    p.add_argument("--units", required=True)
    p.add_argument("--polarity")
    p.add_argument("--min-claims", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("serve", help="run the curation HTTP service")
    p.add_argument("--findings", required=True)
    p.add_argument("--units", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--log", required=True)
    p.add_argument("--bind", default="127.0.0.1:8750")
    p.add_argument("--polarity")
    p.add_argument("--lexicon")
    p.add_argument("--static", help="directory of built UI assets to serve at /")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("report", help="export findings as report tables")
    p.add_argument("--findings", required=True)
    p.add_argument(
        "--kind",
        choices=["contradictions", "diversity", "apparent", "summary"],
        required=True,
    )
    p.add_argument("--format", choices=["csv", "json", "md"], default="csv")
    p.add_argument("--corpus", help="corpus for display names and sentence texts")
    p.add_argument("--units", help="units snapshot for summary totals")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        ingest.FormatError,
        RowError,
        artifacts.ArtifactError,
        polarity.PolarityTableError,
        filters.PolicyError,
        cues.LexiconError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
