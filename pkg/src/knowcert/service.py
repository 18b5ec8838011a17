"""HTTP JSON API for the curation workflow.

The service holds immutable pipeline artifacts (corpus, units, base
findings) plus the append-only decision log. Every read derives the
curated view from (base findings, log), so a decision recorded by one
request is visible to the next without any shared mutable state beyond
the log itself. Decision submissions carry the finding's content hash;
a mismatch means the curator judged stale evidence and is a 409.
"""

from __future__ import annotations

import datetime as dt
from collections import Counter
from dataclasses import dataclass, field
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .artifacts import claim_to_json
from .cues import CueLexicon, CueTags, default_lexicon, tag_corpus
from .curation import (
    CurationDecision,
    DecisionError,
    DecisionLog,
    Verdict,
    apply_decisions,
    decision_to_json,
)
from .detect import (
    ApparentFinding,
    DiversityFinding,
    Finding,
    content_hash,
    mark_statuses,
)
from .ingest import format_pub_date
from .model import ClaimCorpus
from .polarity import PolarityTable, default_polarity_table
from .report import display_names
from .store import Claim, KnowledgeObject, UnitsSnapshot, timeline


@dataclass
class ServiceState:
    corpus: ClaimCorpus
    units: UnitsSnapshot
    findings: list[Finding]
    log: DecisionLog
    table: PolarityTable = field(default_factory=default_polarity_table)
    lexicon: CueLexicon = field(default_factory=default_lexicon)
    tags: dict[str, CueTags] = field(default_factory=dict)
    names: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.tags:
            self.tags = tag_corpus(self.corpus, self.lexicon)
        if not self.names:
            self.names = display_names(self.corpus)

    def curated(self) -> list[Finding]:
        return apply_decisions(self.findings, self.units.units, self.log, self.table)


def _pair_of(f: Finding) -> tuple[str, str]:
    if isinstance(f, ApparentFinding):
        return (f.unit_key.subject_cui, f.unit_key.object_cui)
    return (f.pair.subject_cui, f.pair.object_cui)


def _summary(f: Finding, names: dict[str, str]) -> dict[str, Any]:
    subject_cui, object_cui = _pair_of(f)
    body: dict[str, Any] = {
        "id": f.id,
        "type": f.type.value,
        "state": f.status.state.value,
        "subject_cui": subject_cui,
        "subject_name": names.get(subject_cui, subject_cui),
        "object_cui": object_cui,
        "object_name": names.get(object_cui, object_cui),
        "predicates": [ev.predicate.raw for ev in f.evidence],
        "claim_count": sum(ev.claim_count for ev in f.evidence),
    }
    if isinstance(f, ApparentFinding):
        body["cue"] = f.cue
    if isinstance(f, DiversityFinding):
        body["group"] = f.group.value
    return body


def _claim_detail(c: Claim, state: ServiceState) -> dict[str, Any]:
    body = claim_to_json(c)
    body["pub_date"] = format_pub_date(c.pub_year, c.pub_month)
    sentence = state.corpus.sentences.get(c.sentence_id)
    tag = state.tags.get(c.sentence_id)
    body["sentence_text"] = sentence.text if sentence else None
    body["claim_key"] = sentence.claim_key if sentence else c.sentence_id
    body["hedge_hits"] = [list(hit) for hit in tag.hedge_hits] if tag else []
    body["disagreement_hits"] = [list(hit) for hit in tag.disagreement_hits] if tag else []
    return body


def _detail(f: Finding, state: ServiceState, decisions: list[CurationDecision]) -> dict[str, Any]:
    body = _summary(f, state.names)
    body["content_hash"] = content_hash(f)
    body["category_label"] = f.status.category_label
    body["applied_decisions"] = list(f.status.applied_decisions)
    body["evidence"] = [
        {
            "predicate": ev.predicate.raw,
            "claims": [_claim_detail(c, state) for c in ev.claims],
        }
        for ev in f.evidence
    ]
    body["decision_history"] = [
        decision_to_json(d) for d in decisions if d.finding_id == f.id
    ]
    return body


def _object_detail(obj: KnowledgeObject, state: ServiceState) -> dict[str, Any]:
    key = obj.unit.key
    return {
        "id": obj.id,
        "subject_cui": key.subject_cui,
        "subject_name": state.names.get(key.subject_cui, key.subject_cui),
        "predicate": key.predicate.raw,
        "object_cui": key.object_cui,
        "object_name": state.names.get(key.object_cui, key.object_cui),
        "statuses": sorted(s.value for s in obj.statuses),
        "uncertainty_score": {
            "numerator": obj.uncertainty_score.numerator,
            "denominator": obj.uncertainty_score.denominator,
            "value": float(obj.uncertainty_score),
        },
        "claims": [_claim_detail(c, state) for c in obj.unit.claims],
        "timeline": [
            {"year": year, "claims": total, "uncertain": uncertain}
            for year, total, uncertain in timeline(obj.unit)
        ],
    }


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


_STATE_ORDER = {"pending": 0, "accepted": 1, "reclassified": 2, "rejected": 3}


def create_app(state: ServiceState, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="knowcert curation service", docs_url=None, redoc_url=None)

    @app.get("/api/v1/findings")
    def list_findings(request: Request) -> Any:
        params = request.query_params
        try:
            limit = int(params.get("limit", "200"))
            offset = int(params.get("offset", "0"))
        except ValueError:
            return _error(400, "limit and offset must be integers")
        if limit < 1 or offset < 0:
            return _error(400, "limit must be >= 1 and offset >= 0")
        type_filter = params.get("type")
        state_filter = params.get("state")
        selected = state.curated()
        if type_filter is not None:
            selected = [f for f in selected if f.type.value == type_filter]
        if state_filter is not None:
            selected = [f for f in selected if f.status.state.value == state_filter]
        selected.sort(key=lambda f: (_STATE_ORDER.get(f.status.state.value, 9), f.id))
        window = selected[offset : offset + limit]
        return {
            "total": len(selected),
            "offset": offset,
            "findings": [_summary(f, state.names) for f in window],
        }

    @app.get("/api/v1/findings/{finding_id}")
    def get_finding(finding_id: str) -> Any:
        for f in state.curated():
            if f.id == finding_id:
                return _detail(f, state, state.log.read())
        return _error(404, f"no finding {finding_id!r}")

    @app.post("/api/v1/findings/{finding_id}/decision")
    async def post_decision(finding_id: str, request: Request) -> Any:
        curator = request.headers.get("X-Curator", "").strip()
        if not curator:
            return _error(400, "X-Curator header required")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body must be JSON")
        if not isinstance(body, dict):
            return _error(400, "request body must be a JSON object")
        current = {f.id: f for f in state.curated()}
        finding = current.get(finding_id)
        if finding is None:
            return _error(404, f"no finding {finding_id!r}")
        try:
            verdict = Verdict(body.get("verdict"))
        except ValueError:
            return _error(400, f"verdict must be one of {[v.value for v in Verdict]}")
        affected = body.get("affected_claims") or []
        if not isinstance(affected, list) or not all(isinstance(a, str) for a in affected):
            return _error(400, "affected_claims must be a list of claim ids")
        known_claims = {
            c.predication_id for ev in finding.evidence for c in ev.claims
        }
        unknown = [a for a in affected if a not in known_claims]
        if unknown:
            return _error(400, f"claims not in this finding: {unknown}")
        sent_hash = body.get("content_hash")
        if sent_hash != content_hash(finding):
            return _error(
                409,
                "finding has changed since it was loaded; refresh and re-judge",
            )
        try:
            decision = CurationDecision(
                finding_id=finding_id,
                verdict=verdict,
                curator=curator,
                timestamp=dt.datetime.now(dt.timezone.utc),
                affected_claims=tuple(affected),
                category_label=body.get("category_label") or None,
                note=body.get("note") or None,
            )
        except DecisionError as exc:
            return _error(400, str(exc))
        stored = state.log.append(decision)
        refreshed = {f.id: f for f in state.curated()}
        updated = refreshed.get(finding_id)
        return {
            "decision": decision_to_json(stored),
            "finding": _detail(updated, state, state.log.read()) if updated else None,
        }

    @app.get("/api/v1/objects/{object_id}")
    def get_object(object_id: str) -> Any:
        marked = mark_statuses(state.units.objects, state.curated())
        obj = marked.get(object_id)
        if obj is None:
            return _error(404, f"no knowledge object {object_id!r}")
        return _object_detail(obj, state)

    @app.get("/api/v1/stats")
    def stats() -> Any:
        curated = state.curated()
        by_type = Counter(f.type.value for f in curated)
        by_state = Counter(f.status.state.value for f in curated)
        marked = mark_statuses(state.units.objects, curated)
        by_status = Counter(s.value for o in marked.values() for s in o.statuses)
        return {
            "findings": {
                "total": len(curated),
                "by_type": dict(sorted(by_type.items())),
                "by_state": dict(sorted(by_state.items())),
            },
            "pending": by_state.get("pending", 0),
            "objects": {
                "total": len(marked),
                "by_status": dict(sorted(by_status.items())),
            },
            "decisions": len(state.log.read()),
        }

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
