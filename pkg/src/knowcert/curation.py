"""Human curation decisions over findings: append-only log and replay.

The log is event-sourced: one JSON record per line, fsynced on append,
never mutated. Curation state is always a pure function of (findings,
log): later decisions on the same finding supersede earlier ones, ordered
by timestamp with log order breaking ties. A log truncated at any record
boundary replays to a valid earlier state; a torn trailing record is
skipped with a warning.
"""

from __future__ import annotations

import datetime as dt
import enum
import hashlib
import json
import logging
import os
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .detect import (
    ApparentFinding,
    ContradictionFinding,
    CurationState,
    CurationStatus,
    DiversityFinding,
    Finding,
    evaluate_pair,
)
from .polarity import PolarityTable
from .store import KnowledgeUnit, UnitKey

log = logging.getLogger(__name__)

DECISION_SCHEMA = 1


class Verdict(enum.Enum):
    VALID = "valid"
    NER_ERROR = "ner_error"
    SRE_ERROR = "sre_error"
    OUT_OF_SCOPE = "out_of_scope"


class DecisionError(ValueError):
    """Malformed decision or unknown finding id."""


class LogCorruptionError(ValueError):
    """Malformed record in the interior of the decision log."""


@dataclass(frozen=True)
class CurationDecision:
    finding_id: str
    verdict: Verdict
    curator: str
    timestamp: dt.datetime
    affected_claims: tuple[str, ...] = ()  # predication ids; empty = whole finding
    category_label: str | None = None
    note: str | None = None
    decision_id: str = ""  # assigned by the log on append

    def __post_init__(self) -> None:
        if not self.finding_id:
            raise DecisionError("decision must name a finding")
        if not self.curator.strip():
            raise DecisionError("decision must name a curator")
        if self.timestamp.tzinfo is None:
            raise DecisionError("decision timestamp must be timezone-aware")


def decision_to_json(d: CurationDecision) -> dict:
    return {
        "schema": DECISION_SCHEMA,
        "decision_id": d.decision_id,
        "finding_id": d.finding_id,
        "verdict": d.verdict.value,
        "affected_claims": list(d.affected_claims),
        "category_label": d.category_label,
        "curator": d.curator,
        "timestamp": d.timestamp.isoformat(),
        "note": d.note,
    }


def decision_from_json(data: Mapping) -> CurationDecision:
    if data.get("schema") != DECISION_SCHEMA:
        raise DecisionError(f"unsupported decision schema {data.get('schema')!r}")
    return CurationDecision(
        finding_id=data["finding_id"],
        verdict=Verdict(data["verdict"]),
        curator=data["curator"],
        timestamp=dt.datetime.fromisoformat(data["timestamp"]),
        affected_claims=tuple(data["affected_claims"]),
        category_label=data["category_label"],
        note=data["note"],
        decision_id=data["decision_id"],
    )


class DecisionLog:
    """Append-only newline-delimited decision store on disk.

    Appends are serialized through one writer (this object); reads open
    the file fresh, so they see every completed append.
    """

    def __init__(self, path: str | os.PathLike[str]):
        self.path = os.fspath(path)
        self._seq: int | None = None

    def read(self) -> list[CurationDecision]:
        """Replay the log. A torn trailing record (no closing newline and
        unparseable) is skipped; interior corruption is fatal."""
        try:
            with open(self.path, "rb") as fh:
                raw = fh.read()
        except FileNotFoundError:
            return []
        decisions: list[CurationDecision] = []
        lines = raw.split(b"\n")
        trailing = lines.pop() if lines and lines[-1:] != [b""] else b""
        if lines and lines[-1] == b"":
            lines.pop()
        for lineno, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                decisions.append(decision_from_json(json.loads(line.decode("utf-8"))))
            except (ValueError, KeyError) as exc:
                raise LogCorruptionError(f"{self.path} line {lineno}: {exc}") from exc
        if trailing.strip():
            try:
                decisions.append(decision_from_json(json.loads(trailing.decode("utf-8"))))
            except (ValueError, KeyError):
                log.warning(
                    "%s: skipping torn trailing record (%d bytes)",
                    self.path,
                    len(trailing),
                )
        return decisions

    def append(self, decision: CurationDecision) -> CurationDecision:
        """Assign a decision id, persist with fsync, and return the stored
        decision. Bytes already in the file are never touched."""
        if self._seq is None:
            self._seq = len(self.read())
        self._seq += 1
        stamped = decision
        if not decision.decision_id:
            tag = hashlib.sha256(
                "\x1f".join(
                    (
                        decision.finding_id,
                        decision.verdict.value,
                        decision.curator,
                        decision.timestamp.isoformat(),
                        str(self._seq),
                    )
                ).encode("utf-8")
            ).hexdigest()[:8]
            stamped = replace(decision, decision_id=f"d{self._seq:05d}.{tag}")
        line = json.dumps(
            decision_to_json(stamped), ensure_ascii=False, separators=(",", ":")
        )
        with open(self.path, "a", encoding="utf-8", newline="\n") as fh:
            fh.write(line + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        return stamped


def record_decision(
    logfile: DecisionLog,
    decision: CurationDecision,
    known_finding_ids: set[str] | None = None,
) -> CurationDecision:
    """Validate and append one decision. When the caller knows the live
    finding ids, an unknown target is rejected before anything is written."""
    if known_finding_ids is not None and decision.finding_id not in known_finding_ids:
        raise DecisionError(f"unknown finding id {decision.finding_id!r}")
    return logfile.append(decision)


def effective_decisions(
    decisions: Sequence[CurationDecision],
) -> dict[str, CurationDecision]:
    """Resolve last-write-wins per finding: latest timestamp, then latest
    log position on timestamp ties."""
    ranked: dict[str, tuple[tuple[dt.datetime, int], CurationDecision]] = {}
    for index, d in enumerate(decisions):
        rank = (d.timestamp, index)
        prior = ranked.get(d.finding_id)
        if prior is None or rank >= prior[0]:
            ranked[d.finding_id] = (rank, d)
    return {fid: d for fid, (_, d) in ranked.items()}


def decision_history(
    decisions: Sequence[CurationDecision], finding_id: str
) -> list[CurationDecision]:
    return [d for d in decisions if d.finding_id == finding_id]


def _strip_claims(
    units: Mapping[UnitKey, KnowledgeUnit], invalidated: set[str]
) -> dict[UnitKey, KnowledgeUnit]:
    out: dict[UnitKey, KnowledgeUnit] = {}
    for key, unit in units.items():
        kept = tuple(c for c in unit.claims if c.predication_id not in invalidated)
        if kept:
            out[key] = unit if len(kept) == len(unit.claims) else KnowledgeUnit(key, kept)
    return out


def invalidated_claims(
    findings: Sequence[Finding],
    effective: Mapping[str, CurationDecision],
) -> set[str]:
    """Predication ids struck out by error verdicts. An error decision
    with an explicit claim list invalidates exactly those claims; with an
    empty list it invalidates every claim in the finding's evidence."""
    struck: set[str] = set()
    by_id = {f.id: f for f in findings}
    for fid, d in effective.items():
        if d.verdict not in (Verdict.NER_ERROR, Verdict.SRE_ERROR):
            continue
        finding = by_id.get(fid)
        if finding is None:
            continue  # decision predates this finding set; ignore
        if d.affected_claims:
            struck.update(d.affected_claims)
        else:
            for ev in finding.evidence:
                struck.update(c.predication_id for c in ev.claims)
    return struck


def apply_decisions(
    findings: Sequence[Finding],
    units: Mapping[UnitKey, KnowledgeUnit],
    logfile: DecisionLog | Sequence[CurationDecision],
    table: PolarityTable,
    *,
    min_claims: int = 1,
) -> list[Finding]:
    """Produce the curated finding list implied by the decision log.

    Error verdicts (ner_error, sre_error) strike claims from the unit map
    as a whole: a claim judged to be a bad extraction is bad evidence in
    every finding it supports, so the curated output equals re-running
    the detectors on the claim-filtered units. Each surviving pair-level
    finding is re-evaluated on its pair's remaining evidence; a
    contradiction collapsing to a single polarity group with two or more
    predicates becomes a diversity finding with state reclassified, and
    anything weaker disappears. valid accepts; out_of_scope rejects but
    keeps the finding reportable. Decisions naming unknown findings are
    ignored, so applying one log to the same findings is idempotent.
    """
    decisions = logfile.read() if isinstance(logfile, DecisionLog) else list(logfile)
    effective = effective_decisions(decisions)
    history: dict[str, list[str]] = {}
    for d in decisions:
        history.setdefault(d.finding_id, []).append(d.decision_id)

    struck = invalidated_claims(findings, effective)
    filtered = _strip_claims(units, struck) if struck else dict(units)
    by_pair: dict[tuple[str, str], list[KnowledgeUnit]] = {}
    if struck:
        for key, unit in filtered.items():
            by_pair.setdefault((key.subject_cui, key.object_cui), []).append(unit)

    def status_for(finding: Finding, state: CurationState) -> CurationStatus:
        d = effective.get(finding.id)
        return CurationStatus(
            state=state,
            applied_decisions=tuple(history.get(finding.id, ())),
            category_label=d.category_label if d else None,
        )

    curated: list[Finding] = []
    seen_pairs: set[tuple[str, str]] = set()
    for finding in findings:
        d = effective.get(finding.id)
        if isinstance(finding, ApparentFinding):
            if finding.claim.predication_id in struck:
                continue
            if d is None:
                curated.append(finding)
            elif d.verdict is Verdict.OUT_OF_SCOPE:
                curated.append(
                    replace(finding, status=status_for(finding, CurationState.REJECTED))
                )
            else:
                curated.append(
                    replace(finding, status=status_for(finding, CurationState.ACCEPTED))
                )
            continue

        # Pair-level findings: re-evaluate the pair on the filtered units.
        # Exclusivity guarantees one pair-level finding per pair in the
        # input, but guard against duplicates in hand-edited files.
        if finding.pair.sort_key in seen_pairs:
            continue
        seen_pairs.add(finding.pair.sort_key)
        if struck:
            survivor = evaluate_pair(
                finding.pair,
                by_pair.get(finding.pair.sort_key, []),
                table,
                min_claims=min_claims,
            )
        else:
            survivor = finding
        if survivor is None:
            continue
        # A contradiction collapsing to diversity is reclassified; the
        # state then sticks across repeated applications of the same log.
        reclassified = isinstance(survivor, DiversityFinding) and (
            isinstance(finding, ContradictionFinding)
            or finding.status.state is CurationState.RECLASSIFIED
        )
        if reclassified:
            state = CurationState.RECLASSIFIED
        elif d is None:
            state = CurationState.PENDING
        elif d.verdict is Verdict.OUT_OF_SCOPE:
            state = CurationState.REJECTED
        else:
            state = CurationState.ACCEPTED
        if d is None and not reclassified and survivor is finding:
            curated.append(finding)
        else:
            curated.append(replace(survivor, status=status_for(finding, state)))
    return curated
