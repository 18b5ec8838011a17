"""Serialization of pipeline artifacts.

Binary artifacts (corpus, cue tags, units) use a small envelope: magic
bytes, a kind byte, a format-version byte, then a pickle payload. The
loader refuses anything with the wrong magic, kind, or version, so stale
files fail loudly instead of deserializing garbage.

Findings travel as JSONL: one schema-versioned JSON object per line with
a stable field order, so equal finding lists serialize byte-identically.
"""

from __future__ import annotations

import io
import json
import pickle
from dataclasses import dataclass
from typing import Any, BinaryIO, Iterable, Mapping

from .cues import CueLexicon, CueTags
from .detect import (
    ApparentFinding,
    ContradictionFinding,
    CurationState,
    CurationStatus,
    DiversityFinding,
    Finding,
    PairKey,
    PredicateEvidence,
)
from .model import ClaimCorpus, Predicate
from .polarity import Polarity
from .store import Claim, UnitKey, UnitsSnapshot

MAGIC = b"KNWC"

KIND_CORPUS = 1
KIND_TAGS = 2
KIND_UNITS = 3

_VERSIONS = {KIND_CORPUS: 1, KIND_TAGS: 1, KIND_UNITS: 1}
_KIND_NAMES = {KIND_CORPUS: "corpus", KIND_TAGS: "tags", KIND_UNITS: "units"}

FINDINGS_SCHEMA = 1


class ArtifactError(ValueError):
    """Unreadable or mismatched artifact file."""


@dataclass(frozen=True)
class TagsSnapshot:
    """Serialized payload of the `tag` stage: per-sentence cue tags plus
    the lexicon that produced them."""

    lexicon: CueLexicon
    tags: dict[str, CueTags]


def _dump(payload: Any, kind: int, out: BinaryIO) -> None:
    out.write(MAGIC)
    out.write(bytes((kind, _VERSIONS[kind])))
    pickle.dump(payload, out, protocol=5)


def _load(stream: BinaryIO, kind: int) -> Any:
    head = stream.read(6)
    if len(head) < 6 or head[:4] != MAGIC:
        raise ArtifactError("not a knowcert artifact (bad magic)")
    got_kind, got_version = head[4], head[5]
    if got_kind != kind:
        raise ArtifactError(
            f"expected a {_KIND_NAMES[kind]} artifact, got "
            f"{_KIND_NAMES.get(got_kind, f'kind {got_kind}')}"
        )
    if got_version != _VERSIONS[kind]:
        raise ArtifactError(
            f"unsupported {_KIND_NAMES[kind]} format version {got_version}"
        )
    return pickle.load(stream)


def save_corpus(corpus: ClaimCorpus, path: str) -> None:
    with open(path, "wb") as fh:
        _dump(corpus, KIND_CORPUS, fh)


def load_corpus(path: str) -> ClaimCorpus:
    with open(path, "rb") as fh:
        corpus = _load(fh, KIND_CORPUS)
    if not isinstance(corpus, ClaimCorpus):
        raise ArtifactError("corpus artifact holds an unexpected payload")
    return corpus


def save_tags(snapshot: TagsSnapshot, path: str) -> None:
    with open(path, "wb") as fh:
        _dump(snapshot, KIND_TAGS, fh)


def load_tags(path: str) -> TagsSnapshot:
    with open(path, "rb") as fh:
        snap = _load(fh, KIND_TAGS)
    if not isinstance(snap, TagsSnapshot):
        raise ArtifactError("tags artifact holds an unexpected payload")
    return snap


def save_units(snapshot: UnitsSnapshot, path: str) -> None:
    with open(path, "wb") as fh:
        _dump(snapshot, KIND_UNITS, fh)


def load_units(path: str) -> UnitsSnapshot:
    with open(path, "rb") as fh:
        snap = _load(fh, KIND_UNITS)
    if not isinstance(snap, UnitsSnapshot):
        raise ArtifactError("units artifact holds an unexpected payload")
    return snap


# --- findings JSONL ---------------------------------------------------------


def claim_to_json(c: Claim) -> dict[str, Any]:
    return {
        "predication_id": c.predication_id,
        "sentence_id": c.sentence_id,
        "article_id": c.article_id,
        "pub_year": c.pub_year,
        "pub_month": c.pub_month,
        "hedged": c.hedged,
        "disagreement_cue": c.disagreement_cue,
    }


def claim_from_json(d: Mapping[str, Any]) -> Claim:
    return Claim(
        predication_id=d["predication_id"],
        sentence_id=d["sentence_id"],
        article_id=d["article_id"],
        pub_year=d["pub_year"],
        pub_month=d["pub_month"],
        hedged=d["hedged"],
        disagreement_cue=d["disagreement_cue"],
    )


def _evidence_to_json(evs: Iterable[PredicateEvidence]) -> list[dict[str, Any]]:
    return [
        {"predicate": ev.predicate.raw, "claims": [claim_to_json(c) for c in ev.claims]}
        for ev in evs
    ]


def _evidence_from_json(items: Iterable[Mapping[str, Any]]) -> tuple[PredicateEvidence, ...]:
    return tuple(
        PredicateEvidence(
            predicate=Predicate.from_raw(item["predicate"]),
            claims=tuple(claim_from_json(c) for c in item["claims"]),
        )
        for item in items
    )


def _status_fields(f: Finding) -> dict[str, Any]:
    return {
        "state": f.status.state.value,
        "applied_decisions": list(f.status.applied_decisions),
        "category_label": f.status.category_label,
    }


def finding_to_json(f: Finding) -> dict[str, Any]:
    if isinstance(f, ContradictionFinding):
        body: dict[str, Any] = {
            "schema": FINDINGS_SCHEMA,
            "type": "contradiction",
            "id": f.id,
            "subject_cui": f.pair.subject_cui,
            "object_cui": f.pair.object_cui,
            "excitatory": _evidence_to_json(f.excitatory),
            "inhibitory": _evidence_to_json(f.inhibitory),
        }
    elif isinstance(f, DiversityFinding):
        body = {
            "schema": FINDINGS_SCHEMA,
            "type": "diversity",
            "id": f.id,
            "subject_cui": f.pair.subject_cui,
            "object_cui": f.pair.object_cui,
            "group": f.group.value,
            "labels": _evidence_to_json(f.labels),
        }
    elif isinstance(f, ApparentFinding):
        body = {
            "schema": FINDINGS_SCHEMA,
            "type": "apparent",
            "id": f.id,
            "subject_cui": f.unit_key.subject_cui,
            "predicate": f.unit_key.predicate.raw,
            "object_cui": f.unit_key.object_cui,
            "claim": claim_to_json(f.claim),
            "cue": f.cue,
        }
    else:
        raise TypeError(f"not a finding: {f!r}")
    body.update(_status_fields(f))
    return body


def finding_from_json(d: Mapping[str, Any]) -> Finding:
    if d.get("schema") != FINDINGS_SCHEMA:
        raise ArtifactError(f"unsupported findings schema {d.get('schema')!r}")
    status = CurationStatus(
        state=CurationState(d["state"]),
        applied_decisions=tuple(d["applied_decisions"]),
        category_label=d["category_label"],
    )
    kind = d["type"]
    if kind == "contradiction":
        return ContradictionFinding(
            id=d["id"],
            pair=PairKey(d["subject_cui"], d["object_cui"]),
            excitatory=_evidence_from_json(d["excitatory"]),
            inhibitory=_evidence_from_json(d["inhibitory"]),
            status=status,
        )
    if kind == "diversity":
        return DiversityFinding(
            id=d["id"],
            pair=PairKey(d["subject_cui"], d["object_cui"]),
            group=Polarity(d["group"]),
            labels=_evidence_from_json(d["labels"]),
            status=status,
        )
    if kind == "apparent":
        return ApparentFinding(
            id=d["id"],
            unit_key=UnitKey(
                d["subject_cui"], Predicate.from_raw(d["predicate"]), d["object_cui"]
            ),
            claim=claim_from_json(d["claim"]),
            cue=d["cue"],
            status=status,
        )
    raise ArtifactError(f"unknown finding type {kind!r}")


def dump_findings(findings: Iterable[Finding]) -> str:
    buf = io.StringIO()
    for f in findings:
        buf.write(json.dumps(finding_to_json(f), ensure_ascii=False, separators=(",", ":")))
        buf.write("\n")
    return buf.getvalue()


def write_findings(findings: Iterable[Finding], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dump_findings(findings))


def parse_findings(text: str) -> list[Finding]:
    out: list[Finding] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            out.append(finding_from_json(json.loads(line)))
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise ArtifactError(f"findings line {lineno}: {exc}") from exc
    return out


def read_findings(path: str) -> list[Finding]:
    with open(path, encoding="utf-8") as fh:
        return parse_findings(fh.read())
