"""Contradiction, diversity, and apparent-uncertainty detection.

Detection groups knowledge units by directed concept pair (subject CUI,
object CUI) and inspects predicate polarity:

- a pair with at least one Excitatory and one Inhibitory predicate is one
  contradiction finding carrying all polarized predicates on their sides;
- a pair with two or more distinct predicates of a single polarity group
  and no cross-group predicate is one diversity finding;
- the two outcomes are mutually exclusive per pair by construction.

Apparent findings are claim-level: any claim whose sentence carries a
disagreement cue yields one finding per distinct cue term. Neutral
predicates are invisible to the pair-level detectors but still produce
apparent findings.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .cues import CueTags
from .model import Predicate
from .polarity import Polarity, PolarityTable
from .store import Claim, KnowledgeObject, KnowledgeUnit, Status, UnitKey


class FindingType(enum.Enum):
    CONTRADICTION = "contradiction"
    DIVERSITY = "diversity"
    APPARENT = "apparent"


class CurationState(enum.Enum):
    PENDING = "pending"
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    RECLASSIFIED = "reclassified"


@dataclass(frozen=True)
class CurationStatus:
    state: CurationState = CurationState.PENDING
    applied_decisions: tuple[str, ...] = ()
    category_label: str | None = None


PENDING = CurationStatus()


@dataclass(frozen=True, slots=True)
class PairKey:
    """Directed concept pair; (S, O) is never merged with (O, S)."""

    subject_cui: str
    object_cui: str

    @property
    def sort_key(self) -> tuple[str, str]:
        return (self.subject_cui, self.object_cui)


@dataclass(frozen=True, slots=True)
class PredicateEvidence:
    predicate: Predicate
    claims: tuple[Claim, ...]

    def __post_init__(self) -> None:
        if not self.claims:
            raise ValueError(f"no supporting claims for {self.predicate.raw}")

    @property
    def claim_count(self) -> int:
        return len(self.claims)


@dataclass(frozen=True)
class ContradictionFinding:
    id: str
    pair: PairKey
    excitatory: tuple[PredicateEvidence, ...]
    inhibitory: tuple[PredicateEvidence, ...]
    status: CurationStatus = PENDING

    def __post_init__(self) -> None:
        if not self.excitatory or not self.inhibitory:
            raise ValueError("a contradiction needs both polarity sides populated")

    type = FindingType.CONTRADICTION

    @property
    def sides(self) -> tuple[tuple[tuple[Predicate, int], ...], tuple[tuple[Predicate, int], ...]]:
        return (
            tuple((e.predicate, e.claim_count) for e in self.excitatory),
            tuple((e.predicate, e.claim_count) for e in self.inhibitory),
        )

    @property
    def evidence(self) -> tuple[PredicateEvidence, ...]:
        return self.excitatory + self.inhibitory


@dataclass(frozen=True)
class DiversityFinding:
    id: str
    pair: PairKey
    group: Polarity
    labels: tuple[PredicateEvidence, ...]
    status: CurationStatus = PENDING

    def __post_init__(self) -> None:
        if len(self.labels) < 2:
            raise ValueError("diversity needs at least two predicates")
        if self.group is Polarity.NEUTRAL:
            raise ValueError("diversity group must be Excitatory or Inhibitory")

    type = FindingType.DIVERSITY

    @property
    def label_set(self) -> frozenset[Predicate]:
        return frozenset(e.predicate for e in self.labels)

    @property
    def evidence(self) -> tuple[PredicateEvidence, ...]:
        return self.labels


@dataclass(frozen=True)
class ApparentFinding:
    id: str
    unit_key: UnitKey
    claim: Claim
    cue: str
    status: CurationStatus = PENDING

    type = FindingType.APPARENT

    @property
    def pair(self) -> PairKey:
        return PairKey(self.unit_key.subject_cui, self.unit_key.object_cui)

    @property
    def evidence(self) -> tuple[PredicateEvidence, ...]:
        return (PredicateEvidence(self.unit_key.predicate, (self.claim,)),)


Finding = ContradictionFinding | DiversityFinding | ApparentFinding


def _digest(*parts: str) -> str:
    return hashlib.sha256("\x1f".join(parts).encode("utf-8")).hexdigest()[:16]


def pair_finding_id(pair: PairKey) -> str:
    """One id per concept pair. Contradiction and diversity are mutually
    exclusive per pair, and a reclassified contradiction keeps its id."""
    return "pair:" + _digest(pair.subject_cui, pair.object_cui)


def apparent_finding_id(key: UnitKey, sentence_id: str, cue: str) -> str:
    return "app:" + _digest(
        key.subject_cui, key.predicate.raw, key.object_cui, sentence_id, cue
    )


def content_hash(finding: Finding) -> str:
    """Hash of the evidence a curator judges: pair, predicates, claim ids,
    cue. Curation state is deliberately excluded, so a decision that only
    changes state does not invalidate other curators' pending submissions."""
    h = hashlib.sha256()
    h.update(finding.type.value.encode())
    if isinstance(finding, ApparentFinding):
        h.update(
            "\x1f".join(
                (
                    finding.unit_key.subject_cui,
                    finding.unit_key.predicate.raw,
                    finding.unit_key.object_cui,
                    finding.claim.sentence_id,
                    finding.cue,
                )
            ).encode("utf-8")
        )
    else:
        h.update("\x1f".join(finding.pair.sort_key).encode("utf-8"))
        for ev in finding.evidence:
            h.update(b"\x1e")
            h.update(ev.predicate.raw.encode("utf-8"))
            for c in ev.claims:
                h.update(b"\x1d")
                h.update(f"{c.predication_id}\x1f{c.sentence_id}".encode("utf-8"))
    return h.hexdigest()


def group_pairs(
    units: Mapping[UnitKey, KnowledgeUnit]
) -> dict[PairKey, list[KnowledgeUnit]]:
    pairs: dict[PairKey, list[KnowledgeUnit]] = {}
    for key, unit in units.items():
        pairs.setdefault(PairKey(key.subject_cui, key.object_cui), []).append(unit)
    return pairs


def evaluate_pair(
    pair: PairKey,
    pair_units: Sequence[KnowledgeUnit],
    table: PolarityTable,
    *,
    min_claims: int = 1,
    status: CurationStatus = PENDING,
) -> ContradictionFinding | DiversityFinding | None:
    """Apply the polarity rules to one concept pair's units.

    Side assignment depends only on polarity. Predicates with fewer than
    `min_claims` supporting claims are ignored entirely.
    """
    excitatory: list[PredicateEvidence] = []
    inhibitory: list[PredicateEvidence] = []
    for unit in pair_units:
        if len(unit.claims) < min_claims:
            continue
        group = table.polarity(unit.key.predicate)
        if group is Polarity.NEUTRAL:
            continue
        side = excitatory if group is Polarity.EXCITATORY else inhibitory
        side.append(PredicateEvidence(unit.key.predicate, unit.claims))
    excitatory.sort(key=lambda e: e.predicate.raw)
    inhibitory.sort(key=lambda e: e.predicate.raw)
    if excitatory and inhibitory:
        return ContradictionFinding(
            id=pair_finding_id(pair),
            pair=pair,
            excitatory=tuple(excitatory),
            inhibitory=tuple(inhibitory),
            status=status,
        )
    lone = excitatory or inhibitory
    if len(lone) >= 2:
        return DiversityFinding(
            id=pair_finding_id(pair),
            pair=pair,
            group=Polarity.EXCITATORY if excitatory else Polarity.INHIBITORY,
            labels=tuple(lone),
            status=status,
        )
    return None


def detect_contradictions(
    units: Mapping[UnitKey, KnowledgeUnit],
    table: PolarityTable,
    *,
    min_claims: int = 1,
) -> list[ContradictionFinding]:
    pairs = group_pairs(units)
    out: list[ContradictionFinding] = []
    for pair in sorted(pairs, key=lambda p: p.sort_key):
        found = evaluate_pair(pair, pairs[pair], table, min_claims=min_claims)
        if isinstance(found, ContradictionFinding):
            out.append(found)
    return out


def detect_diversity(
    units: Mapping[UnitKey, KnowledgeUnit],
    table: PolarityTable,
    *,
    min_claims: int = 1,
) -> list[DiversityFinding]:
    pairs = group_pairs(units)
    out: list[DiversityFinding] = []
    for pair in sorted(pairs, key=lambda p: p.sort_key):
        found = evaluate_pair(pair, pairs[pair], table, min_claims=min_claims)
        if isinstance(found, DiversityFinding):
            out.append(found)
    return out


def detect_apparent(
    units: Mapping[UnitKey, KnowledgeUnit],
    tags: Mapping[str, CueTags],
) -> list[ApparentFinding]:
    """One finding per (claim, unit, distinct cue term). Repeats of one
    term inside a sentence collapse; different terms do not."""
    out: list[ApparentFinding] = []
    for key in sorted(units, key=lambda k: k.sort_key):
        for claim in units[key].claims:
            tag = tags.get(claim.sentence_id)
            if tag is None:
                continue
            for cue in sorted(tag.disagreement_cues()):
                out.append(
                    ApparentFinding(
                        id=apparent_finding_id(key, claim.sentence_id, cue),
                        unit_key=key,
                        claim=claim,
                        cue=cue,
                    )
                )
    return out


def detect_all(
    units: Mapping[UnitKey, KnowledgeUnit],
    table: PolarityTable,
    tags: Mapping[str, CueTags],
    *,
    min_claims: int = 1,
) -> list[Finding]:
    pairs = group_pairs(units)
    out: list[Finding] = []
    for pair in sorted(pairs, key=lambda p: p.sort_key):
        found = evaluate_pair(pair, pairs[pair], table, min_claims=min_claims)
        if found is not None:
            out.append(found)
    out.extend(detect_apparent(units, tags))
    return out


def mark_statuses(
    objects: Mapping[str, KnowledgeObject],
    findings: Iterable[Finding],
) -> dict[str, KnowledgeObject]:
    """Stamp Diversity / ControversyContradiction statuses onto the
    knowledge objects whose units participate in findings."""
    by_unit_key: dict[UnitKey, str] = {o.unit.key: oid for oid, o in objects.items()}
    added: dict[str, set[Status]] = {}
    for f in findings:
        if isinstance(f, DiversityFinding):
            status = Status.DIVERSITY
        else:
            status = Status.CONTROVERSY_CONTRADICTION
        if isinstance(f, ApparentFinding):
            keys: Iterable[UnitKey] = (f.unit_key,)
        else:
            keys = (
                UnitKey(f.pair.subject_cui, ev.predicate, f.pair.object_cui)
                for ev in f.evidence
            )
        for key in keys:
            oid = by_unit_key.get(key)
            if oid is not None:
                added.setdefault(oid, set()).add(status)
    out = dict(objects)
    for oid, extra in added.items():
        obj = out[oid]
        out[oid] = replace(obj, statuses=obj.statuses | extra)
    return out
