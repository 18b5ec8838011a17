"""Brute-force reference implementations the tests compare against.

Everything in this module is deliberately naive: plain dicts and tuples,
O(n^2) scans, a hand-rolled character-walk tokenizer, and literal copies
of the shipped data tables. Nothing here imports the package under test,
so an implementation bug cannot cancel itself out in the comparison.
"""

from __future__ import annotations

# Polarity groups, transcribed by hand. Ten base predicates; a NEG_
# prefix lands the predicate in the opposite group.
ORACLE_EXCITATORY = frozenset(
    {
        "AUGMENTS",
        "CAUSES",
        "COMPLICATES",
        "PREDISPOSES",
        "PRODUCES",
        "STIMULATES",
        "NEG_DISRUPTS",
        "NEG_INHIBITS",
        "NEG_PREVENTS",
        "NEG_TREATS",
    }
)
ORACLE_INHIBITORY = frozenset(
    {
        "DISRUPTS",
        "INHIBITS",
        "PREVENTS",
        "TREATS",
        "NEG_AUGMENTS",
        "NEG_CAUSES",
        "NEG_COMPLICATES",
        "NEG_PREDISPOSES",
        "NEG_PRODUCES",
        "NEG_STIMULATES",
    }
)

ORACLE_HEDGES = ("may", "could", "might")
ORACLE_CUES = ("conflicting", "controversial", "contradictory")

# Evidence policy, transcribed by hand from the shipped TOML.
ORACLE_PUB_TYPES = frozenset(
    {
        "Guideline",
        "Practice Guideline",
        "Meta-Analysis",
        "Multicenter Study",
        "Randomized Controlled Trial",
        "Clinical Trial",
        "Clinical Trial, Phase I",
        "Clinical Trial, Phase II",
        "Clinical Trial, Phase III",
        "Clinical Trial, Phase IV",
        "Pragmatic Clinical Trial",
        "Comparative Study",
        "Controlled Clinical Trial",
    }
)
ORACLE_MESH_TOPICS = frozenset(
    {
        "Meta-Analysis as Topic",
        "Randomized Controlled Trials as Topic",
        "Systematic Reviews as Topic",
        "Clinical Trials as Topic",
        "Clinical Trials, Phase I as Topic",
        "Clinical Trials, Phase II as Topic",
        "Clinical Trials, Phase III as Topic",
        "Clinical Trials, Phase IV as Topic",
    }
)

ORACLE_SUBJECT_SEMTYPES = frozenset(
    {
        "aapp", "antb", "bacs", "bodm", "chem", "chvf", "chvs", "clnd",
        "elii", "enzy", "hops", "horm", "imft", "inch", "irda", "nnon",
        "orch", "phsu", "rcpt", "vita",
    }
)
ORACLE_OBJECT_SEMTYPES = frozenset(
    {
        "acab", "anab", "cgab", "comd", "dsyn", "emod",
        "fndg", "inpo", "mobd", "neop", "patf", "sosy",
    }
)
ORACLE_EXCLUDED_CUIS = frozenset({"C0003392", "C0003209"})


def oracle_flip(raw: str) -> str:
    return raw[4:] if raw.startswith("NEG_") else "NEG_" + raw


def oracle_polarity(raw: str) -> str:
    if raw in ORACLE_EXCITATORY:
        return "E"
    if raw in ORACLE_INHIBITORY:
        return "I"
    return "N"


def scan_tokens(text: str) -> list[tuple[str, int]]:
    """Character-walk tokenizer: maximal runs of alphanumerics or hyphen."""
    out: list[tuple[str, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "-" or ch.isalnum():
            start = i
            while i < n and (text[i] == "-" or text[i].isalnum()):
                i += 1
            out.append((text[start:i], start))
        else:
            i += 1
    return out


def oracle_hedge_hits(text: str) -> list[tuple[str, int]]:
    return [(t.lower(), off) for t, off in scan_tokens(text) if t.lower() in ORACLE_HEDGES]


def oracle_cue_hits(text: str) -> list[tuple[str, int]]:
    return [(t.lower(), off) for t, off in scan_tokens(text) if t.lower() in ORACLE_CUES]


def oracle_distinct_cues(text: str) -> list[str]:
    seen: list[str] = []
    for term, _ in oracle_cue_hits(text):
        if term not in seen:
            seen.append(term)
    return seen


# --- a second, independent TSV pipeline on plain dicts ----------------------


def read_tsv(text: str) -> list[dict[str, str]]:
    lines = [line for line in text.split("\n") if line]
    header = lines[0].split("\t")
    rows = []
    for line in lines[1:]:
        fields = line.split("\t")
        assert len(fields) == len(header), f"ragged row: {line!r}"
        rows.append(dict(zip(header, fields)))
    return rows


def oracle_article_passes(article: dict[str, str]) -> bool:
    pts = {p.strip() for p in article["PUB_TYPES"].split("|") if p.strip()}
    mesh = {m.strip() for m in article["MESH_HEADINGS"].split("|") if m.strip()}
    return bool(pts & ORACLE_PUB_TYPES) or bool(mesh & ORACLE_MESH_TOPICS)


def oracle_concept_passes(pred: dict[str, str]) -> bool:
    subj = {t.strip() for t in pred["SUBJECT_SEMTYPES"].split(",") if t.strip()}
    obj = {t.strip() for t in pred["OBJECT_SEMTYPES"].split(",") if t.strip()}
    return (
        pred["SUBJECT_CUI"].strip() not in ORACLE_EXCLUDED_CUIS
        and bool(subj & ORACLE_SUBJECT_SEMTYPES)
        and bool(obj & ORACLE_OBJECT_SEMTYPES)
    )


def oracle_claims(
    pred_tsv: str,
    sent_tsv: str,
    art_tsv: str,
    *,
    apply_filter: bool = True,
) -> list[dict]:
    """Parse, link, filter, and cue-tag into flat claim dicts.

    A claim dict carries the unit key, its ids, hedged flag, and the
    distinct disagreement cues of its sentence. Duplicate (sentence, key)
    extractions collapse to the smallest predication id.
    """
    sentences = {r["SENTENCE_ID"].strip(): r for r in read_tsv(sent_tsv)}
    articles = {r["PMID"].strip(): r for r in read_tsv(art_tsv)}
    best: dict[tuple[str, str, str, str], dict] = {}
    for row in read_tsv(pred_tsv):
        sid = row["SENTENCE_ID"].strip()
        pmid = row["PMID"].strip()
        if sid not in sentences or pmid not in articles:
            continue
        if apply_filter:
            if not oracle_article_passes(articles[pmid]):
                continue
            if not oracle_concept_passes(row):
                continue
        text = sentences[sid]["TEXT"].strip()
        claim = {
            "predication_id": row["PREDICATION_ID"].strip(),
            "sentence_id": sid,
            "article_id": pmid,
            "subject": row["SUBJECT_CUI"].strip(),
            "predicate": row["PREDICATE"].strip().upper(),
            "object": row["OBJECT_CUI"].strip(),
            "hedged": bool(oracle_hedge_hits(text)),
            "cues": tuple(oracle_distinct_cues(text)),
        }
        key = (claim["subject"], claim["predicate"], claim["object"], sid)
        prior = best.get(key)
        if prior is None or claim["predication_id"] < prior["predication_id"]:
            best[key] = claim
    return list(best.values())


def oracle_units(
    claims: list[dict], *, exclude_hedged: bool = True
) -> dict[tuple[str, str, str], list[dict]]:
    units: dict[tuple[str, str, str], list[dict]] = {}
    for c in claims:
        if exclude_hedged and c["hedged"]:
            continue
        units.setdefault((c["subject"], c["predicate"], c["object"]), []).append(c)
    return units


def _claim_sig(c: dict) -> tuple[str, str]:
    return (c["predication_id"], c["sentence_id"])


def _side_sig(side: dict[str, list[dict]]) -> frozenset:
    return frozenset(
        (pred, frozenset(_claim_sig(c) for c in claims)) for pred, claims in side.items()
    )


def oracle_detect(
    units: dict[tuple[str, str, str], list[dict]], *, min_claims: int = 1
) -> tuple[set, set]:
    """Pairwise polarity rules, written as literally as possible.

    Returns (contradiction signatures, diversity signatures); a signature
    is a nested frozenset structure safe for set equality.
    """
    pairs: dict[tuple[str, str], dict[str, dict[str, list[dict]]]] = {}
    for (s, p, o), claims in units.items():
        if len(claims) < min_claims:
            continue
        group = oracle_polarity(p)
        if group == "N":
            continue
        sides = pairs.setdefault((s, o), {"E": {}, "I": {}})
        sides[group][p] = claims
    contradictions: set = set()
    diversities: set = set()
    for (s, o), sides in pairs.items():
        if sides["E"] and sides["I"]:
            contradictions.add((s, o, _side_sig(sides["E"]), _side_sig(sides["I"])))
        elif len(sides["E"]) >= 2:
            diversities.add(("E", s, o, _side_sig(sides["E"])))
        elif len(sides["I"]) >= 2:
            diversities.add(("I", s, o, _side_sig(sides["I"])))
    return contradictions, diversities


def oracle_apparent(units: dict[tuple[str, str, str], list[dict]]) -> set:
    out: set = set()
    for (s, p, o), claims in units.items():
        for c in claims:
            for cue in c["cues"]:
                out.add((s, p, o, c["sentence_id"], cue))
    return out


# --- projections of package findings into the oracle's signature space ------


def finding_signatures(findings) -> tuple[set, set, set]:
    """Project package findings onto (contradiction, diversity, apparent)
    signature sets, discarding ids and curation status."""
    contradictions: set = set()
    diversities: set = set()
    apparent: set = set()
    for f in findings:
        kind = f.type.value
        if kind == "contradiction":
            contradictions.add(
                (
                    f.pair.subject_cui,
                    f.pair.object_cui,
                    _evidence_sig(f.excitatory),
                    _evidence_sig(f.inhibitory),
                )
            )
        elif kind == "diversity":
            diversities.add(
                (
                    "E" if f.group.value == "Excitatory" else "I",
                    f.pair.subject_cui,
                    f.pair.object_cui,
                    _evidence_sig(f.labels),
                )
            )
        else:
            apparent.add(
                (
                    f.unit_key.subject_cui,
                    f.unit_key.predicate.raw,
                    f.unit_key.object_cui,
                    f.claim.sentence_id,
                    f.cue,
                )
            )
    return contradictions, diversities, apparent


def _evidence_sig(evidence) -> frozenset:
    return frozenset(
        (
            ev.predicate.raw,
            frozenset((c.predication_id, c.sentence_id) for c in ev.claims),
        )
        for ev in evidence
    )
