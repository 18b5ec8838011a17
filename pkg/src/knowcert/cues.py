"""Textual uncertainty cues: hedging and explicit-disagreement tagging.

Matching is case-insensitive on whole tokens only, where a token is a
maximal run of letters, digits, or hyphens. Apostrophes split tokens.
Tagging one sentence is independent of every other sentence.
"""

from __future__ import annotations

import importlib.resources
import re
from dataclasses import dataclass
from typing import Iterable, TextIO

from .model import ClaimCorpus, SentenceRecord

HEDGE = "hedge"
DISAGREEMENT = "disagreement"

# Unicode-aware: letters/digits without underscore, plus hyphen.
_TOKEN = re.compile(r"(?:[^\W_]|-)+")


class LexiconError(ValueError):
    """Malformed lexicon file."""


@dataclass(frozen=True)
class CueLexicon:
    hedges: frozenset[str]
    disagreement: frozenset[str]

    def __post_init__(self) -> None:
        for term in self.hedges | self.disagreement:
            if not term or term != term.lower() or _TOKEN.fullmatch(term) is None:
                raise LexiconError(f"lexicon terms must be lower-case single tokens: {term!r}")


@dataclass(frozen=True)
class CueTags:
    sentence_id: str
    hedge_hits: tuple[tuple[str, int], ...] = ()
    disagreement_hits: tuple[tuple[str, int], ...] = ()

    @property
    def hedged(self) -> bool:
        return bool(self.hedge_hits)

    @property
    def first_disagreement_cue(self) -> str | None:
        return self.disagreement_hits[0][0] if self.disagreement_hits else None

    def disagreement_cues(self) -> tuple[str, ...]:
        """Distinct disagreement terms in order of first occurrence."""
        seen: dict[str, None] = {}
        for term, _ in self.disagreement_hits:
            seen.setdefault(term)
        return tuple(seen)


def tag_sentence(text: str, lex: CueLexicon, sentence_id: str = "") -> CueTags:
    """Report every whole-token cue occurrence with its character offset."""
    hedge_hits: list[tuple[str, int]] = []
    disagreement_hits: list[tuple[str, int]] = []
    for m in _TOKEN.finditer(text):
        token = m.group().lower()
        if token in lex.hedges:
            hedge_hits.append((token, m.start()))
        if token in lex.disagreement:
            disagreement_hits.append((token, m.start()))
    return CueTags(sentence_id, tuple(hedge_hits), tuple(disagreement_hits))


def is_hedged(sentence: SentenceRecord, lex: CueLexicon) -> bool:
    return bool(tag_sentence(sentence.text, lex).hedge_hits)


def tag_corpus(corpus: ClaimCorpus, lex: CueLexicon) -> dict[str, CueTags]:
    """One CueTags per sentence; no-hit sentences get empty tuples."""
    return {
        sid: tag_sentence(s.text, lex, sid)
        for sid, s in corpus.sentences.items()
    }


def parse_lexicon(lines: Iterable[str] | TextIO) -> CueLexicon:
    """Parse the lexicon file: TERM [tab CLASS [tab WINDOW]].

    CLASS defaults to hedge. WINDOW is reserved for proximity filtering
    and must currently be 0.
    """
    hedges: set[str] = set()
    disagreement: set[str] = set()
    for lineno, line in enumerate(iter(lines), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("\t")]
        if parts[0].upper() == "TERM" and len(parts) > 1 and parts[1].upper() == "CLASS":
            continue  # optional header row
        term = parts[0].lower()
        cls = parts[1].lower() if len(parts) > 1 and parts[1] else HEDGE
        if len(parts) > 2 and parts[2] and parts[2] != "0":
            raise LexiconError(f"line {lineno}: proximity windows not supported yet")
        if cls == HEDGE:
            hedges.add(term)
        elif cls == DISAGREEMENT:
            disagreement.add(term)
        else:
            raise LexiconError(f"line {lineno}: unknown cue class {cls!r}")
    return CueLexicon(frozenset(hedges), frozenset(disagreement))


def load_lexicon(path: str) -> CueLexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh)


def default_lexicon() -> CueLexicon:
    text = (
        importlib.resources.files("knowcert.data")
        .joinpath("lexicon.tsv")
        .read_text(encoding="utf-8")
    )
    return parse_lexicon(text.splitlines())
