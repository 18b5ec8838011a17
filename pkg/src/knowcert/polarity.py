"""Excitatory/Inhibitory predicate polarity and the contradiction rule.

Two claims on one concept pair contradict when their predicates sit in
opposite polarity groups. Predicates outside the table are Neutral and
never contradict anything. The table is data, not code, so operators can
extend it to new predicates; consistency is validated fatally at load.
"""

from __future__ import annotations

import enum
import importlib.resources
from dataclasses import dataclass
from typing import Iterable, TextIO

from .model import Predicate


class Polarity(enum.Enum):
    EXCITATORY = "Excitatory"
    INHIBITORY = "Inhibitory"
    NEUTRAL = "Neutral"


class PolarityTableError(ValueError):
    """Malformed or inconsistent polarity table. Always fatal."""


@dataclass(frozen=True)
class PolarityTable:
    excitatory: frozenset[Predicate]
    inhibitory: frozenset[Predicate]

    def __post_init__(self) -> None:
        overlap = self.excitatory & self.inhibitory
        if overlap:
            names = ", ".join(sorted(p.raw for p in overlap))
            raise PolarityTableError(f"predicates in both groups: {names}")
        # Flip consistency: listing P in one group commits NEG_P to the
        # other. The contradiction rule is wrong for any predicate where
        # this fails, so a violation is fatal.
        for p in self.excitatory | self.inhibitory:
            flipped = p.flip()
            if flipped in self.excitatory or flipped in self.inhibitory:
                same = (p in self.excitatory) == (flipped in self.excitatory)
                if same:
                    raise PolarityTableError(
                        f"{p.raw} and {flipped.raw} must be in opposite groups"
                    )

    def polarity(self, p: Predicate) -> Polarity:
        if p in self.excitatory:
            return Polarity.EXCITATORY
        if p in self.inhibitory:
            return Polarity.INHIBITORY
        return Polarity.NEUTRAL


def polarity(p: Predicate, table: PolarityTable) -> Polarity:
    return table.polarity(p)


def contradicts(p1: Predicate, p2: Predicate, table: PolarityTable) -> bool:
    """True iff one predicate is Excitatory and the other Inhibitory."""
    a, b = table.polarity(p1), table.polarity(p2)
    return {a, b} == {Polarity.EXCITATORY, Polarity.INHIBITORY}


def flip(p: Predicate) -> Predicate:
    return p.flip()


def parse_polarity_table(lines: Iterable[str] | TextIO) -> PolarityTable:
    """Parse the two-column table: header `PREDICATE\tGROUP`, GROUP in {E, I}.

    Raw predicate names may carry the NEG_ prefix. Duplicate rows for one
    predicate are fatal, as is any flip inconsistency.
    """
    it = iter(lines)
    header = next(it, None)
    if header is None or header.rstrip("\n").split("\t") != ["PREDICATE", "GROUP"]:
        raise PolarityTableError(f"bad header: {header!r}")
    excitatory: set[Predicate] = set()
    inhibitory: set[Predicate] = set()
    for lineno, line in enumerate(it, start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise PolarityTableError(f"line {lineno}: expected 2 columns")
        raw, group = parts[0].strip().upper(), parts[1].strip().upper()
        try:
            pred = Predicate.from_raw(raw)
        except ValueError as exc:
            raise PolarityTableError(f"line {lineno}: {exc}") from exc
        if pred in excitatory or pred in inhibitory:
            raise PolarityTableError(f"line {lineno}: duplicate entry {raw}")
        if group == "E":
            excitatory.add(pred)
        elif group == "I":
            inhibitory.add(pred)
        else:
            raise PolarityTableError(f"line {lineno}: GROUP must be E or I, got {group!r}")
    return PolarityTable(frozenset(excitatory), frozenset(inhibitory))


def load_polarity_table(path: str) -> PolarityTable:
    with open(path, encoding="utf-8") as fh:
        return parse_polarity_table(fh)


def default_polarity_table() -> PolarityTable:
    """The shipped grouping: ten base predicates, twenty entries."""
    text = (
        importlib.resources.files("knowcert.data")
        .joinpath("polarity.tsv")
        .read_text(encoding="utf-8")
    )
    return parse_polarity_table(text.splitlines())
