"""Realization-by-sense distribution and headline counts for one corpus."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

from .model import LEVEL1_CLASSES, Corpus, RealizationType

NO_SENSE = "no sense tag"
COLUMNS = (*LEVEL1_CLASSES, NO_SENSE)


@dataclass
class DistributionTable:
    """Token counts, realization type by Level-1 class.

    With ``every_sense`` set, a token adds one count per listed sense and
    the grand total is no longer the token count.
    """

    counts: Dict[RealizationType, Dict[str, int]] = field(
        default_factory=lambda: {t: dict.fromkeys(COLUMNS, 0) for t in RealizationType}
    )
    every_sense: bool = False

    def row_total(self, t: RealizationType) -> int:
        return sum(self.counts[t].values())

    def column_total(self, col: str) -> int:
        return sum(row[col] for row in self.counts.values())

    @property
    def grand_total(self) -> int:
        return sum(self.row_total(t) for t in RealizationType)


def realization_by_sense_table(c: Corpus, every_sense: bool = False) -> DistributionTable:
    table = DistributionTable(every_sense=every_sense)
    for r in c.relations():
        row = table.counts[r.realization]
        if not r.senses:
            row[NO_SENSE] += 1
        elif every_sense:
            for s in r.senses:
                row[s.level1] += 1
        else:
            row[r.senses[0].level1] += 1
    return table


@dataclass(frozen=True)
class Summary:
    counts: Dict[RealizationType, int]
    total: int
    percentages: Optional[Dict[RealizationType, float]]
    explicit_implicit_ratio: Optional[float]


def summary(c: Corpus) -> Summary:
    counts = dict.fromkeys(RealizationType, 0)
    for r in c.relations():
        counts[r.realization] += 1
    total = sum(counts.values())
    pct = {t: 100.0 * n / total for t, n in counts.items()} if total else None
    n_imp = counts[RealizationType.IMPLICIT]
    ratio = counts[RealizationType.EXPLICIT] / n_imp if n_imp else None
    return Summary(counts, total, pct, ratio)

