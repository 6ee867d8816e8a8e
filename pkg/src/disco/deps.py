"""Dependency patterns between adjacent Explicit/Implicit relations.

For two relations R1 < R2 in textual order the pair is labelled with the
first pattern that holds:

1. shared argument: an argument of R1 and an argument of R2 cover exactly
   the same characters;
2. full embedding: one relation's whole extent (connective plus both
   arguments) is exactly an argument of the other;
3. proper containment: one relation's extent is a strict subset of an
   argument of the other;
4. other overlap: the extents intersect otherwise;
5. none: the extents are disjoint.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .model import AnnotatedDocument, Corpus, DiscourseRelation, RealizationType, extent, sort_key

ELIGIBLE = (RealizationType.EXPLICIT, RealizationType.IMPLICIT)
ARG_NAMES = ("arg1", "arg2")


class DependencyKind(str, enum.Enum):
    SHARED_ARGUMENT = "SharedArgument"
    FULL_EMBEDDING = "FullEmbedding"
    PROPER_CONTAINMENT = "ProperContainment"
    OTHER_OVERLAP = "OtherOverlap"
    NONE = "None"

    def __str__(self) -> str:
        return self.value


PATTERNS = (DependencyKind.SHARED_ARGUMENT, DependencyKind.FULL_EMBEDDING, DependencyKind.PROPER_CONTAINMENT)


@dataclass(frozen=True)
class DependencyLabel:
    kind: DependencyKind
    outer: Optional[str] = None  # "first" | "second"
    outer_arg: Optional[str] = None  # "arg1" | "arg2"
    inner_arg: Optional[str] = None  # SharedArgument only

    def __post_init__(self):
        patterned = self.kind in PATTERNS
        if patterned != (self.outer is not None) or patterned != (self.outer_arg is not None):
            raise ValueError(f"outer/outer_arg must be set exactly for pattern kinds, got {self}")
        if (self.kind is DependencyKind.SHARED_ARGUMENT) != (self.inner_arg is not None):
            raise ValueError(f"inner_arg is set only for SharedArgument, got {self}")

    def __str__(self) -> str:
        if self.kind is DependencyKind.SHARED_ARGUMENT:
            return f"{self.kind}({self.outer}.{self.outer_arg}={self.inner_arg})"
        if self.outer:
            return f"{self.kind}({self.outer}.{self.outer_arg})"
        return str(self.kind)


@dataclass(frozen=True, order=True)
class PatternCell:
    """Realization of DC1 (earlier relation) and DC2 (later relation)."""

    dc1_type: RealizationType
    dc2_type: RealizationType

    def __post_init__(self):
        if self.dc1_type not in ELIGIBLE or self.dc2_type not in ELIGIBLE:
            raise ValueError(f"pattern cells take Explicit/Implicit only, got {self}")

    @property
    def short(self) -> str:
        return f"{self.dc1_type.value[:3]}-{self.dc2_type.value[:3]}"


_E, _I = RealizationType.EXPLICIT, RealizationType.IMPLICIT
#: Column order of the dependency table.
CELLS = (PatternCell(_E, _E), PatternCell(_E, _I), PatternCell(_I, _E), PatternCell(_I, _I))
#: Columns grouped into the sub total (every cell except Imp-Imp).
SUBTOTAL_CELLS = CELLS[:3]


def eligible_relations(d: AnnotatedDocument) -> List[DiscourseRelation]:
    return sorted((r for r in d.relations if r.realization in ELIGIBLE), key=sort_key)


def _consecutive(d: AnnotatedDocument):
    """Yield ``(r1, r2, skipped)`` for every consecutive eligible pair."""
    rels = eligible_relations(d)
    for r1, r2 in zip(rels, rels[1:]):
        yield r1, r2, r1.link is not None and r1.link == r2.link


def adjacent_pairs(d: AnnotatedDocument) -> List[Tuple[DiscourseRelation, DiscourseRelation]]:
    """Consecutive eligible pairs, minus pairs joined by a shared link index."""
    return [(r1, r2) for r1, r2, skipped in _consecutive(d) if not skipped]


def classify_pair(r1: DiscourseRelation, r2: DiscourseRelation) -> DependencyLabel:
    if not sort_key(r1) < sort_key(r2):
        raise ValueError(f"{r1.id} does not precede {r2.id} in textual order")
    args1, args2 = r1.args(), r2.args()

    for name_a, a in zip(ARG_NAMES, args1):
        for name_b, b in zip(ARG_NAMES, args2):
            if a == b:
                return DependencyLabel(DependencyKind.SHARED_ARGUMENT, "first", name_a, name_b)

    ext1, ext2 = extent(r1), extent(r2)
    for kind, holds in (
        (DependencyKind.FULL_EMBEDDING, lambda inner, arg: inner == arg),
        (DependencyKind.PROPER_CONTAINMENT, lambda inner, arg: inner < arg),
    ):
        for outer, args, inner in (("first", args1, ext2), ("second", args2, ext1)):
            for name, arg in zip(ARG_NAMES, args):
                if holds(inner, arg):
                    return DependencyLabel(kind, outer, name)

    if ext1.intersects(ext2):
        return DependencyLabel(DependencyKind.OTHER_OVERLAP)
    return DependencyLabel(DependencyKind.NONE)


@dataclass(frozen=True)
class PairRecord:
    doc_id: str
    r1: str
    r2: str
    cell: PatternCell
    label: Optional[DependencyLabel]  # None when skipped for a shared link


@dataclass
class DependencyTable:
    counts: Dict[Tuple[DependencyKind, PatternCell], int] = field(default_factory=dict)
    other_overlap: int = 0
    none: int = 0
    skipped_link: int = 0
    pairs: List[PairRecord] = field(default_factory=list)

    def __post_init__(self):
        for kind in PATTERNS:
            for cell in CELLS:
                self.counts.setdefault((kind, cell), 0)

    def cell(self, kind: DependencyKind, cell: PatternCell) -> int:
        return self.counts[(kind, cell)]

    def row_total(self, kind: DependencyKind) -> int:
        return sum(self.counts[(kind, c)] for c in CELLS)

    def row_subtotal(self, kind: DependencyKind) -> int:
        return sum(self.counts[(kind, c)] for c in SUBTOTAL_CELLS)

    def column_total(self, cell: PatternCell) -> int:
        return sum(self.counts[(k, cell)] for k in PATTERNS)

    @property
    def grand_total(self) -> int:
        return sum(self.counts.values())

    @property
    def n_pairs(self) -> int:
        """All consecutive eligible pairs, skipped ones included."""
        return self.grand_total + self.other_overlap + self.none + self.skipped_link

    def matrix(self) -> List[List[int]]:
        return [[self.counts[(k, c)] for c in CELLS] for k in PATTERNS]


def dependency_table(c: Corpus) -> DependencyTable:
    table = DependencyTable()
    for d in c.documents:
        for r1, r2, skipped in _consecutive(d):
            cell = PatternCell(r1.realization, r2.realization)
            if skipped:
                table.skipped_link += 1
                table.pairs.append(PairRecord(d.doc_id, r1.id, r2.id, cell, None))
                continue
            label = classify_pair(r1, r2)
            table.pairs.append(PairRecord(d.doc_id, r1.id, r2.id, cell, label))
            if label.kind is DependencyKind.OTHER_OVERLAP:
                table.other_overlap += 1
            elif label.kind is DependencyKind.NONE:
                table.none += 1
            else:
                table.counts[(label.kind, cell)] += 1
    return table
