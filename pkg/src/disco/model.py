"""Domain types for discourse-relation annotations."""

from __future__ import annotations

import enum
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Tuple

from .spans import EMPTY, Span


class RealizationType(str, enum.Enum):
    """How a discourse relation is realized. Member order is report order."""

    IMPLICIT = "Implicit"
    EXPLICIT = "Explicit"
    ALTLEX = "AltLex"
    ENTREL = "EntRel"
    HYPOPHORA = "Hypophora"
    NOREL = "NoRel"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, label: str) -> "RealizationType":
        for member in cls:
            if member.value == label:
                return member
        raise ValueError(f"unknown realization type {label!r}")

    @property
    def has_connective_span(self) -> bool:
        return self in (RealizationType.EXPLICIT, RealizationType.ALTLEX)

    @property
    def takes_senses(self) -> bool:
        return self in SENSED_TYPES


SENSED_TYPES = (RealizationType.EXPLICIT, RealizationType.IMPLICIT, RealizationType.ALTLEX)

#: Level-1 sense classes in report column order.
LEVEL1_CLASSES = ("Expansion", "Temporal", "Comparison", "Contingency")

_LABEL_FORBIDDEN = set(".;\t\n\r ")


@dataclass(frozen=True, order=True)
class SensePath:
    """A sense tag of depth 1 to 3, e.g. ``Temporal.Asynchronous.Precedence``."""

    level1: str
    level2: Optional[str] = None
    level3: Optional[str] = None

    def __post_init__(self):
        if self.level1 not in LEVEL1_CLASSES:
            raise ValueError(f"unknown Level-1 sense {self.level1!r}")
        if self.level3 is not None and self.level2 is None:
            raise ValueError("Level-3 sense without Level-2")
        for label in (self.level2, self.level3):
            if label is not None and (not label or _LABEL_FORBIDDEN & set(label)):
                raise ValueError(f"malformed sense label {label!r}")

    @classmethod
    def parse(cls, dotted: str) -> "SensePath":
        parts = dotted.split(".")
        if not 1 <= len(parts) <= 3:
            raise ValueError(f"sense path {dotted!r} must have 1 to 3 levels")
        if any(p == "" for p in parts):
            raise ValueError(f"sense path {dotted!r} has an empty level")
        return cls(*parts)

    @property
    def depth(self) -> int:
        return 1 + (self.level2 is not None) + (self.level3 is not None)

    def parts(self) -> Tuple[str, ...]:
        return tuple(p for p in (self.level1, self.level2, self.level3) if p is not None)

    def truncate(self, level: int) -> "SensePath":
        return SensePath(*self.parts()[:level])

    def __str__(self) -> str:
        return ".".join(self.parts())


@dataclass(frozen=True)
class DiscourseRelation:
    """One annotation token.

    Construction does not validate; call :func:`validate_relation`.
    """

    id: str
    realization: RealizationType
    arg1_span: Span
    arg2_span: Span
    conn_span: Span = EMPTY
    conn_text: str = ""
    senses: Tuple[SensePath, ...] = ()
    link: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.senses, tuple):
            object.__setattr__(self, "senses", tuple(self.senses))

    def args(self) -> Tuple[Span, Span]:
        return self.arg1_span, self.arg2_span


class Violation(str, enum.Enum):
    EMPTY_ARGUMENT = "EmptyArgument"
    ARGUMENT_OVERLAP = "ArgumentOverlap"
    CONN_ARGUMENT_OVERLAP = "ConnArgumentOverlap"
    CONN_SPAN_REQUIRED = "ConnSpanRequired"
    CONN_SPAN_FORBIDDEN = "ConnSpanForbidden"
    CONN_TEXT_REQUIRED = "ConnTextRequired"
    SENSES_REQUIRED = "SensesRequired"
    SENSES_FORBIDDEN = "SensesForbidden"
    OFFSET_OUT_OF_RANGE = "OffsetOutOfRange"
    BAD_LINK = "BadLink"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RelationViolation:
    code: Violation
    field: str
    message: str


def validate_relation(r: DiscourseRelation, text_len: Optional[int] = None) -> List[RelationViolation]:
    """Check ``r`` against the token invariants; an empty list means valid."""
    out = []

    def add(code, fld, msg):
        out.append(RelationViolation(code, fld, f"{r.id}: {msg}"))

    for fld in ("arg1_span", "arg2_span"):
        if not getattr(r, fld):
            add(Violation.EMPTY_ARGUMENT, fld, f"{fld} is empty")
    if r.arg1_span.intersects(r.arg2_span):
        add(Violation.ARGUMENT_OVERLAP, "arg2_span", "arg1 and arg2 overlap")
    for fld in ("arg1_span", "arg2_span"):
        if r.conn_span.intersects(getattr(r, fld)):
            add(Violation.CONN_ARGUMENT_OVERLAP, "conn_span", f"connective overlaps {fld}")

    rt = r.realization
    if rt.has_connective_span:
        if not r.conn_span:
            add(Violation.CONN_SPAN_REQUIRED, "conn_span", f"{rt} needs a connective span")
    elif r.conn_span:
        add(Violation.CONN_SPAN_FORBIDDEN, "conn_span", f"{rt} must not have a connective span")
    if rt is RealizationType.IMPLICIT and not r.conn_text:
        add(Violation.CONN_TEXT_REQUIRED, "conn_text", "Implicit needs an inserted connective")

    if rt.takes_senses and not r.senses:
        add(Violation.SENSES_REQUIRED, "senses", f"{rt} needs at least one sense")
    elif not rt.takes_senses and r.senses:
        add(Violation.SENSES_FORBIDDEN, "senses", f"{rt} must not carry senses")

    if text_len is not None:
        for fld in ("conn_span", "arg1_span", "arg2_span"):
            if not getattr(r, fld).within(text_len):
                add(Violation.OFFSET_OUT_OF_RANGE, fld, f"{fld} exceeds text length {text_len}")
    if r.link is not None and (not isinstance(r.link, int) or r.link < 0):
        add(Violation.BAD_LINK, "link", f"link must be a non-negative integer, got {r.link!r}")
    return out


def extent(r: DiscourseRelation) -> Span:
    """Union of connective and both argument spans."""
    parts = (r.conn_span, r.arg1_span, r.arg2_span)
    total = r.conn_span.union(r.arg1_span, r.arg2_span)
    if len(total) != sum(len(p) for p in parts):
        raise ValueError(f"{r.id}: connective and argument spans overlap")
    return total


def sort_key(r: DiscourseRelation) -> Tuple[int, int, str]:
    ext = extent(r)
    return ext.start, ext.end, r.id


@dataclass(frozen=True)
class AnnotatedDocument:
    doc_id: str
    text: str
    relations: Tuple[DiscourseRelation, ...] = ()

    def __post_init__(self):
        if not isinstance(self.relations, tuple):
            object.__setattr__(self, "relations", tuple(self.relations))


class Corpus(Mapping):
    """Documents keyed by ``doc_id``, iterated in lexicographic id order."""

    __slots__ = ("_docs", "_index")

    def __init__(self, documents: Iterable[AnnotatedDocument] = ()):
        docs = sorted(documents, key=lambda d: d.doc_id)
        for a, b in zip(docs, docs[1:]):
            if a.doc_id == b.doc_id:
                raise ValueError(f"duplicate doc_id {a.doc_id!r}")
        self._docs = tuple(docs)
        self._index = {d.doc_id: d for d in docs}

    def __getitem__(self, doc_id: str) -> AnnotatedDocument:
        return self._index[doc_id]

    def __iter__(self) -> Iterator[str]:
        return (d.doc_id for d in self._docs)

    def __len__(self) -> int:
        return len(self._docs)

    @property
    def documents(self) -> Tuple[AnnotatedDocument, ...]:
        return self._docs

    def relations(self) -> Iterator[DiscourseRelation]:
        for d in self._docs:
            yield from d.relations

    def __repr__(self) -> str:
        return f"Corpus({len(self)} documents)"
