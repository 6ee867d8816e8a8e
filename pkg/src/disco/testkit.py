"""Synthetic corpora with planted dependency patterns, and brute-force oracles.

The oracles here work on explicit character sets and direct recounts. They
share no code with :mod:`disco.deps` or :mod:`disco.iaa` beyond the data
types, so they can be used to cross-check those modules.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .deps import CELLS, PATTERNS, DependencyKind, DependencyLabel, PatternCell
from .model import AnnotatedDocument, Corpus, DiscourseRelation, RealizationType, SensePath
from .spans import EMPTY, Span

RT = RealizationType

#: Dependency counts reported for TDB 1.2, patterns x (Exp-Exp, Exp-Imp, Imp-Exp, Imp-Imp).
REFERENCE_COUNTS = {
    DependencyKind.SHARED_ARGUMENT: (41, 105, 96, 632),
    DependencyKind.FULL_EMBEDDING: (117, 85, 471, 115),
    DependencyKind.PROPER_CONTAINMENT: (145, 82, 521, 195),
}

_SENSES = [
    SensePath.parse(s)
    for s in (
        "Expansion.Conjunction",
        "Expansion.Level-of-detail.Arg2-as-detail",
        "Temporal.Asynchronous.Precedence",
        "Temporal.Asynchronous.Succession",
        "Temporal.Synchronous",
        "Comparison.Concession.Arg2-as-denier",
        "Comparison.Contrast",
        "Contingency.Cause.Reason",
        "Contingency.Cause.Result",
        "Contingency",
    )
]
_CONNECTIVES = ["ama", "ve", "sonra", "çünkü", "bu yüzden", "böylece"]
_SUFFIXES = ["arak", "erek", "ip", "ince", "ken"]
_LETTERS = "abcçdefgğhıijklmnoöprsştuüvyz"


class InfeasibleSpec(ValueError):
    pass


@dataclass(frozen=True)
class PlantSpec:
    """What to plant: dependency cell counts, filler tokens, linked pairs."""

    cells: Mapping[Tuple[DependencyKind, PatternCell], int] = field(default_factory=dict)
    fillers: Mapping[RealizationType, int] = field(default_factory=dict)
    linked_pairs: int = 0
    n_documents: int = 1
    seed: int = 0

    def validate(self) -> None:
        for key, n in self.cells.items():
            kind, cell = key
            if kind not in PATTERNS or cell not in CELLS:
                raise InfeasibleSpec(f"no such dependency cell {key!r}")
            if not isinstance(n, int) or n < 0:
                raise InfeasibleSpec(f"cell count must be a non-negative int, got {n!r}")
        for t, n in self.fillers.items():
            if t not in RealizationType or not isinstance(n, int) or n < 0:
                raise InfeasibleSpec(f"bad filler entry {t!r}: {n!r}")
        if not isinstance(self.linked_pairs, int) or self.linked_pairs < 0:
            raise InfeasibleSpec(f"linked_pairs must be a non-negative int, got {self.linked_pairs!r}")
        if self.n_documents < 1:
            raise InfeasibleSpec("n_documents must be at least 1")

    def matrix(self) -> List[List[int]]:
        return [[self.cells.get((k, c), 0) for c in CELLS] for k in PATTERNS]

    def to_json(self) -> dict:
        return {
            "cells": {k.value: {c.short: self.cells.get((k, c), 0) for c in CELLS} for k in PATTERNS},
            "fillers": {t.value: self.fillers.get(t, 0) for t in RealizationType},
            "linked_pairs": self.linked_pairs,
            "n_documents": self.n_documents,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, obj: dict, seed: Optional[int] = None) -> "PlantSpec":
        by_short = {c.short: c for c in CELLS}
        cells = {}
        try:
            for kind, row in obj.get("cells", {}).items():
                for short, n in row.items():
                    cells[(DependencyKind(kind), by_short[short])] = n
            fillers = {RealizationType.parse(t): n for t, n in obj.get("fillers", {}).items()}
        except (KeyError, ValueError) as exc:
            raise InfeasibleSpec(f"bad plant spec: {exc}") from exc
        return cls(
            cells=cells,
            fillers=fillers,
            linked_pairs=obj.get("linked_pairs", 0),
            n_documents=obj.get("n_documents", 1),
            seed=obj.get("seed", 0) if seed is None else seed,
        )


def reference_spec(scale: int = 100, seed: int = 0, n_documents: int = 4, **kw) -> PlantSpec:
    """Reference dependency matrix divided by ``scale``, rounded half to even."""
    cells = {}
    for kind, row in REFERENCE_COUNTS.items():
        for cell, n in zip(CELLS, row):
            q = (Decimal(n) / Decimal(scale)).quantize(Decimal(1), rounding=ROUND_HALF_EVEN)
            cells[(kind, cell)] = int(q)
    return PlantSpec(cells=cells, seed=seed, n_documents=n_documents, **kw)


@dataclass(frozen=True)
class GroundTruth:
    """Expected outcome for one consecutive eligible pair."""

    doc_id: str
    r1: str
    r2: str
    kind: str  # a DependencyKind value, or "Skipped"
    label: Optional[DependencyLabel] = None

    def to_json(self) -> dict:
        out = {"doc_id": self.doc_id, "r1": self.r1, "r2": self.r2, "kind": self.kind}
        if self.label is not None and self.label.outer:
            out.update(outer=self.label.outer, outer_arg=self.label.outer_arg)
            if self.label.inner_arg:
                out["inner_arg"] = self.label.inner_arg
        return out


class _DocBuilder:
    """Writes placeholder text left to right and hands back spans."""

    def __init__(self, rng: random.Random, doc_id: str):
        self.rng = rng
        self.doc_id = doc_id
        self.chars: List[str] = []
        self.relations: List[DiscourseRelation] = []
        self.next_link = 1

    @property
    def pos(self) -> int:
        return len(self.chars)

    def write(self, s: str) -> Span:
        start = self.pos
        self.chars.extend(s)
        return Span([(start, self.pos)]) if s else EMPTY

    def word(self) -> str:
        return "".join(self.rng.choice(_LETTERS) for _ in range(self.rng.randint(2, 7)))

    def unit(self) -> Span:
        """A discourse unit of 1-4 words, preceded by a space unless at block start."""
        if self.chars and self.chars[-1] != " ":
            self.write(" ")
        return self.write(" ".join(self.word() for _ in range(self.rng.randint(1, 4))))

    def connective(self, explicit: bool) -> Span:
        if not explicit:
            return EMPTY
        if self.rng.random() < 0.4 and self.chars and self.chars[-1] != " ":
            return self.write(self.rng.choice(_SUFFIXES))  # suffix glued to the previous word
        self.write(" ")
        return self.write(self.rng.choice(_CONNECTIVES))

    def block_break(self) -> None:
        if self.chars:
            self.write(". ")

    def relation(self, rtype: RealizationType, a: Span, b: Span, conn: Span = EMPTY, link=None) -> DiscourseRelation:
        """Relation over units ``a`` (earlier) and ``b``; argument roles are drawn at random."""
        if self.rng.random() < 0.5:
            a, b = b, a
        senses: Tuple[SensePath, ...] = ()
        if rtype.takes_senses:
            senses = tuple(self.rng.sample(_SENSES, self.rng.choice((1, 1, 1, 2))))
        r = DiscourseRelation(
            id=f"r{len(self.relations) + 1:04d}",
            realization=rtype,
            conn_span=conn,
            conn_text=self.rng.choice(_CONNECTIVES) if rtype is RT.IMPLICIT else "",
            arg1_span=a,
            arg2_span=b,
            senses=senses,
            link=link,
        )
        self.relations.append(r)
        return r

    def document(self) -> AnnotatedDocument:
        if self.chars:
            self.write(".\n")
        return AnnotatedDocument(self.doc_id, "".join(self.chars), tuple(self.relations))


def _role(r: DiscourseRelation, span: Span) -> str:
    return "arg1" if r.arg1_span == span else "arg2"


def _plant_pattern(b: _DocBuilder, kind: DependencyKind, cell: PatternCell):
    """Write one two-relation block; return ``(r1, r2, expected label)``."""
    t1, t2 = cell.dc1_type, cell.dc2_type
    e1, e2 = t1 is RT.EXPLICIT, t2 is RT.EXPLICIT
    rng = b.rng

    if kind is DependencyKind.SHARED_ARGUMENT:
        u1 = b.unit()
        c1 = b.connective(e1)
        u2 = b.unit()
        c2 = b.connective(e2)
        u3 = b.unit()
        r1 = b.relation(t1, u1, u2, c1)
        r2 = b.relation(t2, u2, u3, c2)
        return r1, r2, DependencyLabel(kind, "first", _role(r1, u2), _role(r2, u2))

    contained = kind is DependencyKind.PROPER_CONTAINMENT
    if rng.random() < 0.5:
        # the later relation sits inside an argument of the earlier one
        u1 = b.unit()
        c1 = b.connective(e1)
        extra_before = contained and rng.random() < 0.5
        x = b.unit() if extra_before else EMPTY
        u2 = b.unit()
        c2 = b.connective(e2)
        u3 = b.unit()
        if contained and not extra_before:
            x = b.unit()
        # r2 is created first only to compute its extent; ids keep textual order
        inner_ext = u2.union(c2, u3)
        outer_arg = inner_ext.union(x)
        r1 = b.relation(t1, u1, outer_arg, c1)
        r2 = b.relation(t2, u2, u3, c2)
        return r1, r2, DependencyLabel(kind, "first", _role(r1, outer_arg))

    # the earlier relation sits inside an argument of the later one
    u1 = b.unit()
    c1 = b.connective(e1)
    u2 = b.unit()
    x = b.unit() if contained else EMPTY
    c2 = b.connective(e2)
    u3 = b.unit()
    outer_arg = u1.union(c1, u2, x)
    r1 = b.relation(t1, u1, u2, c1)
    r2 = b.relation(t2, outer_arg, u3, c2)
    return r1, r2, DependencyLabel(kind, "second", _role(r2, outer_arg))


def _plant_filler(b: _DocBuilder, rtype: RealizationType) -> DiscourseRelation:
    u1 = b.unit()
    conn = b.connective(True) if rtype.has_connective_span else EMPTY
    u2 = b.unit()
    return b.relation(rtype, u1, u2, conn)


def _plant_linked(b: _DocBuilder):
    """Two Explicit/Implicit tokens over the same argument pair with one link index."""
    types = [b.rng.choice((RT.EXPLICIT, RT.IMPLICIT)) for _ in range(2)]
    u1 = b.unit()
    conns = [b.connective(t is RT.EXPLICIT) for t in types]
    u2 = b.unit()
    link = b.next_link
    b.next_link += 1
    swap = b.rng.random() < 0.5
    a1, a2 = (u2, u1) if swap else (u1, u2)
    rels = []
    for t, c in zip(types, conns):
        r = DiscourseRelation(
            id=f"r{len(b.relations) + 1:04d}",
            realization=t,
            conn_span=c,
            conn_text=b.rng.choice(_CONNECTIVES) if t is RT.IMPLICIT else "",
            arg1_span=a1,
            arg2_span=a2,
            senses=(b.rng.choice(_SENSES),),
            link=link,
        )
        b.relations.append(r)
        rels.append(r)
    return rels


def plant_corpus(spec: PlantSpec) -> Tuple[Corpus, List[GroundTruth]]:
    """Generate a corpus realizing ``spec`` and the label of every consecutive eligible pair."""
    spec.validate()
    rng = random.Random(spec.seed)
    blocks: List[tuple] = []
    for kind in PATTERNS:
        for cell in CELLS:
            blocks += [("pattern", kind, cell)] * spec.cells.get((kind, cell), 0)
    for t in RealizationType:
        blocks += [("filler", t)] * spec.fillers.get(t, 0)
    blocks += [("linked",)] * spec.linked_pairs
    rng.shuffle(blocks)

    n_docs = spec.n_documents
    width = max(3, len(str(n_docs - 1)))
    builders = [_DocBuilder(rng, f"synth_{i:0{width}d}") for i in range(n_docs)]
    # eligible relations per document in textual order, each with the label linking it to its predecessor
    chains: List[List[Tuple[DiscourseRelation, Optional[tuple]]]] = [[] for _ in range(n_docs)]

    for i, block in enumerate(blocks):
        k = i % n_docs
        b, chain = builders[k], chains[k]
        b.block_break()
        if block[0] == "pattern":
            r1, r2, label = _plant_pattern(b, block[1], block[2])
            chain += [(r1, None), (r2, (label.kind.value, label))]
        elif block[0] == "filler":
            r = _plant_filler(b, block[1])
            if r.realization in (RT.EXPLICIT, RT.IMPLICIT):
                chain.append((r, None))
        else:
            r1, r2 = _plant_linked(b)
            chain += [(r1, None), (r2, ("Skipped", None))]

    docs, truth = [], []
    for b, chain in zip(builders, chains):
        doc = b.document()
        docs.append(doc)
        for (prev, _), (cur, within) in zip(chain, chain[1:]):
            kind, label = within or (DependencyKind.NONE.value, DependencyLabel(DependencyKind.NONE))
            truth.append(GroundTruth(doc.doc_id, prev.id, cur.id, kind, label))
    return Corpus(docs), truth


def ground_truth_json(spec: PlantSpec, truth: Sequence[GroundTruth]) -> str:
    counts: Dict[str, int] = {}
    for g in truth:
        counts[g.kind] = counts.get(g.kind, 0) + 1
    obj = {
        "spec": spec.to_json(),
        "matrix": {
            k.value: {c.short: spec.cells.get((k, c), 0) for c in CELLS} for k in PATTERNS
        },
        "buckets": {
            "OtherOverlap": counts.get("OtherOverlap", 0),
            "None": counts.get("None", 0),
            "Skipped": counts.get("Skipped", 0),
        },
        "pairs": [g.to_json() for g in truth],
    }
    return json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=False) + "\n"


# ---------------------------------------------------------------- random documents


def _random_text(rng: random.Random, n: int) -> str:
    alphabet = _LETTERS + _LETTERS.upper() + "     ,."
    return "".join(rng.choice(alphabet) for _ in range(n))


def _random_span(rng: random.Random, n: int, max_pieces: int = 2) -> Span:
    pairs = []
    for _ in range(rng.randint(1, max_pieces)):
        s = rng.randrange(n)
        e = min(n, s + rng.randint(1, max(1, n // 6)))
        pairs.append((s, e))
    return Span(pairs)


def random_document(
    rng: random.Random,
    doc_id: str = "doc",
    max_relations: int = 50,
    max_chars: int = 2000,
    min_chars: int = 20,
    eligible_bias: float = 0.8,
) -> AnnotatedDocument:
    """A valid document whose relations often reuse each other's spans.

    Reuse (exact argument copies, whole extents, extents plus extra material)
    makes shared arguments, embedding and containment frequent, so every
    classification branch gets exercised.
    """
    from .model import extent, validate_relation  # local: keeps the oracle section import-light

    n = rng.randint(min_chars, max_chars)
    text = _random_text(rng, n)
    pool: List[Span] = []
    rels: List[DiscourseRelation] = []
    links = 0
    target = rng.randint(0, max_relations)
    attempts = 0
    while len(rels) < target and attempts < target * 30:
        attempts += 1
        if rng.random() < eligible_bias:
            rtype = rng.choice((RT.EXPLICIT, RT.IMPLICIT))
        else:
            rtype = rng.choice(list(RT))

        def pick() -> Span:
            if pool and rng.random() < 0.5:
                s = rng.choice(pool)
                if rng.random() < 0.3:
                    s = s.union(_random_span(rng, n, 1))
                return s
            return _random_span(rng, n)

        link = None
        if rels and rng.random() < 0.08:
            base = rng.choice(rels)
            arg1, arg2 = base.arg1_span, base.arg2_span
            if base.link is None:
                links += 1
                link = links
                rels[rels.index(base)] = _with(base, link=link)
            else:
                link = base.link
        else:
            arg1, arg2 = pick(), pick()
        conn = EMPTY
        if rtype.has_connective_span:
            s = rng.randrange(n)
            conn = Span([(s, min(n, s + rng.randint(1, 6)))])
        r = DiscourseRelation(
            id=f"t{len(rels):03d}",
            realization=rtype,
            conn_span=conn,
            conn_text=rng.choice(_CONNECTIVES) if rtype is RT.IMPLICIT else rng.choice(("", "", "x\ty", "_")),
            arg1_span=arg1,
            arg2_span=arg2,
            senses=tuple(rng.sample(_SENSES, rng.randint(1, 2))) if rtype.takes_senses else (),
            link=link,
        )
        if validate_relation(r, n):
            continue
        rels.append(r)
        pool += [arg1, arg2, extent(r)]
    return AnnotatedDocument(doc_id, text, tuple(rels))


def _with(r: DiscourseRelation, **changes) -> DiscourseRelation:
    from dataclasses import replace

    return replace(r, **changes)


def random_corpus(rng: random.Random, n_documents: int = 3, **kw) -> Corpus:
    return Corpus(random_document(rng, f"doc{i:03d}", **kw) for i in range(n_documents))


# ---------------------------------------------------------------- oracles


def _chars(span: Span) -> set:
    out = set()
    for iv in span:
        for i in range(iv.start, iv.end):
            out.add(i)
    return out


def oracle_classify(r1: DiscourseRelation, r2: DiscourseRelation) -> DependencyLabel:
    """Classify by enumerating character sets; same precedence as the analyzer."""
    a = {"arg1": _chars(r1.arg1_span), "arg2": _chars(r1.arg2_span)}
    b = {"arg1": _chars(r2.arg1_span), "arg2": _chars(r2.arg2_span)}
    ext1 = a["arg1"] | a["arg2"] | _chars(r1.conn_span)
    ext2 = b["arg1"] | b["arg2"] | _chars(r2.conn_span)
    key1 = (min(ext1), max(ext1) + 1, r1.id)
    key2 = (min(ext2), max(ext2) + 1, r2.id)
    if not key1 < key2:
        raise ValueError(f"{r1.id} does not precede {r2.id}")

    candidates = []
    for name_a in ("arg1", "arg2"):
        for name_b in ("arg1", "arg2"):
            if a[name_a] == b[name_b]:
                candidates.append(DependencyLabel(DependencyKind.SHARED_ARGUMENT, "first", name_a, name_b))
    for name in ("arg1", "arg2"):
        if a[name] == ext2:
            candidates.append(DependencyLabel(DependencyKind.FULL_EMBEDDING, "first", name))
    for name in ("arg1", "arg2"):
        if b[name] == ext1:
            candidates.append(DependencyLabel(DependencyKind.FULL_EMBEDDING, "second", name))
    for name in ("arg1", "arg2"):
        if ext2 < a[name]:
            candidates.append(DependencyLabel(DependencyKind.PROPER_CONTAINMENT, "first", name))
    for name in ("arg1", "arg2"):
        if ext1 < b[name]:
            candidates.append(DependencyLabel(DependencyKind.PROPER_CONTAINMENT, "second", name))
    if candidates:
        return candidates[0]
    if ext1 & ext2:
        return DependencyLabel(DependencyKind.OTHER_OVERLAP)
    return DependencyLabel(DependencyKind.NONE)


def oracle_kappa(coding_a, coding_b) -> float:
    """Cohen's kappa from a direct recount, via the closed 2x2 form."""
    a = [int(x) for x in coding_a]
    b = [int(x) for x in coding_b]
    if len(a) != len(b):
        raise ValueError("coding lengths differ")
    if not a:
        raise ValueError("empty codings")
    cells = {(1, 1): 0, (1, 0): 0, (0, 1): 0, (0, 0): 0}
    for x, y in zip(a, b):
        cells[(x, y)] += 1
    n11, n10, n01, n00 = cells[(1, 1)], cells[(1, 0)], cells[(0, 1)], cells[(0, 0)]
    denom = (n11 + n10) * (n10 + n00) + (n11 + n01) * (n01 + n00)
    if denom == 0:
        # both codings constant and equal
        return 1.0
    return 2 * (n11 * n00 - n10 * n01) / denom
