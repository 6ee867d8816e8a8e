"""Inter-annotator agreement between two annotations of the same texts.

Three measures:

* realization agreement: common relations (exact argument-span match) of a
  type over the unique relations of that type;
* sense agreement at hierarchy level 1, 2 or 3 over common relations;
* Cohen's kappa on argument spans, with every character (or word) of the
  pooled corpus text coded selected/excluded per argument category.
"""

from __future__ import annotations

import enum
import re
from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple

import numpy as np

from . import kernels
from .model import SENSED_TYPES, AnnotatedDocument, Corpus, DiscourseRelation, RealizationType

_WORD_RE = re.compile(r"\S+")


class TextMismatchError(ValueError):
    """The two annotations are not over the same documents and texts."""


class ArgCategory(str, enum.Enum):
    ARG1 = "Arg1"
    ARG2 = "Arg2"

    def __str__(self) -> str:
        return self.value

    @property
    def field(self) -> str:
        return "arg1_span" if self is ArgCategory.ARG1 else "arg2_span"


class Unitization(str, enum.Enum):
    CHAR = "char"
    WORD = "word"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class MatchedPair:
    token_a: DiscourseRelation
    token_b: DiscourseRelation
    doc_id: str


@dataclass(frozen=True)
class MatchResult:
    matched: Tuple[MatchedPair, ...]
    only_a: Tuple[DiscourseRelation, ...]
    only_b: Tuple[DiscourseRelation, ...]


@dataclass(frozen=True)
class ContingencyTable:
    n11: int
    n10: int
    n01: int
    n00: int

    @property
    def N(self) -> int:
        return self.n11 + self.n10 + self.n01 + self.n00


@dataclass(frozen=True)
class KappaResult:
    kappa: float
    p_o: float
    p_e: float
    table: ContingencyTable


def _match_key(r: DiscourseRelation, text: str, trim: bool):
    if trim:
        return r.arg1_span.strip(text), r.arg2_span.strip(text)
    return r.arg1_span, r.arg2_span


def match_relations(doc_a: AnnotatedDocument, doc_b: AnnotatedDocument, trim: bool = False) -> MatchResult:
    """Pair tokens whose (Arg1, Arg2) character sets are identical.

    Realization type and connective span play no part in the key. Tokens
    sharing a key are paired in input order.
    """
    if doc_a.text != doc_b.text:
        raise TextMismatchError(f"text of {doc_a.doc_id!r} differs between annotators")
    pool = defaultdict(deque)
    for r in doc_b.relations:
        pool[_match_key(r, doc_b.text, trim)].append(r)
    matched, only_a = [], []
    used_b = set()
    for r in doc_a.relations:
        candidates = pool.get(_match_key(r, doc_a.text, trim))
        if candidates:
            other = candidates.popleft()
            used_b.add(id(other))
            matched.append(MatchedPair(r, other, doc_a.doc_id))
        else:
            only_a.append(r)
    only_b = [r for r in doc_b.relations if id(r) not in used_b]
    return MatchResult(tuple(matched), tuple(only_a), tuple(only_b))


def paired_documents(corpus_a: Corpus, corpus_b: Corpus) -> Iterator[Tuple[AnnotatedDocument, AnnotatedDocument]]:
    if list(corpus_a) != list(corpus_b):
        missing = sorted(set(corpus_a) ^ set(corpus_b))
        raise TextMismatchError(f"document sets differ: {', '.join(missing)}")
    for doc_id in corpus_a:
        a, b = corpus_a[doc_id], corpus_b[doc_id]
        if a.text != b.text:
            raise TextMismatchError(f"text of {doc_id!r} differs between annotators")
        yield a, b


def match_corpora(corpus_a: Corpus, corpus_b: Corpus, trim: bool = False) -> MatchResult:
    matched, only_a, only_b = [], [], []
    for a, b in paired_documents(corpus_a, corpus_b):
        res = match_relations(a, b, trim)
        matched += res.matched
        only_a += res.only_a
        only_b += res.only_b
    return MatchResult(tuple(matched), tuple(only_a), tuple(only_b))


def realization_agreement(corpus_a: Corpus, corpus_b: Corpus, trim: bool = False) -> Dict[RealizationType, float]:
    res = match_corpora(corpus_a, corpus_b, trim)
    count_a = defaultdict(int)
    count_b = defaultdict(int)
    for r in corpus_a.relations():
        count_a[r.realization] += 1
    for r in corpus_b.relations():
        count_b[r.realization] += 1
    common = defaultdict(int)
    for p in res.matched:
        if p.token_a.realization is p.token_b.realization:
            common[p.token_a.realization] += 1
    out = {}
    for t in RealizationType:
        unique = count_a[t] + count_b[t] - common[t]
        if unique:
            out[t] = common[t] / unique
    return out


def sense_agreement(corpus_a: Corpus, corpus_b: Corpus, level: int, trim: bool = False) -> Dict[RealizationType, float]:
    """Percentage of common same-type relations whose sense sets agree at ``level``."""
    if level not in (1, 2, 3):
        raise ValueError(f"level must be 1, 2 or 3, got {level!r}")
    res = match_corpora(corpus_a, corpus_b, trim)
    total = defaultdict(int)
    agree = defaultdict(int)
    for p in res.matched:
        t = p.token_a.realization
        if t is not p.token_b.realization or t not in SENSED_TYPES:
            continue
        total[t] += 1
        sa = {s.truncate(level) for s in p.token_a.senses}
        sb = {s.truncate(level) for s in p.token_b.senses}
        agree[t] += sa == sb
    return {t: 100.0 * agree[t] / total[t] for t in RealizationType if total[t]}


def _category_intervals(doc: AnnotatedDocument, category: ArgCategory, trim: bool):
    starts, ends = [], []
    for r in doc.relations:
        span = getattr(r, category.field)
        if trim:
            span = span.strip(doc.text)
        for iv in span:
            starts.append(iv.start)
            ends.append(iv.end)
    return np.asarray(starts, dtype=np.int64), np.asarray(ends, dtype=np.int64)


def unitize_document(doc: AnnotatedDocument, category, mode="char", trim: bool = False) -> np.ndarray:
    category, mode = ArgCategory(category), Unitization(mode)
    coded = np.zeros(len(doc.text), dtype=np.uint8)
    kernels.paint(coded, *_category_intervals(doc, category, trim))
    if mode is Unitization.CHAR:
        return coded
    words = [(m.start(), m.end()) for m in _WORD_RE.finditer(doc.text)]
    ws = np.asarray([w[0] for w in words], dtype=np.int64)
    we = np.asarray([w[1] for w in words], dtype=np.int64)
    return kernels.word_hits(coded, ws, we)


def unitize(corpus: Corpus, category, mode="char", trim: bool = False) -> np.ndarray:
    """0/1 coding of every unit of the corpus, documents in doc_id order.

    A character codes 1 if any relation's ``category`` argument covers it.
    In word mode the units are maximal non-whitespace runs, coded 1 if any
    of their characters is selected.
    """
    parts = [unitize_document(d, category, mode, trim) for d in corpus.documents]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint8)


def _as_coding(x) -> np.ndarray:
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise ValueError("coding must be one-dimensional")
    if arr.dtype != np.uint8:
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("coding values must be 0 or 1")
        arr = arr.astype(np.uint8)
    elif arr.size and arr.max() > 1:
        raise ValueError("coding values must be 0 or 1")
    return np.ascontiguousarray(arr)


def kappa_from_table(table: ContingencyTable) -> KappaResult:
    n11, n10, n01, n00, n = table.n11, table.n10, table.n01, table.n00, table.N
    if n == 0:
        raise ValueError("kappa needs at least one unit")
    agree = n11 + n00
    chance = (n11 + n10) * (n11 + n01) + (n01 + n00) * (n10 + n00)
    p_o = agree / n
    p_e = chance / (n * n)
    if chance == n * n:
        kappa = 1.0 if agree == n else 0.0
    else:
        # exact rational arithmetic, rounded once
        kappa = float(Fraction(agree * n - chance, n * n - chance))
    return KappaResult(kappa, p_o, p_e, table)


def cohens_kappa(coding_a, coding_b) -> KappaResult:
    a, b = _as_coding(coding_a), _as_coding(coding_b)
    if len(a) != len(b):
        raise ValueError(f"coding lengths differ: {len(a)} vs {len(b)}")
    if len(a) == 0:
        raise ValueError("kappa needs at least one unit")
    return kappa_from_table(ContingencyTable(*kernels.contingency(a, b)))


def argument_span_agreement(
    corpus_a: Corpus, corpus_b: Corpus, mode="char", trim: bool = False
) -> Dict[ArgCategory, KappaResult]:
    """Pooled kappa per argument category over all documents."""
    list(paired_documents(corpus_a, corpus_b))
    return {
        cat: cohens_kappa(unitize(corpus_a, cat, mode, trim), unitize(corpus_b, cat, mode, trim))
        for cat in ArgCategory
    }


def per_document_kappa(
    corpus_a: Corpus, corpus_b: Corpus, mode="char", trim: bool = False
) -> List[Tuple[str, Dict[ArgCategory, KappaResult]]]:
    """Diagnostic breakdown of :func:`argument_span_agreement`; empty texts are skipped."""
    out = []
    for a, b in paired_documents(corpus_a, corpus_b):
        row = {}
        for cat in ArgCategory:
            ca, cb = unitize_document(a, cat, mode, trim), unitize_document(b, cat, mode, trim)
            if len(ca):
                row[cat] = cohens_kappa(ca, cb)
        if row:
            out.append((a.doc_id, row))
    return out
