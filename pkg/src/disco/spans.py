"""Character-offset spans.

A :class:`Span` is a set of characters stored as sorted, disjoint,
non-adjacent half-open intervals. Because the stored form is canonical,
tuple equality of two spans is the same thing as equality of the
character sets they cover.

Offsets count Unicode code points (Python ``str`` indices), never bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple


@dataclass(frozen=True, order=True)
class CharInterval:
    """Half-open character interval ``[start, end)``; never empty."""

    start: int
    end: int

    def __post_init__(self):
        if not isinstance(self.start, int) or not isinstance(self.end, int):
            raise TypeError(f"offsets must be int, got {self.start!r}, {self.end!r}")
        if self.start < 0:
            raise ValueError(f"negative offset {self.start}")
        if self.start >= self.end:
            raise ValueError(f"empty or reversed interval [{self.start},{self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    def __str__(self) -> str:
        return f"{self.start}:{self.end}"


def _merge(pairs: Iterable[Tuple[int, int]]) -> Tuple[CharInterval, ...]:
    merged: list[list[int]] = []
    for start, end in sorted(pairs):
        if merged and start <= merged[-1][1]:
            if end > merged[-1][1]:
                merged[-1][1] = end
        else:
            merged.append([start, end])
    return tuple(CharInterval(s, e) for s, e in merged)


class Span:
    """Canonical, possibly discontinuous, possibly empty character span."""

    __slots__ = ("_intervals",)

    def __init__(self, intervals: Iterable = ()):
        pairs = []
        for iv in intervals:
            if isinstance(iv, CharInterval):
                pairs.append((iv.start, iv.end))
            else:
                start, end = iv
                CharInterval(start, end)  # validates
                pairs.append((start, end))
        object.__setattr__(self, "_intervals", _merge(pairs))

    def __setattr__(self, name, value):
        raise AttributeError("Span is immutable")

    @classmethod
    def of(cls, *pairs: Tuple[int, int]) -> "Span":
        """``Span.of((0, 3), (5, 7))``"""
        return cls(pairs)

    @property
    def intervals(self) -> Tuple[CharInterval, ...]:
        return self._intervals

    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((iv.start, iv.end) for iv in self._intervals)

    def __iter__(self) -> Iterator[CharInterval]:
        return iter(self._intervals)

    def __bool__(self) -> bool:
        return bool(self._intervals)

    def __len__(self) -> int:
        """Number of characters covered."""
        return sum(iv.end - iv.start for iv in self._intervals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Span):
            return NotImplemented
        return self._intervals == other._intervals

    def __hash__(self) -> int:
        return hash(self._intervals)

    def __repr__(self) -> str:
        return f"Span({','.join(map(str, self._intervals)) or '_'})"

    @property
    def start(self) -> int:
        if not self._intervals:
            raise ValueError("empty span has no start")
        return self._intervals[0].start

    @property
    def end(self) -> int:
        if not self._intervals:
            raise ValueError("empty span has no end")
        return self._intervals[-1].end

    def charset(self) -> frozenset:
        return frozenset(i for iv in self._intervals for i in range(iv.start, iv.end))

    def union(self, *others: "Span") -> "Span":
        pairs = list(self.pairs())
        for other in others:
            pairs.extend(other.pairs())
        return Span(pairs)

    __or__ = union

    def intersection(self, other: "Span") -> "Span":
        out = []
        a, b = self._intervals, other._intervals
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i].start, b[j].start)
            hi = min(a[i].end, b[j].end)
            if lo < hi:
                out.append((lo, hi))
            if a[i].end < b[j].end:
                i += 1
            else:
                j += 1
        return Span(out)

    __and__ = intersection

    def intersects(self, other: "Span") -> bool:
        a, b = self._intervals, other._intervals
        i = j = 0
        while i < len(a) and j < len(b):
            if a[i].start < b[j].end and b[j].start < a[i].end:
                return True
            if a[i].end < b[j].end:
                i += 1
            else:
                j += 1
        return False

    def issubset(self, other: "Span") -> bool:
        """Every character of ``self`` lies in ``other``."""
        b = other._intervals
        j = 0
        for iv in self._intervals:
            while j < len(b) and b[j].end <= iv.start:
                j += 1
            # canonical form: a covered interval sits inside a single interval of other
            if j == len(b) or b[j].start > iv.start or b[j].end < iv.end:
                return False
        return True

    def __le__(self, other: "Span") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "Span") -> bool:
        return self != other and self.issubset(other)

    def within(self, length: int) -> bool:
        """True if every offset lies in ``[0, length)``."""
        return not self._intervals or self._intervals[-1].end <= length

    def strip(self, text: str) -> "Span":
        """Drop leading and trailing whitespace characters of the span."""
        ivs = [list(p) for p in self.pairs()]
        while ivs:
            s, e = ivs[0]
            while s < e and text[s].isspace():
                s += 1
            if s < e:
                ivs[0][0] = s
                break
            ivs.pop(0)
        while ivs:
            s, e = ivs[-1]
            while e > s and text[e - 1].isspace():
                e -= 1
            if e > s:
                ivs[-1][1] = e
                break
            ivs.pop()
        return Span(ivs)

    def text(self, text: str, sep: str = " ... ") -> str:
        return sep.join(text[iv.start:iv.end] for iv in self._intervals)

    def format(self) -> str:
        """``start:end(,start:end)*`` or ``_`` when empty."""
        return ",".join(map(str, self._intervals)) or "_"


EMPTY = Span()


def charset(s: Span) -> frozenset:
    return s.charset()


def union(*spans: Span) -> Span:
    return EMPTY.union(*spans)
