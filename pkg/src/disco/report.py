"""Tabular reports rendered as TSV, Markdown or JSON.

Every format carries the same numbers: integers print exactly, other
numbers print rounded half-to-even to four decimals, missing values print
as ``-`` (``null`` in JSON).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from typing import List, Sequence, Union

Cell = Union[int, float, str, None]
FORMATS = ("tsv", "md", "json")
_PLACES = Decimal("0.0001")


def round4(x: float) -> Decimal:
    return Decimal(x).quantize(_PLACES, rounding=ROUND_HALF_EVEN)


def format_cell(v: Cell) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return str(round4(v))
    return str(v)


def _json_cell(v: Cell):
    if isinstance(v, float):
        return float(round4(v))
    return v


@dataclass
class Section:
    name: str
    title: str
    columns: List[str]
    rows: List[List[Cell]] = field(default_factory=list)

    def add(self, *row: Cell) -> None:
        if len(row) != len(self.columns):
            raise ValueError(f"{self.name}: row has {len(row)} cells, expected {len(self.columns)}")
        self.rows.append(list(row))


def render_tsv(sections: Sequence[Section]) -> str:
    blocks = []
    for s in sections:
        lines = [f"# {s.title}", "\t".join(s.columns)]
        lines += ["\t".join(format_cell(v) for v in row) for row in s.rows]
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def render_md(sections: Sequence[Section]) -> str:
    blocks = []
    for s in sections:
        lines = [f"### {s.title}", "", "| " + " | ".join(s.columns) + " |"]
        lines.append("|" + "|".join("---" if i == 0 else "---:" for i in range(len(s.columns))) + "|")
        lines += ["| " + " | ".join(format_cell(v) for v in row) + " |" for row in s.rows]
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def render_json(sections: Sequence[Section]) -> str:
    obj = {
        s.name: {
            "title": s.title,
            "rows": [{c: _json_cell(v) for c, v in zip(s.columns, row)} for row in s.rows],
        }
        for s in sections
    }
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def render(sections: Sequence[Section], fmt: str) -> str:
    if fmt == "tsv":
        return render_tsv(sections)
    if fmt == "md":
        return render_md(sections)
    if fmt == "json":
        return render_json(sections)
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
