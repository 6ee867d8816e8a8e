"""Reader and writer for the ``.txt`` + ``.rel`` standoff format.

A document ``<doc_id>`` is two files. ``<doc_id>.txt`` holds the UTF-8 text
exactly (offsets index its code points, no newline translation).
``<doc_id>.rel`` is tab-separated with one relation per line::

    #ID  TYPE  CONN_SPANS  CONN_TEXT  ARG1_SPANS  ARG2_SPANS  SENSES  LINK

Spans are ``start:end(,start:end)*``, end-exclusive; ``_`` marks an empty
field. SENSES is a ``;``-separated list of dotted sense paths. LINK is a
non-negative integer or ``_``. In CONN_TEXT, backslash escapes ``\\t``,
``\\n``, ``\\r``, ``\\\\`` and a literal ``\\_``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Set, Union

from .model import (
    AnnotatedDocument,
    Corpus,
    DiscourseRelation,
    RealizationType,
    SensePath,
    Violation,
    validate_relation,
)
from .spans import Span

HEADER = "#ID\tTYPE\tCONN_SPANS\tCONN_TEXT\tARG1_SPANS\tARG2_SPANS\tSENSES\tLINK"
N_COLUMNS = 8

_SPAN_RE = re.compile(r"^(\d+):(\d+)$")
_LINK_RE = re.compile(r"^\d+$")


class DiagnosticCode(str, enum.Enum):
    MALFORMED_SPAN = "MalformedSpan"
    OFFSET_OUT_OF_RANGE = "OffsetOutOfRange"
    UNKNOWN_TYPE = "UnknownType"
    BAD_SENSE_PATH = "BadSensePath"
    INVARIANT_VIOLATION = "InvariantViolation"
    DUPLICATE_ID = "DuplicateId"
    BAD_LINK = "BadLink"
    MALFORMED_LINE = "MalformedLine"
    ORPHAN_FILE = "OrphanFile"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ParseDiagnostic:
    file: str
    line: int
    code: DiagnosticCode
    message: str

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.code}: {self.message}"


class ParseError(ValueError):
    """Raised with every diagnostic found, not just the first."""

    def __init__(self, diagnostics: Sequence[ParseDiagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(map(str, self.diagnostics)))


class SenseInventory:
    """Allowed sense paths, one dotted path per line; prefixes are allowed too."""

    def __init__(self, paths: Iterable[str]):
        self._allowed: Set[str] = set()
        for p in paths:
            parts = p.strip().split(".")
            if parts == [""]:
                continue
            for k in range(1, len(parts) + 1):
                self._allowed.add(".".join(parts[:k]))

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "SenseInventory":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        return cls(ln for ln in lines if not ln.startswith("#"))

    def __contains__(self, sense: SensePath) -> bool:
        return str(sense) in self._allowed


def escape_text(s: str) -> str:
    if s == "":
        return "_"
    s = s.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n").replace("\r", "\\r")
    return "\\_" if s == "_" else s


_UNESCAPE = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r", "_": "_"}


def unescape_text(s: str) -> str:
    if s == "_":
        return ""
    out = []
    it = iter(s)
    for ch in it:
        if ch == "\\":
            nxt = next(it, "")
            if nxt not in _UNESCAPE:
                raise ValueError(f"bad escape \\{nxt} in {s!r}")
            out.append(_UNESCAPE[nxt])
        else:
            out.append(ch)
    return "".join(out)


def parse_span(field: str) -> Span:
    if field == "_":
        return Span()
    pairs = []
    for piece in field.split(","):
        m = _SPAN_RE.match(piece)
        if not m:
            raise ValueError(f"malformed interval {piece!r}")
        start, end = int(m.group(1)), int(m.group(2))
        if start >= end:
            raise ValueError(f"empty or reversed interval {piece!r}")
        pairs.append((start, end))
    return Span(pairs)


def format_relation(r: DiscourseRelation) -> str:
    return "\t".join(
        [
            r.id,
            r.realization.value,
            r.conn_span.format(),
            escape_text(r.conn_text),
            r.arg1_span.format(),
            r.arg2_span.format(),
            ";".join(map(str, r.senses)) or "_",
            "_" if r.link is None else str(r.link),
        ]
    )


def serialize_document(d: AnnotatedDocument) -> str:
    return "".join(line + "\n" for line in [HEADER, *map(format_relation, d.relations)])


_FIELD_CODES = {
    Violation.OFFSET_OUT_OF_RANGE: DiagnosticCode.OFFSET_OUT_OF_RANGE,
    Violation.BAD_LINK: DiagnosticCode.BAD_LINK,
}


def parse_document(
    text_content: str,
    rel_content: str,
    doc_id: str,
    *,
    path: Optional[str] = None,
    inventory: Optional[SenseInventory] = None,
) -> AnnotatedDocument:
    """Parse one document, raising :class:`ParseError` listing every defect."""
    fname = path or f"{doc_id}.rel"
    diags: List[ParseDiagnostic] = []
    relations: List[DiscourseRelation] = []
    seen_ids = {}
    text_len = len(text_content)

    for lineno, line in enumerate(rel_content.split("\n"), start=1):
        if line.endswith("\r"):
            line = line[:-1]
        if not line.strip() or line.startswith("#"):
            continue

        def diag(code, msg):
            diags.append(ParseDiagnostic(fname, lineno, code, msg))

        cols = line.split("\t")
        if len(cols) != N_COLUMNS:
            diag(DiagnosticCode.MALFORMED_LINE, f"expected {N_COLUMNS} columns, found {len(cols)}")
            continue
        rid, rtype, conn_f, conn_text_f, arg1_f, arg2_f, senses_f, link_f = cols
        ok = True

        if not rid or rid == "_":
            diag(DiagnosticCode.MALFORMED_LINE, "missing relation id")
            ok = False
        elif rid in seen_ids:
            diag(DiagnosticCode.DUPLICATE_ID, f"id {rid!r} already used on line {seen_ids[rid]}")
            ok = False
        else:
            seen_ids[rid] = lineno

        try:
            realization = RealizationType.parse(rtype)
        except ValueError as exc:
            diag(DiagnosticCode.UNKNOWN_TYPE, str(exc))
            ok = False

        spans = {}
        for name, f in (("CONN_SPANS", conn_f), ("ARG1_SPANS", arg1_f), ("ARG2_SPANS", arg2_f)):
            try:
                spans[name] = parse_span(f)
            except ValueError as exc:
                diag(DiagnosticCode.MALFORMED_SPAN, f"{name}: {exc}")
                ok = False
                continue
            if not spans[name].within(text_len):
                diag(DiagnosticCode.OFFSET_OUT_OF_RANGE, f"{name} {f} exceeds text length {text_len}")
                ok = False

        try:
            conn_text = unescape_text(conn_text_f)
        except ValueError as exc:
            diag(DiagnosticCode.MALFORMED_LINE, f"CONN_TEXT: {exc}")
            ok = False

        senses = []
        if senses_f != "_":
            for dotted in senses_f.split(";"):
                try:
                    sense = SensePath.parse(dotted)
                except ValueError as exc:
                    diag(DiagnosticCode.BAD_SENSE_PATH, str(exc))
                    ok = False
                    continue
                if inventory is not None and sense not in inventory:
                    diag(DiagnosticCode.BAD_SENSE_PATH, f"sense {dotted!r} not in inventory")
                    ok = False
                senses.append(sense)

        link = None
        if link_f != "_":
            if _LINK_RE.match(link_f):
                link = int(link_f)
            else:
                diag(DiagnosticCode.BAD_LINK, f"link must be a non-negative integer or _, got {link_f!r}")
                ok = False

        if not ok:
            continue
        rel = DiscourseRelation(
            id=rid,
            realization=realization,
            conn_span=spans["CONN_SPANS"],
            conn_text=conn_text,
            arg1_span=spans["ARG1_SPANS"],
            arg2_span=spans["ARG2_SPANS"],
            senses=tuple(senses),
            link=link,
        )
        for v in validate_relation(rel, text_len):
            diag(_FIELD_CODES.get(v.code, DiagnosticCode.INVARIANT_VIOLATION), f"{v.code}: {v.message}")
            ok = False
        if ok:
            relations.append(rel)

    if diags:
        raise ParseError(diags)
    return AnnotatedDocument(doc_id, text_content, tuple(relations))


def read_text(path: Path) -> str:
    # no universal-newline translation: offsets must match the bytes on disk
    return path.read_bytes().decode("utf-8")


def load_document(txt_path, rel_path=None, *, inventory=None) -> AnnotatedDocument:
    txt_path = Path(txt_path)
    rel_path = Path(rel_path) if rel_path else txt_path.with_suffix(".rel")
    return parse_document(
        read_text(txt_path), read_text(rel_path), txt_path.stem, path=str(rel_path), inventory=inventory
    )


def load_corpus(directory, *, inventory: Optional[SenseInventory] = None) -> Corpus:
    """Pair every ``<id>.txt`` with ``<id>.rel`` under ``directory``.

    Raises :class:`ParseError` with diagnostics from all documents, and
    ``OSError`` if the directory cannot be read.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise NotADirectoryError(str(directory))
    txts = {p.stem: p for p in directory.glob("*.txt") if p.is_file()}
    rels = {p.stem: p for p in directory.glob("*.rel") if p.is_file()}
    diags: List[ParseDiagnostic] = []
    for stem in sorted(txts.keys() ^ rels.keys()):
        have = txts.get(stem) or rels[stem]
        missing = f"{stem}.rel" if stem in txts else f"{stem}.txt"
        diags.append(ParseDiagnostic(str(have), 1, DiagnosticCode.ORPHAN_FILE, f"no matching {missing}"))

    docs = []
    for stem in sorted(txts.keys() & rels.keys()):
        contents = []
        for p in (txts[stem], rels[stem]):
            try:
                contents.append(read_text(p))
            except UnicodeDecodeError as exc:
                diags.append(ParseDiagnostic(str(p), 1, DiagnosticCode.MALFORMED_LINE, f"not UTF-8: {exc}"))
        if len(contents) != 2:
            continue
        try:
            docs.append(parse_document(*contents, stem, path=str(rels[stem]), inventory=inventory))
        except ParseError as exc:
            diags.extend(exc.diagnostics)
    if diags:
        raise ParseError(diags)
    return Corpus(docs)


def write_document(d: AnnotatedDocument, directory) -> None:
    directory = Path(directory)
    (directory / f"{d.doc_id}.txt").write_bytes(d.text.encode("utf-8"))
    (directory / f"{d.doc_id}.rel").write_bytes(serialize_document(d).encode("utf-8"))


def write_corpus(c: Corpus, directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for d in c.documents:
        write_document(d, directory)
