import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIXTURES
from disco import AnnotatedDocument, RealizationType, Span
from disco.standoff import (
    HEADER,
    DiagnosticCode,
    ParseError,
    SenseInventory,
    escape_text,
    load_corpus,
    parse_document,
    serialize_document,
    unescape_text,
    write_corpus,
)
from disco.testkit import random_corpus, random_document

TEXT41 = "Ahmet uzundur ama kız kardeşi kısa boylu."


def line(*cols):
    return "\t".join(cols) + "\n"


def parse_codes(rel, text=TEXT41, **kw):
    with pytest.raises(ParseError) as info:
        parse_document(text, rel, "d", **kw)
    return [d.code for d in info.value.diagnostics]


def test_parse_explicit_line():
    assert len(TEXT41) == 41
    doc = parse_document(TEXT41, line("r1", "Explicit", "14:17", "ama", "0:13", "18:40", "Comparison.Concession", "_"), "d")
    (r,) = doc.relations
    assert r.realization is RealizationType.EXPLICIT
    assert r.conn_span.text(TEXT41) == "ama"
    assert r.arg1_span.text(TEXT41) == "Ahmet uzundur"
    assert r.arg2_span.text(TEXT41) == "kız kardeşi kısa boylu"
    assert str(r.senses[0]) == "Comparison.Concession"
    assert r.link is None
    # conn_text of an Explicit token is free text; `ama` is kept as written
    assert r.conn_text == "ama"


def test_empty_interval_is_malformed():
    assert parse_codes(line("r1", "EntRel", "_", "_", "5:5", "6:9", "_", "_")) == [DiagnosticCode.MALFORMED_SPAN]


def test_gap_in_sense_path():
    rel = line("r1", "Implicit", "_", "ve", "0:5", "6:9", "Expansion..Precedence", "_")
    assert parse_codes(rel) == [DiagnosticCode.BAD_SENSE_PATH]


@pytest.mark.parametrize(
    "cols, code",
    [
        (("r1", "Explicitt", "14:17", "_", "0:13", "18:40", "Expansion", "_"), DiagnosticCode.UNKNOWN_TYPE),
        (("r1", "EntRel", "_", "_", "0:13", "18:42", "_", "_"), DiagnosticCode.OFFSET_OUT_OF_RANGE),
        (("r1", "EntRel", "_", "_", "0:13", "18:40", "_", "-1"), DiagnosticCode.BAD_LINK),
        (("r1", "EntRel", "_", "_", "0:13", "18:40", "_", "x"), DiagnosticCode.BAD_LINK),
        (("r1", "EntRel", "_", "_", "0:13", "a:b", "_", "_"), DiagnosticCode.MALFORMED_SPAN),
        (("r1", "Implicit", "_", "_", "0:13", "18:40", "Expansion", "_"), DiagnosticCode.INVARIANT_VIOLATION),
        (("r1", "Explicit", "_", "_", "0:13", "18:40", "Expansion", "_"), DiagnosticCode.INVARIANT_VIOLATION),
        (("r1", "EntRel", "_", "_", "0:13", "10:40", "_", "_"), DiagnosticCode.INVARIANT_VIOLATION),
        (("r1", "EntRel", "_", "_", "0:13"), DiagnosticCode.MALFORMED_LINE),
        (("r1", "Implicit", "_", "ve", "0:13", "18:40", "Temporal.Asynchronous.Precedence.Extra", "_"), DiagnosticCode.BAD_SENSE_PATH),
        (("r1", "Implicit", "_", "ve", "0:13", "18:40", "Cause", "_"), DiagnosticCode.BAD_SENSE_PATH),
    ],
)
def test_single_defects(cols, code):
    assert parse_codes(line(*cols)) == [code]


def test_duplicate_id():
    rel = line("r1", "EntRel", "_", "_", "0:5", "6:9", "_", "_") + line("r1", "NoRel", "_", "_", "10:12", "14:20", "_", "_")
    assert parse_codes(rel) == [DiagnosticCode.DUPLICATE_ID]


def test_diagnostics_collect_all():
    rel = (
        HEADER + "\n"
        + line("r1", "EntRel", "_", "_", "5:5", "6:9", "_", "_")
        + line("r2", "Bogus", "_", "_", "0:3", "6:9", "_", "_")
        + line("r3", "EntRel", "_", "_", "0:3", "6:99", "_", "_")
        + line("r4", "Implicit", "_", "ve", "0:3", "6:9", "Foo", "z")
        + line("r5", "EntRel", "_", "_", "0:3", "6:9", "_", "_")
    )
    with pytest.raises(ParseError) as info:
        parse_document(TEXT41, rel, "d")
    got = [(d.line, d.code) for d in info.value.diagnostics]
    assert got == [
        (2, DiagnosticCode.MALFORMED_SPAN),
        (3, DiagnosticCode.UNKNOWN_TYPE),
        (4, DiagnosticCode.OFFSET_OUT_OF_RANGE),
        (5, DiagnosticCode.BAD_SENSE_PATH),
        (5, DiagnosticCode.BAD_LINK),
    ]
    assert all(d.file == "d.rel" for d in info.value.diagnostics)


def test_inventory_tightens_senses():
    inv = SenseInventory(["Temporal.Asynchronous.Precedence", "Expansion.Conjunction"])
    ok = line("r1", "Implicit", "_", "ve", "0:5", "6:9", "Temporal.Asynchronous", "_")
    parse_document(TEXT41, ok, "d", inventory=inv)
    bad = line("r1", "Implicit", "_", "ve", "0:5", "6:9", "Temporal.Synchronous", "_")
    assert parse_codes(bad, inventory=inv) == [DiagnosticCode.BAD_SENSE_PATH]


def test_serialize_empty_document_is_header_only():
    assert serialize_document(AnnotatedDocument("d", "abc")) == HEADER + "\n"


def test_serialize_keeps_token_order(fixture_corpus):
    doc = fixture_corpus["d01_shared"]
    lines = serialize_document(doc).splitlines()
    assert len(lines) == 4
    assert [ln.split("\t")[0] for ln in lines[1:]] == ["r1", "r2", "r3"]


def test_fixture_files_are_canonical(fixture_corpus):
    for doc in fixture_corpus.documents:
        on_disk = (FIXTURES / "corpus" / f"{doc.doc_id}.rel").read_text(encoding="utf-8")
        assert serialize_document(doc) == on_disk
        assert parse_document(doc.text, on_disk, doc.doc_id) == doc


@given(st.text())
def test_conn_text_escaping_round_trips(s):
    enc = escape_text(s)
    assert "\t" not in enc and "\n" not in enc and "\r" not in enc
    assert unescape_text(enc) == s


@pytest.mark.parametrize("seed", range(30))
def test_random_document_round_trip(seed):
    doc = random_document(random.Random(seed), f"doc{seed}")
    rel = serialize_document(doc)
    back = parse_document(doc.text, rel, doc.doc_id)
    assert back == doc
    assert serialize_document(back) == rel


def test_crlf_text_offsets_are_preserved(tmp_path):
    text = "ab\r\ncd"
    (tmp_path / "x.txt").write_bytes(text.encode())
    (tmp_path / "x.rel").write_text(line("r1", "EntRel", "_", "_", "0:2", "4:6", "_", "_"), encoding="utf-8")
    doc = load_corpus(tmp_path)["x"]
    assert doc.text == text and doc.relations[0].arg2_span.text(text) == "cd"


def test_load_corpus_pairs_files(tmp_path):
    c = random_corpus(random.Random(5), 2)
    write_corpus(c, tmp_path)
    loaded = load_corpus(tmp_path)
    assert list(loaded) == list(c) and loaded == c


def test_load_corpus_orphan(tmp_path):
    (tmp_path / "a.txt").write_text("abc", encoding="utf-8")
    with pytest.raises(ParseError) as info:
        load_corpus(tmp_path)
    (d,) = info.value.diagnostics
    assert d.code is DiagnosticCode.ORPHAN_FILE and "a.rel" in d.message


def test_load_corpus_empty_dir(tmp_path):
    assert len(load_corpus(tmp_path)) == 0


def test_load_corpus_missing_dir(tmp_path):
    with pytest.raises(OSError):
        load_corpus(tmp_path / "nope")


def test_load_corpus_reports_all_documents(tmp_path):
    for name in ("a", "b"):
        (tmp_path / f"{name}.txt").write_text("abcdef", encoding="utf-8")
        (tmp_path / f"{name}.rel").write_text(line("r1", "Nope", "_", "_", "0:2", "3:4", "_", "_"), encoding="utf-8")
    (tmp_path / "c.rel").write_text("", encoding="utf-8")
    with pytest.raises(ParseError) as info:
        load_corpus(tmp_path)
    assert [d.code for d in info.value.diagnostics] == [
        DiagnosticCode.ORPHAN_FILE,
        DiagnosticCode.UNKNOWN_TYPE,
        DiagnosticCode.UNKNOWN_TYPE,
    ]


def test_spans_parse_to_canonical_form():
    doc = parse_document(TEXT41, line("r1", "EntRel", "_", "_", "2:4,0:2", "6:9", "_", "_"), "d")
    assert doc.relations[0].arg1_span == Span([(0, 4)])
