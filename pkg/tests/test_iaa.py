import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rel
from disco import AnnotatedDocument, Corpus, RealizationType, Span
from disco.iaa import (
    ArgCategory,
    TextMismatchError,
    argument_span_agreement,
    cohens_kappa,
    match_relations,
    per_document_kappa,
    realization_agreement,
    sense_agreement,
    unitize,
)
from disco.testkit import oracle_kappa, random_corpus

RT = RealizationType
TEXT = "x" * 60


def doc(*rels, text=TEXT, doc_id="d"):
    return AnnotatedDocument(doc_id, text, rels)


def corpus(*rels, text=TEXT):
    return Corpus([doc(*rels, text=text)])


R1 = rel("r1", "Implicit", [(0, 5)], [(6, 10)])
R2 = rel("r2", "Implicit", [(11, 15)], [(16, 20)])
R3 = rel("r3", "Implicit", [(21, 25)], [(26, 30)])


# ---- matching


def test_identical_lists_all_match():
    res = match_relations(doc(R1, R2), doc(R1, R2))
    assert len(res.matched) == 2 and not res.only_a and not res.only_b


def test_extra_token_is_only_a():
    res = match_relations(doc(R1, R2, R3), doc(R1, R2))
    assert [p.token_a.id for p in res.matched] == ["r1", "r2"]
    assert [r.id for r in res.only_a] == ["r3"] and not res.only_b


def test_key_is_ordered():
    swapped = rel("s", "Implicit", [(6, 10)], [(0, 5)])
    res = match_relations(doc(R1), doc(swapped))
    assert not res.matched and len(res.only_a) == len(res.only_b) == 1


def test_type_and_connective_are_not_in_key():
    other = rel("z", "Explicit", [(0, 5)], [(6, 10)], conn=[(5, 6)])
    res = match_relations(doc(R1), doc(other))
    assert len(res.matched) == 1


def test_linked_multiples_pair_in_order():
    a1 = rel("a1", "Explicit", [(0, 5)], [(7, 10)], conn=[(5, 6)], link=1)
    a2 = rel("a2", "Implicit", [(0, 5)], [(7, 10)], link=1)
    b1 = rel("b1", "Implicit", [(0, 5)], [(7, 10)], link=4)
    b2 = rel("b2", "Explicit", [(0, 5)], [(7, 10)], conn=[(6, 7)], link=4)
    res = match_relations(doc(a1, a2), doc(b1, b2))
    assert [(p.token_a.id, p.token_b.id) for p in res.matched] == [("a1", "b1"), ("a2", "b2")]


def test_text_mismatch():
    with pytest.raises(TextMismatchError):
        match_relations(doc(R1), doc(R1, text="y" * 60))
    with pytest.raises(TextMismatchError):
        realization_agreement(Corpus([doc(R1, doc_id="a")]), Corpus([doc(R1, doc_id="b")]))


def test_trim_mode_matches_on_stripped_boundaries():
    text = "abc def ghi"
    a = rel("a", "EntRel", [(0, 3)], [(4, 7)])
    b = rel("b", "EntRel", [(0, 4)], [(3, 7)])  # same words, whitespace moved across the boundary
    assert not match_relations(doc(a, text=text), doc(b, text=text)).matched
    assert match_relations(doc(a, text=text), doc(b, text=text), trim=True).matched


@given(st.integers(0, 2**32))
def test_matching_partitions_tokens(seed):
    rng = random.Random(seed)
    da = random_corpus(rng, 1, max_relations=12, max_chars=120).documents[0]
    keep = [r for r in da.relations if rng.random() < 0.6]
    db = AnnotatedDocument(da.doc_id, da.text, tuple(keep))
    res = match_relations(da, db)
    assert len(res.matched) + len(res.only_a) == len(da.relations)
    assert len(res.matched) + len(res.only_b) == len(db.relations)
    ids_a = [p.token_a.id for p in res.matched] + [r.id for r in res.only_a]
    assert sorted(ids_a) == sorted(r.id for r in da.relations)


# ---- realization agreement


def test_identical_implicit_corpora():
    c = corpus(R1, R2)
    assert realization_agreement(c, c) == {RT.IMPLICIT: 1.0}


def test_realization_ratio_counts_unions():
    # A: 3 Implicit, B: 2 Implicit, 2 common
    r = realization_agreement(corpus(R1, R2, R3), corpus(R1, R2))
    assert r[RT.IMPLICIT] == pytest.approx(2 / 3)
    assert round(r[RT.IMPLICIT], 4) == 0.6667


def test_type_disagreement_counts_against_both_types():
    b = rel("r1", "Explicit", [(0, 5)], [(6, 10)], conn=[(5, 6)])
    r = realization_agreement(corpus(R1), corpus(b))
    assert r == {RT.IMPLICIT: 0.0, RT.EXPLICIT: 0.0}


# ---- sense agreement


def _pair(senses_a, senses_b, t="Implicit"):
    conn = [(5, 6)] if t in ("Explicit", "AltLex") else ()
    a = rel("a", t, [(0, 5)], [(6, 10)], conn=conn, senses=senses_a)
    b = rel("b", t, [(0, 5)], [(6, 10)], conn=conn, senses=senses_b)
    return corpus(a), corpus(b)


def levels(ca, cb, t=RT.IMPLICIT):
    return [sense_agreement(ca, cb, k)[t] for k in (1, 2, 3)]


def test_same_precedence_agrees_everywhere():
    assert levels(*_pair(["Temporal.Asynchronous.Precedence"], ["Temporal.Asynchronous.Precedence"])) == [100, 100, 100]


def test_then_versus_after_differs_at_level_3():
    ca, cb = _pair(["Temporal.Asynchronous.Precedence"], ["Temporal.Asynchronous.Succession"], "Explicit")
    assert levels(ca, cb, RT.EXPLICIT) == [100, 100, 0]


def test_sense_sets_compare_as_sets():
    ca, cb = _pair(["Expansion.Conjunction", "Temporal.Synchronous"], ["Expansion.Conjunction"])
    assert levels(ca, cb) == [0, 0, 0]


def test_mixed_depths_compare_by_truncation():
    ca, cb = _pair(["Contingency"], ["Contingency.Cause.Reason"])
    assert levels(ca, cb) == [100, 0, 0]


def test_sense_agreement_ignores_unsensed_and_type_mismatch():
    e = rel("e", "EntRel", [(0, 5)], [(6, 10)])
    c = corpus(e)
    assert sense_agreement(c, c, 1) == {}
    with pytest.raises(ValueError):
        sense_agreement(c, c, 4)


def _perturb(c, rng):
    docs = []
    for d in c.documents:
        rels = []
        for r in d.relations:
            if r.senses and rng.random() < 0.4:
                from dataclasses import replace
                from disco.testkit import _SENSES

                r = replace(r, senses=tuple(rng.sample(_SENSES, rng.randint(1, 2))))
            rels.append(r)
        docs.append(AnnotatedDocument(d.doc_id, d.text, tuple(rels)))
    return Corpus(docs)


@given(st.integers(0, 2**32))
def test_sense_agreement_is_antitone(seed):
    rng = random.Random(seed)
    a = random_corpus(rng, 2, max_relations=15, max_chars=200)
    b = _perturb(a, rng)
    l1, l2, l3 = (sense_agreement(a, b, k) for k in (1, 2, 3))
    assert l1.keys() == l2.keys() == l3.keys()
    for t in l1:
        assert 100 >= l1[t] >= l2[t] >= l3[t] >= 0


# ---- unitization


def test_unitize_char_examples():
    text = "abcde"
    one = corpus(rel("r", "EntRel", [(0, 2)], [(3, 4)]), text=text)
    assert list(unitize(one, "Arg1")) == [1, 1, 0, 0, 0]
    two = corpus(rel("r", "EntRel", [(0, 2)], [(3, 4)]), rel("s", "EntRel", [(1, 3)], [(4, 5)]), text=text)
    assert list(unitize(two, ArgCategory.ARG1)) == [1, 1, 1, 0, 0]
    assert list(unitize(two, ArgCategory.ARG2)) == [0, 0, 0, 1, 1]


def test_unitize_word_example():
    c = corpus(rel("r", "EntRel", [(0, 1)], [(4, 5)]), text="ab cd")
    assert list(unitize(c, "Arg1", "word")) == [1, 0]
    assert list(unitize(c, "Arg2", "word")) == [0, 1]


def test_unitize_trim_boundaries():
    c = corpus(rel("r", "EntRel", [(1, 4)], [(5, 6)]), text="a bc d")
    assert list(unitize(c, "Arg1")) == [0, 1, 1, 1, 0, 0]
    assert list(unitize(c, "Arg1", trim=True)) == [0, 0, 1, 1, 0, 0]


def test_unitize_concatenates_in_doc_order():
    c = Corpus([
        AnnotatedDocument("b", "xyz", (rel("r", "EntRel", [(2, 3)], [(0, 1)]),)),
        AnnotatedDocument("a", "pq", (rel("r", "EntRel", [(0, 1)], [(1, 2)]),)),
    ])
    assert list(unitize(c, "Arg1")) == [1, 0, 0, 0, 1]


@given(st.integers(0, 2**32))
def test_unitize_lengths_and_word_bound(seed):
    c = random_corpus(random.Random(seed), 2, max_relations=10, max_chars=150)
    chars = unitize(c, "Arg2")
    assert len(chars) == sum(len(d.text) for d in c.documents)
    words = unitize(c, "Arg2", "word")
    # a selected word needs at least one selected character
    assert words.sum() <= chars.sum()


# ---- kappa


def test_kappa_identical():
    k = cohens_kappa([1, 0, 1, 1], [1, 0, 1, 1])
    assert k.kappa == 1.0 and k.p_o == 1.0


def test_kappa_half_overlap_is_zero():
    a = [1 if i < 10 else 0 for i in range(20)]
    b = [1 if 5 <= i < 15 else 0 for i in range(20)]
    k = cohens_kappa(a, b)
    t = k.table
    assert (t.n11, t.n10, t.n01, t.n00, t.N) == (5, 5, 5, 5, 20)
    assert (k.p_o, k.p_e, k.kappa) == (0.5, 0.5, 0.0)


def test_kappa_complement_is_minus_one():
    a = [1 if i < 10 else 0 for i in range(20)]
    b = [1 - x for x in a]
    k = cohens_kappa(a, b)
    assert (k.p_o, k.p_e, k.kappa) == (0.0, 0.5, -1.0)


def test_kappa_degenerate():
    assert cohens_kappa([0, 0, 0], [0, 0, 0]).kappa == 1.0
    assert cohens_kappa([1, 1], [1, 1]).kappa == 1.0


def test_kappa_errors():
    with pytest.raises(ValueError):
        cohens_kappa([1, 0], [1])
    with pytest.raises(ValueError):
        cohens_kappa([], [])
    with pytest.raises(ValueError):
        cohens_kappa([2, 0], [1, 0])


bits = st.lists(st.booleans(), min_size=1, max_size=400)


@given(bits, st.data())
def test_kappa_properties(a, data):
    b = data.draw(st.lists(st.booleans(), min_size=len(a), max_size=len(a)))
    k_ab, k_ba = cohens_kappa(a, b), cohens_kappa(b, a)
    assert k_ab.kappa == k_ba.kappa
    assert -1.0 <= k_ab.kappa <= 1.0
    assert 0.0 <= k_ab.p_o <= 1.0 and 0.0 <= k_ab.p_e <= 1.0
    assert abs(k_ab.kappa - oracle_kappa(a, b)) <= 1e-12
    if a == b:
        assert k_ab.kappa == 1.0
    elif k_ab.p_e < 1.0:
        assert k_ab.kappa < 1.0


def test_kappa_accepts_numpy_bool_and_uint8():
    a = np.array([True, False, True])
    assert cohens_kappa(a, a.astype(np.uint8)).kappa == 1.0


# ---- argument span agreement


def test_argument_agreement_identical():
    c = corpus(R1, R2)
    res = argument_span_agreement(c, c)
    assert res[ArgCategory.ARG1].kappa == 1.0 and res[ArgCategory.ARG2].kappa == 1.0


def test_argument_agreement_one_arg2_differs():
    b = rel("r2", "Implicit", [(11, 15)], [(16, 22)])
    res = argument_span_agreement(corpus(R1, R2), corpus(R1, b))
    assert res[ArgCategory.ARG1].kappa == 1.0
    assert res[ArgCategory.ARG2].kappa < 1.0
    t = res[ArgCategory.ARG2].table
    assert (t.n11, t.n10, t.n01, t.n00) == (8, 0, 2, 50)


def test_per_document_kappa(fixture_corpus, fixture_corpus_b):
    rows = dict(per_document_kappa(fixture_corpus, fixture_corpus_b))
    assert rows["d01_shared"][ArgCategory.ARG1].kappa == 1.0
    assert rows["d04_misc"][ArgCategory.ARG1].kappa == pytest.approx(28674 / 28933, abs=1e-15)
    assert rows["d04_misc"][ArgCategory.ARG2].kappa == pytest.approx(32452 / 33488, abs=1e-15)


def test_fixture_values(fixture_corpus, fixture_corpus_b):
    a, b = fixture_corpus, fixture_corpus_b
    ratios = realization_agreement(a, b)
    assert ratios == {
        RT.IMPLICIT: 4 / 6,
        RT.EXPLICIT: 1.0,
        RT.ALTLEX: 1 / 3,
        RT.ENTREL: 0.5,
        RT.HYPOPHORA: 1.0,
        RT.NOREL: 0.0,
    }
    assert sense_agreement(a, b, 2) == {RT.EXPLICIT: 100.0, RT.IMPLICIT: 75.0, RT.ALTLEX: 100.0}
    assert sense_agreement(a, b, 3)[RT.EXPLICIT] == pytest.approx(500 / 6)
    k = argument_span_agreement(a, b)
    t1, t2 = k[ArgCategory.ARG1].table, k[ArgCategory.ARG2].table
    assert (t1.n11, t1.n10, t1.n01, t1.n00) == (313, 0, 1, 420)
    assert (t2.n11, t2.n10, t2.n01, t2.n00) == (377, 4, 0, 353)
    assert k[ArgCategory.ARG1].kappa == 262920 / 263654
    assert k[ArgCategory.ARG2].kappa == 266162 / 269098
