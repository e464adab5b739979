import json
from random import Random

import pytest

from corpora import random_fixture_document

from spanaug.corpus import (
    Corpus,
    CorpusParseError,
    CorpusValidationError,
    Document,
    Mention,
    Relation,
    Token,
    parse_corpus,
    serialize_corpus,
    validate_corpus,
    validate_document,
)


def rules(violations):
    return [v.rule for v in violations]


def test_parse_empty_document_list():
    raw = '{"mention_types": [], "relation_types": [], "documents": []}'
    corpus = parse_corpus(raw)
    assert corpus.documents == ()


def test_d1_round_trips(d1_corpus):
    data = serialize_corpus(d1_corpus)
    assert parse_corpus(data) == d1_corpus
    assert serialize_corpus(parse_corpus(data)) == data


def test_serialize_is_deterministic(d1_corpus):
    assert serialize_corpus(d1_corpus) == serialize_corpus(d1_corpus)
    assert serialize_corpus(d1_corpus).endswith(b"\n")


def test_equal_corpora_serialize_identically():
    # independently built corpora that are equal as values
    rng_a, rng_b = Random(11), Random(11)
    docs_a = tuple(random_fixture_document(f"g{i}", rng_a) for i in range(8))
    docs_b = tuple(random_fixture_document(f"g{i}", rng_b) for i in range(8))
    a, b = Corpus(docs_a), Corpus(docs_b)
    assert a == b
    assert serialize_corpus(a) == serialize_corpus(b)


def test_random_corpora_round_trip():
    rng = Random(5)
    for trial in range(25):
        docs = tuple(random_fixture_document(f"r{trial}-{i}", rng) for i in range(3))
        corpus = Corpus(docs)
        assert parse_corpus(serialize_corpus(corpus)) == corpus


def test_span_out_of_range_rejected_at_parse(d1_corpus):
    obj = json.loads(serialize_corpus(d1_corpus))
    obj["documents"][0]["mentions"][0]["end"] = 12
    with pytest.raises(CorpusValidationError) as err:
        parse_corpus(json.dumps(obj))
    assert any(v.rule == "span-out-of-range" for v in err.value.violations)
    assert "M1" in str(err.value)


def test_malformed_json_reports_position():
    with pytest.raises(CorpusParseError) as err:
        parse_corpus('{"mention_types": [,]}')
    assert "line 1" in str(err.value)


def test_missing_field_is_a_parse_error():
    with pytest.raises(CorpusParseError) as err:
        parse_corpus('{"mention_types": [], "relation_types": []}')
    assert "documents" in str(err.value)


def test_wrong_type_is_a_parse_error():
    raw = '{"mention_types": [], "relation_types": [], "documents": [{"id": 3}]}'
    with pytest.raises(CorpusParseError):
        parse_corpus(raw)


def test_validate_document_accepts_fixture(d1):
    assert validate_document(d1) == []


def test_dangling_relation_endpoint(d1):
    bad = Document(
        d1.id, d1.tokens, d1.mentions, (Relation("R1", "Flow", "M2", "M9"),)
    )
    assert rules(validate_document(bad)) == ["dangling-endpoint"]


def test_overlapping_mentions(d1):
    bad = Document(
        d1.id,
        d1.tokens,
        (Mention("A", "Activity", 1, 2), Mention("B", "Activity", 2, 3)),
        (),
    )
    assert "mention-overlap" in rules(validate_document(bad))


def test_empty_and_whitespace_tokens():
    doc = Document("t", (Token("", 0), Token("a b", 0)))
    assert rules(validate_document(doc)) == ["empty-token", "token-whitespace"]


def test_sentence_order_must_not_decrease():
    doc = Document("t", (Token("a", 1), Token("b", 0)))
    assert "sentence-order" in rules(validate_document(doc))


def test_mention_must_stay_inside_one_sentence():
    doc = Document(
        "t",
        (Token("a", 0), Token("b", 1)),
        (Mention("m", "Actor", 0, 1),),
    )
    assert "span-cross-sentence" in rules(validate_document(doc))


def test_self_relation_and_duplicate_ids(d1):
    bad = Document(
        d1.id,
        d1.tokens,
        d1.mentions + (Mention("M1", "Activity", 3, 3),),
        (Relation("R1", "Flow", "M2", "M2"),),
    )
    found = rules(validate_document(bad))
    assert "duplicate-mention-id" in found
    assert "self-relation" in found


def test_validate_is_pure(d1):
    assert validate_document(d1) == validate_document(d1)


def test_corpus_level_checks(d1):
    other = Document("D1", d1.tokens)  # duplicate id
    corpus = Corpus((d1, other), mention_types=("Actor",), relation_types=())
    found = rules(validate_corpus(corpus))
    assert "duplicate-document-id" in found
    assert "unknown-mention-type" in found
    assert "unknown-relation-type" in found
