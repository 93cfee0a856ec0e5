import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wagmine.errors import EmptyDb, EmptyInput
from wagmine.evaluation import (
    LabeledPairs,
    ParaphraseDB,
    db_coverage,
    load_labels,
    load_paraphrase_db,
    normalize_phrase,
    pair_key,
    parse_db_line,
    precision_report,
)
from wagmine.mine import ParaphrasePair


def pp(a: str, b: str) -> ParaphrasePair:
    return ParaphrasePair(tuple(a.split()), tuple(b.split()), "test")


def db_of(*pairs) -> ParaphraseDB:
    db = ParaphraseDB(set(), "fixture")
    for a, b in pairs:
        db.add(a, b)
    return db


def test_load_tsv(tmp_path):
    path = tmp_path / "db.tsv"
    path.write_text("log onto\tconnect to\nneed\twant\nbook\treserve\n")
    db = load_paraphrase_db(path)
    assert len(db) == 3
    assert ("want", "need") in db
    assert db.source_name == "db.tsv"


def test_parse_ppdb_line():
    line = "[VP] ||| log onto ||| connect to ||| PPDB2.0Score=3.1 ||| ||| Equivalence"
    assert parse_db_line(line) == ("log onto", "connect to")
    assert parse_db_line("[VP] ||| only one") is None
    assert parse_db_line("") is None
    assert parse_db_line("# comment") is None


def test_load_ppdb_file_counts_skipped(tmp_path):
    path = tmp_path / "ppdb-2.0-s-phrasal"
    path.write_text("[VP] ||| log onto ||| connect to ||| x\nbroken line\n")
    db = load_paraphrase_db(path)
    assert ("connect to", "log onto") in db
    assert db.skipped == 1


def test_malformed_only_db_raises(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("nothing here\nstill nothing\n")
    with pytest.raises(EmptyDb):
        load_paraphrase_db(path)


def test_normalization():
    assert normalize_phrase("  Log   ONTO ") == "log onto"
    assert normalize_phrase(("log", "onto")) == "log onto"
    assert pair_key("B", "a") == ("a", "b")
    assert normalize_phrase("booking rooms", stem=True) == "book room"


@pytest.mark.parametrize(
    "pairs, expected",
    [
        ([pp("see", "view"), pp("book", "reserve")], 0.0),
        ([pp("log onto", "connect to"), pp("book", "reserve")], 0.5),
        ([pp("log onto", "connect to"), pp("want", "need")], 1.0),
    ],
)
def test_coverage_fractions(pairs, expected):
    db = db_of(("log onto", "connect to"), ("need", "want"))
    report = db_coverage(pairs, db)
    assert report.fraction == expected
    assert report.total == 2
    assert report.to_json()["source"] == "fixture"


def test_coverage_empty_input():
    with pytest.raises(EmptyInput):
        db_coverage([], db_of(("a", "b")))


@given(
    st.lists(st.tuples(st.sampled_from("abcd"), st.sampled_from("abcd")), min_size=1, max_size=8),
    st.lists(st.tuples(st.sampled_from("abcd"), st.sampled_from("abcd")), max_size=8),
    st.lists(st.tuples(st.sampled_from("abcd"), st.sampled_from("abcd")), max_size=8),
)
def test_coverage_monotone_in_db(pairs, base, extra):
    mined = [pp(a, b) for a, b in pairs]
    small = db_of(*base)
    big = db_of(*base, *extra)
    assert db_coverage(mined, small).found <= db_coverage(mined, big).found


@given(st.text(alphabet="abAB ", min_size=1).filter(str.strip), st.text(alphabet="cdCD ", min_size=1).filter(str.strip))
def test_coverage_case_and_whitespace_invariant(a, b):
    db = db_of((a.lower(), b.upper()))
    assert db_coverage([pp(f"  {b} ", a)], db).found == 1


def test_precision_arithmetic():
    labels = LabeledPairs()
    labels.add("a", "b", True)
    labels.add("c", "d", False)
    report = precision_report([pp("b", "a"), pp("c", "d"), pp("x", "y")], labels)
    assert (report.extracted, report.valid, report.unjudged) == (2, 1, 1)
    assert report.precision == 0.5
    assert precision_report([pp("x", "y")], labels).precision is None


def test_precision_table_fixture():
    rng = random.Random(7)
    labels = LabeledPairs()
    pairs = []
    verdicts = [True] * 84 + [False] * (173 - 84)
    rng.shuffle(verdicts)
    for k, ok in enumerate(verdicts):
        labels.add(f"p{k}", f"q{k}", ok)
        pairs.append(pp(f"p{k}", f"q{k}"))
    report = precision_report(pairs, labels)
    assert abs(100 * report.precision - 48.55) <= 0.01


def test_load_labels(tmp_path):
    path = tmp_path / "labels.tsv"
    path.write_text("need\twant\t1\nbook\tsee\tno\nbroken\n# note\nx\ty\tmaybe\n")
    labels = load_labels(path)
    assert len(labels) == 2
    assert labels.get("want", "need") is True
    assert labels.get("book", "see") is False
