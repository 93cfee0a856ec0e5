"""Pipeline invariants on random documents."""

import io
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from wagmine import pipeline
from wagmine.corpus import Document, load_corpus, tokenize
from wagmine.mine import generate_sentences

from .conftest import synthetic_corpus
from .graphgen import pipeline_violations, random_alignments, random_document, unsound_optionals

words = st.sampled_from(["a", "b", "c", "the", "book", "room", "two", "Paris", "."])
documents = st.lists(st.lists(words, min_size=1, max_size=8), min_size=1, max_size=6).map(
    lambda rows: Document([tokenize(" ".join(r), k + 1) for k, r in enumerate(rows)], "prop")
)


@settings(max_examples=150, deadline=None)
@given(documents)
def test_pipeline_invariants(doc):
    assert pipeline_violations(doc) == []


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.1, 1.0), st.booleans())
def test_partition_survives_arbitrary_alignments(seed, density, strict):
    rng = random.Random(seed)
    doc = random_document(rng)
    assert pipeline_violations(doc, random_alignments(rng, doc, density), strict) == []


@settings(max_examples=60, deadline=None)
@given(documents)
def test_optionals_sound_on_real_graphs(doc):
    assert unsound_optionals(pipeline.run(doc).graph) == []


@settings(max_examples=60, deadline=None)
@given(documents)
def test_every_input_sentence_is_generated(doc):
    res = pipeline.run(doc)
    out = generate_sentences(res.graph, 10_000, doc.by_id())
    known = {s.tokens for s in out if not s.novel}
    assert known == {s.normals for s in doc}


@settings(max_examples=60, deadline=None)
@given(documents)
def test_pairs_are_unique_and_short(doc):
    res = pipeline.run(doc)
    keys = [frozenset((p.phrase_a, p.phrase_b)) for p in res.pairs]
    assert len(keys) == len(set(keys))
    assert all(1 <= len(p.phrase_a) <= 3 and 1 <= len(p.phrase_b) <= 3 for p in res.pairs)
    assert all(p.phrase_a != p.phrase_b for p in res.pairs)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 12), st.integers(0, 1000))
def test_synthetic_corpora(n, seed):
    doc = load_corpus(io.StringIO(synthetic_corpus(n, seed)), "weather")
    assert pipeline_violations(doc) == []
    assert pipeline.run(doc).counts()["alignments"] == n * (n - 1) // 2
