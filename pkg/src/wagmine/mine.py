"""Paraphrase candidates, optional phrases and sentence generation.

Parallel paths between two shared anchor nodes are alternative ways of
saying the same thing in the same context; they become paraphrase
candidates. A path that is bypassed by a direct edge between its anchors is
an optional phrase: dropping it still leaves a sentence of the graph.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterator, Mapping

from .corpus import Pos, Sentence
from .errors import SentenceNotInGraph
from .graph import NodeKind, WordAlignmentGraph, topological_order

FILTER_MODES = ("verb3", "all")


@lru_cache(maxsize=1)
def default_verbs() -> frozenset[str]:
    text = resources.files("wagmine").joinpath("data/verbs.txt").read_text(encoding="utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip() and not w.startswith("#"))


@dataclass(frozen=True)
class MineConfig:
    max_internal_len: int = 6
    max_phrase_len: int = 3
    filter_mode: str = "verb3"
    # keep pairs anchored at START and END (whole sentences across groups)
    whole_sentence_candidates: bool = False
    verbs: frozenset[str] | None = None

    def __post_init__(self):
        if self.max_internal_len < 1:
            raise ValueError("max_internal_len must be >= 1")
        if self.max_phrase_len < 1:
            raise ValueError("max_phrase_len must be >= 1")
        if self.filter_mode not in FILTER_MODES:
            raise ValueError(f"filter_mode must be one of {FILTER_MODES}")

    @property
    def verb_lexicon(self) -> frozenset[str]:
        return default_verbs() if self.verbs is None else self.verbs


@dataclass(frozen=True)
class PhrasePath:
    anchor_from: int
    anchor_to: int
    internal: tuple[int, ...]
    text: tuple[str, ...]
    support: frozenset[int]

    @property
    def sort_key(self):
        return (self.text, self.internal)


@dataclass(frozen=True)
class CandidateSet:
    anchor_from: int
    anchor_to: int
    paths: tuple[PhrasePath, ...]


@dataclass(frozen=True)
class OptionalPhrase:
    path: PhrasePath
    bypass_support: frozenset[int]

    @property
    def text(self) -> tuple[str, ...]:
        return self.path.text


@dataclass(frozen=True)
class ParaphrasePair:
    phrase_a: tuple[str, ...]
    phrase_b: tuple[str, ...]
    domain: str = ""
    anchors: tuple[int, int] = (0, 0)
    support: tuple[int, ...] = ()
    category: str = "VP"

    def to_json(self) -> dict:
        return {
            "phrase_a": " ".join(self.phrase_a),
            "phrase_b": " ".join(self.phrase_b),
            "domain": self.domain,
            "anchors": list(self.anchors),
            "support": list(self.support),
            "category": self.category,
        }

    @classmethod
    def from_json(cls, d: dict) -> "ParaphrasePair":
        return cls(
            tuple(d["phrase_a"].split()),
            tuple(d["phrase_b"].split()),
            d.get("domain", ""),
            tuple(d.get("anchors", (0, 0))),
            tuple(d.get("support", ())),
            d.get("category", "VP"),
        )

    def to_tsv(self) -> str:
        return f"{' '.join(self.phrase_a)}\t{' '.join(self.phrase_b)}\t{self.domain}"


def paths_from(g: WordAlignmentGraph, u: int, max_internal: int) -> Iterator[PhrasePath]:
    """All sentence-supported paths leaving ``u`` with 1..max_internal inner nodes.

    A path is kept only while at least one sentence traverses every one of
    its edges, i.e. it is a phrase that actually occurs in the input.
    """
    def walk(last, internal, support):
        for v in g.successors(last):
            edge = g.support(last, v)
            sup = edge if support is None else support & edge
            if not sup:
                continue
            if internal:
                yield PhrasePath(u, v, internal, tuple(g.labels(internal)), sup)
            if v != g.end and len(internal) < max_internal:
                yield from walk(v, internal + (v,), sup)

    yield from walk(u, (), None)


def _maximal_disjoint(paths: list[PhrasePath]) -> list[tuple[int, ...]]:
    """Maximal collections of pairwise internally-disjoint paths (Bron-Kerbosch)."""
    node_sets = [frozenset(p.internal) for p in paths]
    n = len(paths)
    compatible = [
        {j for j in range(n) if j != i and not (node_sets[i] & node_sets[j])} for i in range(n)
    ]
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda k: len(compatible[k] & p))
        for v in sorted(p - compatible[pivot]):
            expand(r | {v}, p & compatible[v], x & compatible[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(range(n)), set())
    return out


def enumerate_parallel_paths(g: WordAlignmentGraph, cfg: MineConfig | None = None) -> list[CandidateSet]:
    cfg = cfg or MineConfig()
    order = topological_order(g)
    rank = {n: i for i, n in enumerate(order)}
    result = []
    for u in order:
        if g.out_degree(u) < 2:
            continue
        by_target: dict[int, list[PhrasePath]] = defaultdict(list)
        for p in paths_from(g, u, cfg.max_internal_len):
            by_target[p.anchor_to].append(p)
        for v in sorted(by_target, key=rank.__getitem__):
            paths = sorted(by_target[v], key=lambda p: p.sort_key)
            if len(paths) < 2:
                continue
            sets = []
            for clique in _maximal_disjoint(paths):
                if len(clique) >= 2:
                    sets.append(CandidateSet(u, v, tuple(paths[k] for k in clique)))
            sets.sort(key=lambda c: [p.sort_key for p in c.paths])
            result.extend(sets)
    return result


def _first_is_verb(g: WordAlignmentGraph, node_id: int, sentences: Mapping[int, Sentence], verbs) -> bool:
    node = g.nodes[node_id]
    for sid, pos in sorted(node.occurrences):
        s = sentences.get(sid)
        if s is not None and s.tokens[pos].pos is not Pos.UNKNOWN:
            return s.tokens[pos].pos is Pos.VERB
    return node.label in verbs


def filter_candidates(
    sets: list[CandidateSet],
    g: WordAlignmentGraph,
    sentences: Mapping[int, Sentence],
    cfg: MineConfig | None = None,
    domain: str = "",
) -> list[ParaphrasePair]:
    """Expand candidate sets into unordered phrase pairs and apply the filter.

    In ``verb3`` mode a pair survives when both phrases are at most
    ``max_phrase_len`` tokens and start with a verb. POS tags from tagged
    input take precedence over the verb lexicon. ``all`` mode keeps every pair
    and records whether it would have passed in ``category``.
    """
    cfg = cfg or MineConfig()
    verbs = cfg.verb_lexicon
    kept: dict[tuple, ParaphrasePair] = {}

    def is_vp(p: PhrasePath) -> bool:
        return len(p.internal) <= cfg.max_phrase_len and _first_is_verb(g, p.internal[0], sentences, verbs)

    for cs in sets:
        if (cs.anchor_from, cs.anchor_to) == (g.start, g.end) and not cfg.whole_sentence_candidates:
            continue
        for p, q in itertools.combinations(cs.paths, 2):
            if p.text == q.text:
                continue
            a, b = sorted((p, q), key=lambda x: x.text)
            key = (a.text, b.text)
            if key in kept:
                continue
            vp = is_vp(a) and is_vp(b)
            if not vp and cfg.filter_mode == "verb3":
                continue
            kept[key] = ParaphrasePair(
                a.text,
                b.text,
                domain,
                (cs.anchor_from, cs.anchor_to),
                tuple(sorted(a.support | b.support)),
                "VP" if vp else "other",
            )
    return sorted(kept.values(), key=lambda pp: (" ".join(pp.phrase_a), " ".join(pp.phrase_b)))


def detect_optional_phrases(g: WordAlignmentGraph, cfg: MineConfig | None = None) -> list[OptionalPhrase]:
    cfg = cfg or MineConfig()
    order = topological_order(g)
    rank = {n: i for i, n in enumerate(order)}
    out = []
    for u in order:
        direct = set(g.successors(u))
        if len(direct) < 2:
            continue
        found = [p for p in paths_from(g, u, cfg.max_internal_len) if p.anchor_to in direct]
        found.sort(key=lambda p: (rank[p.anchor_to], p.sort_key))
        out.extend(OptionalPhrase(p, g.support(u, p.anchor_to)) for p in found)
    return out


@dataclass(frozen=True)
class GeneratedSentence:
    tokens: tuple[str, ...]
    novel: bool

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


def generate_sentences(
    g: WordAlignmentGraph, limit: int, sentences: Mapping[int, Sentence] | None = None
) -> list[GeneratedSentence]:
    """Walk START -> END paths depth-first, at most ``limit`` of them.

    A sequence is novel when no input sentence has that normal-form sequence.
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    if sentences is not None:
        known = {s.normals for s in sentences.values()}
    else:
        known = {tuple(g.labels(g.sentence_path(sid))) for sid in g.sentence_ids()}
    out: list[GeneratedSentence] = []
    stack = [(g.start, ())]
    while stack and len(out) < limit:
        node, labels = stack.pop()
        if node == g.end:
            out.append(GeneratedSentence(labels, labels not in known))
            continue
        for v in reversed(g.successors(node)):
            n = g.nodes[v]
            stack.append((v, labels + (n.label,) if n.kind is NodeKind.WORD else labels))
    return out


def essential_form(s: Sentence, optionals: list[OptionalPhrase], g: WordAlignmentGraph) -> tuple[str, ...]:
    """``s`` with its optional phrases removed.

    Spans are taken greedily left to right (longest first at equal start);
    two removed spans may share an anchor but never overlap, so the result is
    still a path of the graph.
    """
    try:
        path = g.sentence_path(s.id)
    except KeyError:
        raise SentenceNotInGraph(f"sentence {s.id} is not in the graph") from None
    index = {nid: k for k, nid in enumerate(path)}
    spans = []
    for opt in optionals:
        p = opt.path
        if s.id not in p.support or not opt.bypass_support:
            continue
        a = index.get(p.anchor_from)
        if a is None or tuple(path[a + 1:a + 1 + len(p.internal)]) != p.internal:
            continue
        spans.append((a, a + len(p.internal) + 1))
    spans.sort(key=lambda sp: (sp[0], -(sp[1] - sp[0])))
    drop: set[int] = set()
    last_end = 0
    for a, b in spans:
        if a >= last_end:
            drop.update(range(a, b - 1))  # path index k+1 is token k
            last_end = b
    return tuple(t.normal for t in s.tokens if t.position not in drop)
