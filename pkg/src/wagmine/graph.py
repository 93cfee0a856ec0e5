"""Word-alignment graph construction.

Every sentence starts as a line graph ``START -> t0 -> ... -> tk -> END``.
Aligned tokens inside a compatible group are contracted into shared nodes
(union-find over ``(sentence id, position)``), and the group graphs are then
hung between one common START and END node.

Graphs are canonical: node ids follow a deterministic topological order, so
two builds from the same input serialize to identical bytes.
"""

from __future__ import annotations

import enum
import heapq
import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .compat import CompatibleGroup
from .corpus import PUNCT_CHARS, Sentence
from .errors import CycleDetected
from .unionfind import UnionFind

SCHEMA = "wag-1"

TokenRef = tuple[int, int]


class NodeKind(str, enum.Enum):
    START = "START"
    END = "END"
    WORD = "WORD"


@dataclass(frozen=True)
class Node:
    id: int
    label: str
    kind: NodeKind = NodeKind.WORD
    occurrences: frozenset[TokenRef] = frozenset()

    @property
    def sort_key(self) -> tuple:
        if self.kind is NodeKind.START:
            return (0,)
        if self.kind is NodeKind.END:
            return (2,)
        first = min(self.occurrences) if self.occurrences else (float("inf"), float("inf"))
        return (1, first, self.id)

    @property
    def is_punct(self) -> bool:
        return self.kind is NodeKind.WORD and all(c in PUNCT_CHARS for c in self.label)


@dataclass
class WordAlignmentGraph:
    nodes: dict[int, Node]
    edges: dict[tuple[int, int], frozenset[int]]
    start: int
    end: int
    _succ: dict[int, list[int]] | None = field(default=None, init=False, repr=False, compare=False)
    _occ: dict[TokenRef, int] | None = field(default=None, init=False, repr=False, compare=False)

    def _index(self) -> None:
        succ: dict[int, list[int]] = {n: [] for n in self.nodes}
        for u, v in self.edges:
            succ[u].append(v)
        for vs in succ.values():
            vs.sort(key=lambda n: self.nodes[n].sort_key)
        self._succ = succ
        self._occ = {ref: n.id for n in self.nodes.values() for ref in n.occurrences}

    def successors(self, u: int) -> list[int]:
        if self._succ is None:
            self._index()
        return self._succ[u]

    def out_degree(self, u: int) -> int:
        return len(self.successors(u))

    def support(self, u: int, v: int) -> frozenset[int]:
        return self.edges.get((u, v), frozenset())

    def node_of(self, sid: int, pos: int) -> int:
        if self._occ is None:
            self._index()
        return self._occ[(sid, pos)]

    @property
    def word_nodes(self) -> list[Node]:
        return [n for n in self.nodes.values() if n.kind is NodeKind.WORD]

    def sentence_ids(self) -> list[int]:
        return sorted({sid for n in self.nodes.values() for sid, _ in n.occurrences})

    def sentence_path(self, sid: int) -> list[int]:
        """Node ids visited by sentence ``sid``, START and END included."""
        refs = sorted(
            (pos, n.id) for n in self.nodes.values() for s, pos in n.occurrences if s == sid
        )
        if not refs:
            raise KeyError(sid)
        return [self.start] + [nid for _, nid in refs] + [self.end]

    def labels(self, path: Iterable[int]) -> list[str]:
        return [self.nodes[n].label for n in path if self.nodes[n].kind is NodeKind.WORD]

    def copy(self) -> "WordAlignmentGraph":
        return WordAlignmentGraph(dict(self.nodes), dict(self.edges), self.start, self.end)


def topological_order(g: WordAlignmentGraph) -> list[int]:
    """Kahn's algorithm; ready nodes are taken by (first occurrence, id).

    START comes first and END last whenever the graph allows it.
    """
    indeg = {n: 0 for n in g.nodes}
    succ: dict[int, list[int]] = defaultdict(list)
    for u, v in g.edges:
        indeg[v] += 1
        succ[u].append(v)
    heap = [(g.nodes[n].sort_key, n) for n, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, u = heapq.heappop(heap)
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, (g.nodes[v].sort_key, v))
    if len(order) != len(g.nodes):
        stuck = sorted(n for n, d in indeg.items() if d > 0)
        raise CycleDetected(f"word-alignment graph has a cycle through nodes {stuck[:10]}")
    return order


def build_from_nodes(words: Iterable[tuple[str, Iterable[TokenRef]]]) -> WordAlignmentGraph:
    """Canonical graph from WORD nodes given as (label, occurrences).

    Edges are implied by the occurrences: each sentence contributes the chain
    of its nodes ordered by position, framed by START and END.
    """
    START, END = -1, -2
    nodes = {
        START: Node(START, "START", NodeKind.START),
        END: Node(END, "END", NodeKind.END),
    }
    per_sentence: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for k, (label, occ) in enumerate(words):
        occ = frozenset(occ)
        if not occ:
            raise ValueError(f"WORD node {label!r} has no occurrences")
        sids = [sid for sid, _ in occ]
        if len(set(sids)) != len(sids):
            raise CycleDetected(f"node {label!r} holds two tokens of one sentence: {sorted(occ)}")
        nodes[k] = Node(k, label, NodeKind.WORD, occ)
        for sid, pos in occ:
            per_sentence[sid].append((pos, k))

    edges: dict[tuple[int, int], set[int]] = defaultdict(set)
    for sid, seq in per_sentence.items():
        path = [START] + [k for _, k in sorted(seq)] + [END]
        for u, v in zip(path, path[1:]):
            edges[(u, v)].add(sid)
    raw = WordAlignmentGraph(nodes, {e: frozenset(s) for e, s in edges.items()}, START, END)

    order = topological_order(raw)
    renum = {old: new for new, old in enumerate(order)}
    new_nodes = {
        renum[n.id]: Node(renum[n.id], n.label, n.kind, n.occurrences) for n in nodes.values()
    }
    new_edges = {(renum[u], renum[v]): s for (u, v), s in sorted(raw.edges.items())}
    new_edges = dict(sorted(new_edges.items()))
    return WordAlignmentGraph(new_nodes, new_edges, renum[START], renum[END])


def build_line_graph(s: Sentence) -> WordAlignmentGraph:
    return build_from_nodes((t.normal, [(s.id, t.position)]) for t in s.tokens)


def _components(group: CompatibleGroup, sentences: Mapping[int, Sentence]) -> tuple[list[list[TokenRef]], int]:
    uf = UnionFind((sid, t.position) for sid in group.members for t in sentences[sid].tokens)
    merges = 0
    for a, b in itertools.combinations(group.members, 2):
        for i, j in group.alignments.get(a, b).pairs:
            merges += uf.union((a, i), (b, j))
    return uf.components(), merges


def contract_group(group: CompatibleGroup, sentences: Mapping[int, Sentence]) -> WordAlignmentGraph:
    """Merge aligned tokens of one compatible group into a single DAG.

    A merged node is labelled with the smallest normal form among its tokens
    (they only differ when a synonym pair was aligned).
    """
    comps, _ = _components(group, sentences)
    words = []
    for comp in comps:
        label = min(sentences[sid].tokens[pos].normal for sid, pos in comp)
        words.append((label, comp))
    return build_from_nodes(words)


def assemble_graph(groups: list[WordAlignmentGraph]) -> WordAlignmentGraph:
    """Disjoint union of group graphs sharing one START and one END."""
    words = []
    seen: set[int] = set()
    for g in groups:
        sids = set(g.sentence_ids())
        if sids & seen:
            raise ValueError(f"sentences {sorted(sids & seen)} appear in more than one group")
        seen |= sids
        words.extend((n.label, n.occurrences) for n in g.word_nodes)
    return build_from_nodes(words)


def strip_punctuation(g: WordAlignmentGraph) -> WordAlignmentGraph:
    """Drop punctuation nodes, reconnecting each sentence around them."""
    return build_from_nodes((n.label, n.occurrences) for n in g.word_nodes if not n.is_punct)


def to_json(g: WordAlignmentGraph, **extra) -> dict:
    order = topological_order(g)
    doc = {"schema": SCHEMA, **extra}
    doc["start"] = g.start
    doc["end"] = g.end
    doc["nodes"] = [
        {
            "id": n.id,
            "label": n.label,
            "kind": n.kind.value,
            "occurrences": [list(r) for r in sorted(n.occurrences)],
        }
        for n in (g.nodes[i] for i in order)
    ]
    doc["edges"] = [
        {"from": u, "to": v, "support": sorted(s)} for (u, v), s in sorted(g.edges.items())
    ]
    return doc


def from_json(doc: dict) -> WordAlignmentGraph:
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported graph schema {doc.get('schema')!r}")
    nodes = {
        d["id"]: Node(d["id"], d["label"], NodeKind(d["kind"]), frozenset(tuple(r) for r in d["occurrences"]))
        for d in doc["nodes"]
    }
    edges = {(e["from"], e["to"]): frozenset(e["support"]) for e in doc["edges"]}
    return WordAlignmentGraph(nodes, edges, doc["start"], doc["end"])


def dumps(g: WordAlignmentGraph, **extra) -> str:
    return json.dumps(to_json(g, **extra), indent=1, ensure_ascii=False) + "\n"


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: WordAlignmentGraph, name: str = "wag") -> str:
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=LR;"]
    for nid in topological_order(g):
        n = g.nodes[nid]
        if n.kind is NodeKind.WORD:
            lines.append(f"  n{nid} [label={_dot_quote(n.label)}];")
        else:
            lines.append(f"  n{nid} [label={_dot_quote(n.kind.value)}, shape=point];")
    for (u, v), support in sorted(g.edges.items()):
        lines.append(f"  n{u} -> n{v} [weight={len(support)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
