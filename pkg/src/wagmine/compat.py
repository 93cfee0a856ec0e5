"""Compatibility conditions over pairwise alignments and greedy grouping.

A set of sentences is compatible when contracting all of their aligned tokens
yields a DAG: each alignment is one-to-one (injectivity), preserves word
order (monotonicity), and chains of alignments never send a token to two
different tokens of the same sentence (transitivity).
"""

from __future__ import annotations

import enum
import itertools
from collections import defaultdict, deque
from dataclasses import dataclass

from .aligner import Alignment, AlignmentSet
from .corpus import Document
from .unionfind import UnionFind

TokenRef = tuple[int, int]  # (sentence id, token position)


class ViolationKind(str, enum.Enum):
    INJECTIVITY = "INJECTIVITY"
    MONOTONICITY = "MONOTONICITY"
    TRANSITIVITY = "TRANSITIVITY"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    witnesses: tuple[TokenRef, ...]

    def __post_init__(self):
        if not self.witnesses:
            raise ValueError("a violation needs at least one witness")

    def __str__(self) -> str:
        refs = ", ".join(f"s{sid}:{pos}" for sid, pos in self.witnesses)
        return f"{self.kind.value} [{refs}]"


@dataclass
class CompatibleGroup:
    members: list[int]
    alignments: AlignmentSet

    def __post_init__(self):
        if not self.members:
            raise ValueError("a compatible group has at least one member")


def check_injectivity(a: Alignment) -> list[Violation]:
    out = []
    for side, sid, col in (("left", a.left, 0), ("right", a.right, 1)):
        seen: dict[int, int] = defaultdict(int)
        for pair in a.pairs:
            seen[pair[col]] += 1
        for pos in sorted(p for p, n in seen.items() if n > 1):
            out.append(Violation(ViolationKind.INJECTIVITY, ((sid, pos),)))
    return out


def check_monotonicity(a: Alignment) -> list[Violation]:
    pairs = sorted(a.pairs)
    out = []
    for (i1, j1), (i2, j2) in itertools.combinations(pairs, 2):
        if i1 < i2 and j1 >= j2:
            out.append(
                Violation(
                    ViolationKind.MONOTONICITY,
                    ((a.left, i1), (a.right, j1), (a.left, i2), (a.right, j2)),
                )
            )
    return out


def _is_monotone(a: Alignment) -> bool:
    js = [j for _, j in sorted(a.pairs)]
    return all(x < y for x, y in zip(js, js[1:]))


def _is_injective(a: Alignment) -> bool:
    return len({i for i, _ in a.pairs}) == len(a.pairs) == len({j for _, j in a.pairs})


def _token_union(members, aset: AlignmentSet) -> tuple[UnionFind, dict[TokenRef, list[TokenRef]]]:
    uf = UnionFind()
    adjacency: dict[TokenRef, list[TokenRef]] = defaultdict(list)
    for a, b in itertools.combinations(members, 2):
        for i, j in aset.get(a, b).pairs:
            uf.union((a, i), (b, j))
            adjacency[(a, i)].append((b, j))
            adjacency[(b, j)].append((a, i))
    return uf, adjacency


def _chain(adjacency, src: TokenRef, dst: TokenRef) -> tuple[TokenRef, ...]:
    prev = {src: None}
    queue = deque([src])
    while queue:
        cur = queue.popleft()
        if cur == dst:
            break
        for nxt in sorted(adjacency[cur]):
            if nxt not in prev:
                prev[nxt] = cur
                queue.append(nxt)
    path = []
    node = dst
    while node is not None:
        path.append(node)
        node = prev[node]
    return tuple(reversed(path))


def check_transitivity(members: list[int], aset: AlignmentSet, strict: bool = False) -> list[Violation]:
    """Alignment chains must not contradict the direct alignment.

    For every ordered triple, a chain ``w1 -> w2 -> w3`` is a violation when
    the direct alignment maps ``w1`` elsewhere; with ``strict`` a missing
    direct pair is a violation too. Longer chains that close back on a second
    token of an already visited sentence are reported as well, since they
    would merge two tokens of one sentence into a single node.
    """
    seen: set[frozenset] = set()
    out: list[Violation] = []

    def emit(witnesses):
        key = frozenset(witnesses)
        if key not in seen:
            seen.add(key)
            out.append(Violation(ViolationKind.TRANSITIVITY, tuple(witnesses)))

    for s1, s2, s3 in itertools.permutations(members, 3):
        m12 = aset.get(s1, s2).as_dict()
        m23 = aset.get(s2, s3).as_dict()
        m13 = aset.get(s1, s3).as_dict()
        for w1, w2 in sorted(m12.items()):
            w3 = m23.get(w2)
            if w3 is None:
                continue
            direct = m13.get(w1)
            if direct is None:
                if strict:
                    emit(((s1, w1), (s2, w2), (s3, w3)))
            elif direct != w3:
                emit(((s1, w1), (s2, w2), (s3, w3), (s3, direct)))

    flagged = {w for v in out for w in v.witnesses}
    uf, adjacency = _token_union(members, aset)
    for comp in uf.components():
        if flagged.intersection(comp):
            continue
        by_sentence: dict[int, list[TokenRef]] = defaultdict(list)
        for ref in comp:
            by_sentence[ref[0]].append(ref)
        for refs in by_sentence.values():
            if len(refs) > 1:
                emit(_chain(adjacency, refs[0], refs[1]))
    return out


def _sentence_order_edges(members, uf: UnionFind) -> dict:
    """Successor edges between merged components, following each sentence."""
    per_sentence: dict[int, list[int]] = defaultdict(list)
    for sid, pos in uf:
        per_sentence[sid].append(pos)
    edges: dict = defaultdict(set)
    for sid in members:
        positions = sorted(per_sentence.get(sid, ()))
        for p, q in zip(positions, positions[1:]):
            edges[uf.find((sid, p))].add(uf.find((sid, q)))
    return edges


def _find_cycle(edges: dict) -> list | None:
    indeg: dict = defaultdict(int)
    nodes = set(edges)
    for u, vs in edges.items():
        for v in vs:
            indeg[v] += 1
            nodes.add(v)
    queue = deque(n for n in nodes if indeg[n] == 0)
    done = 0
    while queue:
        u = queue.popleft()
        done += 1
        for v in edges.get(u, ()):
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    if done == len(nodes):
        return None
    # walk backwards inside the residual subgraph until a node repeats
    residual = {n for n in nodes if indeg[n] > 0}
    preds: dict = defaultdict(list)
    for u, vs in edges.items():
        for v in vs:
            if u in residual and v in residual:
                preds[v].append(u)
    node = min(residual)
    order: list = []
    index: dict = {}
    while node not in index:
        index[node] = len(order)
        order.append(node)
        node = min(preds[node])
    return list(reversed(order[index[node]:]))


def check_order(members: list[int], aset: AlignmentSet) -> list[Violation]:
    """Group-level monotonicity: contracted tokens must admit a common order.

    Pairwise monotone alignments can still interlock across three or more
    sentences (a before b in one, b before c in another, c before a in a
    third), which would close a cycle after contraction.
    """
    uf, _ = _token_union(members, aset)
    cycle = _find_cycle(_sentence_order_edges(members, uf))
    if cycle is None:
        return []
    return [Violation(ViolationKind.MONOTONICITY, tuple(cycle))]


def check_group(members: list[int], aset: AlignmentSet, strict: bool = False) -> list[Violation]:
    out: list[Violation] = []
    for a, b in itertools.combinations(members, 2):
        al = aset.get(a, b)
        out += check_injectivity(al)
        out += check_monotonicity(al)
    out += check_transitivity(members, aset, strict)
    if not out:
        out += check_order(members, aset)
    return out


class _GroupState:
    def __init__(self, sid: int):
        self.members = [sid]
        self.uf = UnionFind()

    def try_add(self, sid: int, aset: AlignmentSet, strict: bool) -> UnionFind | None:
        for m in self.members:
            al = aset.get(m, sid)
            if not _is_injective(al) or not _is_monotone(al):
                return None
        uf = self.uf.copy()
        touched = set()
        for m in self.members:
            for i, j in aset.get(m, sid).pairs:
                uf.union((m, i), (sid, j))
                touched.add((sid, j))
        comps: dict = defaultdict(list)
        for ref in uf:
            comps[uf.find(ref)].append(ref)
        for root in {uf.find(t) for t in touched}:
            comp = comps[root]
            sids = [r[0] for r in comp]
            if len(set(sids)) != len(sids):
                return None
            if strict:
                for (a, i), (b, j) in itertools.combinations(comp, 2):
                    if aset.get(a, b).as_dict().get(i) != j:
                        return None
        if _find_cycle(_sentence_order_edges(self.members + [sid], uf)) is not None:
            return None
        return uf


def partition_into_groups(doc: Document, aset: AlignmentSet, strict: bool = False) -> list[CompatibleGroup]:
    """Greedy first-fit partition in document order.

    Each sentence joins the earliest group that stays compatible with it;
    otherwise it opens a new group. Only conditions involving the newcomer are
    re-verified, against a running union of the group's aligned tokens.
    """
    states: list[_GroupState] = []
    for s in doc.sentences:
        for st in states:
            uf = st.try_add(s.id, aset, strict)
            if uf is not None:
                st.members.append(s.id)
                st.uf = uf
                break
        else:
            states.append(_GroupState(s.id))
    return [CompatibleGroup(st.members, aset.restrict(st.members)) for st in states]
