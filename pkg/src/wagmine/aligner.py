"""Pairwise monotone word alignment.

A deterministic greedy matcher stands in for a full monolingual aligner:
every token pair gets a weighted similarity (exact/synonym match, embedding
cosine, shared context), and pairs are accepted best-first as long as the
alignment stays one-to-one and, by default, order preserving.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping

import numpy as np

from .corpus import Document, Mask, Sentence, Token, read_text

CONTEXT_RADIUS = 2


@dataclass(frozen=True)
class AlignerConfig:
    threshold: float = 0.60
    w_exact: float = 0.55
    w_embedding: float = 0.30
    w_context: float = 0.15
    embeddings: Mapping[str, np.ndarray] | None = field(default=None, compare=False, repr=False)
    synonyms: frozenset[frozenset[str]] = frozenset()
    enforce_monotone: bool = True

    def __post_init__(self):
        weights = (self.w_exact, self.w_embedding, self.w_context)
        if any(w < 0 for w in weights):
            raise ValueError("aligner weights must be nonnegative")
        if abs(sum(weights) - 1.0) > 1e-9:
            raise ValueError(f"aligner weights must sum to 1, got {sum(weights)}")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError("threshold must lie in [0, 1]")


@dataclass(frozen=True)
class Alignment:
    left: int
    right: int
    pairs: tuple[tuple[int, int], ...]
    scores: Mapping[tuple[int, int], float] = field(default_factory=dict, compare=False)

    def swapped(self) -> "Alignment":
        pairs = tuple(sorted((j, i) for i, j in self.pairs))
        scores = {(j, i): v for (i, j), v in self.scores.items()}
        return Alignment(self.right, self.left, pairs, scores)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


class AlignmentSet:
    """Alignments keyed by unordered sentence-id pair.

    ``get(a, b)`` always returns an alignment oriented with ``a`` on the left.
    """

    def __init__(self, alignments: Mapping[tuple[int, int], Alignment] | None = None):
        self._by_pair: dict[tuple[int, int], Alignment] = {}
        for a in (alignments or {}).values():
            self.add(a)

    def add(self, alignment: Alignment) -> None:
        if alignment.left > alignment.right:
            alignment = alignment.swapped()
        self._by_pair[(alignment.left, alignment.right)] = alignment

    def get(self, a: int, b: int) -> Alignment:
        if a <= b:
            return self._by_pair[(a, b)]
        return self._by_pair[(b, a)].swapped()

    def __contains__(self, key) -> bool:
        a, b = key
        return (min(a, b), max(a, b)) in self._by_pair

    def __len__(self) -> int:
        return len(self._by_pair)

    def __iter__(self) -> Iterator[Alignment]:
        return iter(self._by_pair[k] for k in sorted(self._by_pair))

    def restrict(self, ids) -> "AlignmentSet":
        keep = set(ids)
        return AlignmentSet({k: v for k, v in self._by_pair.items() if k[0] in keep and k[1] in keep})


def _context(s: Sentence, position: int) -> frozenset[str]:
    lo = max(0, position - CONTEXT_RADIUS)
    hi = position + CONTEXT_RADIUS + 1
    return frozenset(t.normal for t in s.tokens[lo:position] + s.tokens[position + 1:hi])


def _jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)


def _cosine(u: np.ndarray, v: np.ndarray) -> float:
    nu, nv = float(np.linalg.norm(u)), float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v)) / (nu * nv)


def _score(a: Token, ctx_a: frozenset[str], b: Token, ctx_b: frozenset[str], cfg: AlignerConfig) -> float:
    if {a.mask, b.mask} == {Mask.NUM, Mask.ORG}:
        return 0.0
    exact = 1.0 if a.normal == b.normal or frozenset((a.normal, b.normal)) in cfg.synonyms else 0.0
    emb = exact
    if cfg.embeddings is not None:
        va, vb = cfg.embeddings.get(a.normal), cfg.embeddings.get(b.normal)
        if va is not None and vb is not None:
            emb = max(0.0, _cosine(va, vb))
    score = cfg.w_exact * exact + cfg.w_embedding * emb + cfg.w_context * _jaccard(ctx_a, ctx_b)
    return min(1.0, score)


def token_similarity(a: Token, ctx_a: Sentence, b: Token, ctx_b: Sentence, cfg: AlignerConfig) -> float:
    """Similarity in [0, 1] of token ``a`` (inside ``ctx_a``) and ``b`` (inside ``ctx_b``).

    The context term is the Jaccard overlap of the normal forms within two
    tokens on either side, the token itself excluded.
    """
    return _score(a, _context(ctx_a, a.position), b, _context(ctx_b, b.position), cfg)


def _crosses(i: int, j: int, accepted: list[tuple[int, int]]) -> bool:
    return any((i < i2) != (j < j2) for i2, j2 in accepted)


def align_pair(s1: Sentence, s2: Sentence, cfg: AlignerConfig | None = None) -> Alignment:
    cfg = cfg or AlignerConfig()
    n1, n2 = len(s1), len(s2)
    ctx1 = [_context(s1, i) for i in range(n1)]
    ctx2 = [_context(s2, j) for j in range(n2)]
    scored = []
    for i, a in enumerate(s1.tokens):
        for j, b in enumerate(s2.tokens):
            score = _score(a, ctx1[i], b, ctx2[j], cfg)
            if score >= cfg.threshold:
                scored.append((-score, abs(i / n1 - j / n2), i, j))
    scored.sort()

    used_i: set[int] = set()
    used_j: set[int] = set()
    accepted: list[tuple[int, int]] = []
    scores: dict[tuple[int, int], float] = {}
    for neg, _, i, j in scored:
        if i in used_i or j in used_j:
            continue
        if cfg.enforce_monotone and _crosses(i, j, accepted):
            continue
        used_i.add(i)
        used_j.add(j)
        accepted.append((i, j))
        scores[(i, j)] = -neg
    return Alignment(s1.id, s2.id, tuple(sorted(accepted)), scores)


def align_all_pairs(doc: Document, cfg: AlignerConfig | None = None) -> AlignmentSet:
    cfg = cfg or AlignerConfig()
    aset = AlignmentSet()
    for s1, s2 in itertools.combinations(doc.sentences, 2):
        aset.add(align_pair(s1, s2, cfg))
    return aset


def load_embeddings(path: str | Path) -> dict[str, np.ndarray]:
    """Read GloVe-style text vectors: ``word v1 v2 ... vd`` per line."""
    vectors: dict[str, np.ndarray] = {}
    dim = None
    for line in read_text(path).splitlines():
        parts = line.rstrip().split(" ")
        if len(parts) < 2:
            continue
        try:
            vec = np.asarray([float(x) for x in parts[1:]], dtype=np.float64)
        except ValueError:
            continue
        if dim is None:
            dim = len(vec)
        if len(vec) != dim or not all(math.isfinite(x) for x in vec):
            continue
        vectors[parts[0].lower()] = vec
    return vectors


def load_synonyms(path: str | Path) -> frozenset[frozenset[str]]:
    pairs = set()
    for line in read_text(path).splitlines():
        cols = line.strip().split("\t")
        if len(cols) >= 2 and cols[0] and cols[1] and not cols[0].startswith("#"):
            pairs.add(frozenset((cols[0].strip().lower(), cols[1].strip().lower())))
    return frozenset(pairs)
