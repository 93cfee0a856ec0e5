from __future__ import annotations

import time
from dataclasses import dataclass, field

from .aligner import AlignerConfig, AlignmentSet, align_all_pairs
from .compat import CompatibleGroup, partition_into_groups
from .corpus import Document
from .graph import WordAlignmentGraph, assemble_graph, contract_group
from .mine import (
    CandidateSet,
    MineConfig,
    OptionalPhrase,
    ParaphrasePair,
    detect_optional_phrases,
    enumerate_parallel_paths,
    filter_candidates,
)


@dataclass
class PipelineResult:
    doc: Document
    alignments: AlignmentSet
    groups: list[CompatibleGroup]
    graph: WordAlignmentGraph
    candidates: list[CandidateSet]
    pairs: list[ParaphrasePair]
    optionals: list[OptionalPhrase]
    timings: dict[str, float] = field(default_factory=dict)

    def counts(self) -> dict[str, int]:
        n = len(self.doc)
        return {
            "sentences": n,
            "alignments": len(self.alignments),
            "expected_alignments": n * (n - 1) // 2,
            "groups": len(self.groups),
            "nodes": len(self.graph.nodes),
            "edges": len(self.graph.edges),
            "candidate_sets": len(self.candidates),
            "pairs": len(self.pairs),
            "optionals": len(self.optionals),
        }


def build_graph(doc: Document, aligner: AlignerConfig | None = None, strict: bool = False):
    """Align, partition and contract: everything up to the assembled graph."""
    aset = align_all_pairs(doc, aligner)
    groups = partition_into_groups(doc, aset, strict)
    sentences = doc.by_id()
    graph = assemble_graph([contract_group(g, sentences) for g in groups])
    return aset, groups, graph


def run(
    doc: Document,
    aligner: AlignerConfig | None = None,
    miner: MineConfig | None = None,
    strict: bool = False,
) -> PipelineResult:
    miner = miner or MineConfig()
    t0 = time.perf_counter()
    aset, groups, graph = build_graph(doc, aligner, strict)
    t1 = time.perf_counter()
    candidates = enumerate_parallel_paths(graph, miner)
    pairs = filter_candidates(candidates, graph, doc.by_id(), miner, doc.label)
    optionals = detect_optional_phrases(graph, miner)
    t2 = time.perf_counter()
    timings = {"graph": t1 - t0, "mine": t2 - t1, "total": t2 - t0}
    return PipelineResult(doc, aset, groups, graph, candidates, pairs, optionals, timings)
