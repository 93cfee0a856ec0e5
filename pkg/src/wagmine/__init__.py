"""Domain-specific paraphrase mining over word-alignment graphs."""

from .aligner import AlignerConfig, Alignment, AlignmentSet, align_all_pairs, align_pair, token_similarity
from .compat import (
    CompatibleGroup,
    Violation,
    ViolationKind,
    check_group,
    check_injectivity,
    check_monotonicity,
    check_order,
    check_transitivity,
    partition_into_groups,
)
from .corpus import Document, Mask, MaskConfig, Pos, Sentence, Token, load_corpus, mask_special, tokenize
from .errors import (
    CorpusIOError,
    CycleDetected,
    EmptyDb,
    EmptyDocument,
    EmptyInput,
    EmptySentence,
    SentenceNotInGraph,
    WagmineError,
)
from .graph import (
    Node,
    NodeKind,
    WordAlignmentGraph,
    assemble_graph,
    build_line_graph,
    contract_group,
    topological_order,
)
from .mine import (
    CandidateSet,
    MineConfig,
    OptionalPhrase,
    ParaphrasePair,
    PhrasePath,
    detect_optional_phrases,
    enumerate_parallel_paths,
    essential_form,
    filter_candidates,
    generate_sentences,
)
from .pipeline import PipelineResult, run

__version__ = "0.1.0"
