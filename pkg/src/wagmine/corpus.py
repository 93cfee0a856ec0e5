"""Sentence ingestion: tokenization, NUM/ORG masking and corpus loading.

Numbers and named entities are replaced by the symbols ``NUM`` and ``ORG``
before alignment so that sentences differing only in a quantity or a proper
name still line up token for token.
"""

from __future__ import annotations

import enum
import io
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, TextIO

from .errors import CorpusIOError, EmptyDocument, EmptySentence

PUNCT_CHARS = ".,?!;:'\"()"


class Mask(str, enum.Enum):
    NONE = "NONE"
    NUM = "NUM"
    ORG = "ORG"


class Pos(str, enum.Enum):
    VERB = "VERB"
    NOUN = "NOUN"
    ADP = "ADP"
    DET = "DET"
    OTHER = "OTHER"
    UNKNOWN = "UNKNOWN"


# Universal-dependencies tags folded onto the coarse set above, so that the
# output of an external tagger can be pasted into a .tagged file unchanged.
_UD_POS = {
    "AUX": Pos.VERB,
    "PROPN": Pos.NOUN,
    "PRON": Pos.OTHER,
    "ADJ": Pos.OTHER,
    "ADV": Pos.OTHER,
    "NUM": Pos.OTHER,
    "PUNCT": Pos.OTHER,
    "CCONJ": Pos.OTHER,
    "SCONJ": Pos.OTHER,
    "PART": Pos.OTHER,
    "INTJ": Pos.OTHER,
    "SYM": Pos.OTHER,
    "X": Pos.OTHER,
    "_": Pos.UNKNOWN,
    "": Pos.UNKNOWN,
}


def parse_pos(tag: str) -> Pos:
    tag = tag.strip().upper()
    try:
        return Pos(tag)
    except ValueError:
        return _UD_POS.get(tag, Pos.OTHER)


@dataclass(frozen=True)
class Token:
    surface: str
    normal: str
    position: int
    mask: Mask = Mask.NONE
    pos: Pos = Pos.UNKNOWN
    # True when no whitespace separated this token from the previous one
    glued: bool = False

    def __post_init__(self):
        if not self.normal:
            raise ValueError("token normal form must be non-empty")
        if self.mask is not Mask.NONE and self.normal != self.mask.value:
            raise ValueError(f"masked token must have normal {self.mask.value!r}")

    @property
    def is_punct(self) -> bool:
        return all(c in PUNCT_CHARS for c in self.surface)


@dataclass(frozen=True)
class Sentence:
    id: int
    tokens: tuple[Token, ...]
    raw: str = ""

    def __post_init__(self):
        for i, tok in enumerate(self.tokens):
            if tok.position != i:
                raise ValueError(f"token {tok.surface!r} has position {tok.position}, expected {i}")

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def normals(self) -> tuple[str, ...]:
        return tuple(t.normal for t in self.tokens)

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(t.surface for t in self.tokens)


@dataclass
class Document:
    sentences: list[Sentence]
    label: str = ""

    def __post_init__(self):
        ids = [s.id for s in self.sentences]
        if len(set(ids)) != len(ids):
            raise ValueError("sentence ids must be unique within a document")

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def by_id(self) -> dict[int, Sentence]:
        return {s.id: s for s in self.sentences}


def _split_word(word: str) -> list[str]:
    lead, trail = [], []
    while word and word[0] in PUNCT_CHARS:
        lead.append(word[0])
        word = word[1:]
    while word and word[-1] in PUNCT_CHARS:
        trail.append(word[-1])
        word = word[:-1]
    return lead + ([word] if word else []) + trail[::-1]


def tokenize(raw: str, sentence_id: int = 0) -> Sentence:
    """Split on whitespace, then peel leading/trailing punctuation off each word.

    >>> [t.surface for t in tokenize("Is it (really) over?").tokens]
    ['Is', 'it', '(', 'really', ')', 'over', '?']
    """
    if not raw or not raw.strip():
        raise EmptySentence("empty sentence")
    tokens: list[Token] = []
    for word in raw.split():
        for k, piece in enumerate(_split_word(word)):
            tokens.append(Token(piece, piece.lower(), len(tokens), glued=k > 0))
    return Sentence(sentence_id, tuple(tokens), raw)


def detokenize(sentence: Sentence) -> str:
    """Inverse of :func:`tokenize` up to whitespace normalization."""
    out = []
    for tok in sentence.tokens:
        if out and not tok.glued:
            out.append(" ")
        out.append(tok.surface)
    return "".join(out)


NUMBER_WORDS = frozenset(
    """zero one two three four five six seven eight nine ten eleven twelve
    thirteen fourteen fifteen sixteen seventeen eighteen nineteen twenty thirty
    forty fifty sixty seventy eighty ninety hundred thousand million billion
    dozen first second third fourth fifth sixth seventh eighth ninth tenth
    eleventh twelfth thirteenth fourteenth fifteenth sixteenth seventeenth
    eighteenth nineteenth twentieth thirtieth""".split()
)

_DIGITS = re.compile(r"^[+-]?\d+(?:[.,:/]\d+)*$")
_ORDINAL = re.compile(r"^\d+(?:st|nd|rd|th)$", re.IGNORECASE)
_HYPHEN_NUMBER = re.compile(r"^[a-z]+-[a-z]+$")


@dataclass(frozen=True)
class MaskConfig:
    """Rules used by :func:`mask_special`.

    ``gazetteer`` holds entity surface forms (possibly multi-word); matching
    is case-insensitive and every token of a hit is masked individually.
    """

    number_words: frozenset[str] = NUMBER_WORDS
    gazetteer: frozenset[tuple[str, ...]] = frozenset()
    capitalized_entities: bool = True
    not_entities: frozenset[str] = frozenset({"I", "I'm", "I'd", "I'll", "I've", "OK"})

    @classmethod
    def with_gazetteer(cls, entries: Iterable[str], **kw) -> "MaskConfig":
        gaz = frozenset(tuple(e.lower().split()) for e in entries if e.strip())
        return cls(gazetteer=gaz, **kw)


def is_number(surface: str, number_words: frozenset[str] = NUMBER_WORDS) -> bool:
    low = surface.lower()
    if _DIGITS.match(surface) or _ORDINAL.match(surface) or low in number_words:
        return True
    # twenty-one, forty-second
    if _HYPHEN_NUMBER.match(low):
        return all(part in number_words for part in low.split("-"))
    return False


def _gazetteer_hits(tokens: tuple[Token, ...], gazetteer) -> set[int]:
    hits: set[int] = set()
    if not gazetteer:
        return hits
    lowered = [t.surface.lower() for t in tokens]
    lengths = sorted({len(e) for e in gazetteer}, reverse=True)
    for start in range(len(tokens)):
        for n in lengths:
            if tuple(lowered[start:start + n]) in gazetteer:
                hits.update(range(start, start + n))
                break
    return hits


def mask_special(s: Sentence, rules: MaskConfig | None = None) -> Sentence:
    """Replace numbers by ``NUM`` and entities by ``ORG`` in the normal forms.

    Tokens that already carry a mask are left alone, which makes the
    operation idempotent. The sentence-initial token is never masked by the
    capitalization rule, only by an explicit gazetteer hit.
    """
    rules = rules or MaskConfig()
    gaz = _gazetteer_hits(s.tokens, rules.gazetteer)
    out = []
    for tok in s.tokens:
        mask = tok.mask
        if mask is Mask.NONE and not tok.is_punct:
            if is_number(tok.surface, rules.number_words):
                mask = Mask.NUM
            elif tok.position in gaz:
                mask = Mask.ORG
            elif (
                rules.capitalized_entities
                and tok.position > 0
                and tok.surface[:1].isupper()
                and tok.surface not in rules.not_entities
            ):
                mask = Mask.ORG
        if mask is not tok.mask:
            tok = replace(tok, mask=mask, normal=mask.value)
        out.append(tok)
    return replace(s, tokens=tuple(out))


def read_text(source) -> str:
    if isinstance(source, (str, Path)):
        try:
            return Path(source).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise CorpusIOError(f"cannot read {source}: {exc}") from exc
    try:
        return source.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise CorpusIOError(f"cannot read corpus stream: {exc}") from exc


def load_corpus(source: TextIO | str | Path, label: str = "", rules: MaskConfig | None = None) -> Document:
    """Read one sentence per line; ``#`` lines are comments, blanks skipped.

    Sentence ids are the 1-based line numbers in the source.
    """
    text = read_text(source)
    sentences = []
    for lineno, line in enumerate(io.StringIO(text), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        sentences.append(mask_special(tokenize(line, lineno), rules))
    if not sentences:
        raise EmptyDocument("empty document")
    return Document(sentences, label)


def load_tagged(source: TextIO | str | Path, label: str = "") -> Document:
    """Read pre-tagged input: ``surface<TAB>pos<TAB>mask`` per token.

    Sentences are separated by blank lines; ids are 1-based sentence ordinals.
    The masks and POS tags come from the external tagger and are not
    re-derived.
    """
    text = read_text(source)
    sentences: list[Sentence] = []
    rows: list[list[str]] = []

    def flush():
        if not rows:
            return
        toks = []
        for i, row in enumerate(rows):
            surface = row[0]
            pos = parse_pos(row[1]) if len(row) > 1 else Pos.UNKNOWN
            try:
                mask = Mask(row[2].strip().upper() or "NONE") if len(row) > 2 else Mask.NONE
            except ValueError as exc:
                raise CorpusIOError(f"bad mask column {row[2]!r} for token {surface!r}") from exc
            normal = mask.value if mask is not Mask.NONE else surface.lower()
            toks.append(Token(surface, normal, i, mask, pos, glued=i > 0 and all(c in PUNCT_CHARS for c in surface)))
        sid = len(sentences) + 1
        sentences.append(Sentence(sid, tuple(toks), " ".join(r[0] for r in rows)))
        rows.clear()

    for line in io.StringIO(text):
        line = line.rstrip("\n")
        if line.startswith("#"):
            continue
        if not line.strip():
            flush()
            continue
        rows.append(line.split("\t"))
    flush()
    if not sentences:
        raise EmptyDocument("empty document")
    return Document(sentences, label)


def read_document(path: str | Path, label: str | None = None, rules: MaskConfig | None = None) -> Document:
    """Load a corpus file, picking the tagged reader for ``.tagged`` files."""
    path = Path(path)
    label = path.stem if label is None else label
    if path.suffix == ".tagged":
        return load_tagged(path, label)
    return load_corpus(path, label, rules)


def read_gazetteer(path: str | Path) -> list[str]:
    text = read_text(path)
    return [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]
