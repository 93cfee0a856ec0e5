"""Coverage against a paraphrase database and precision against labels."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import read_text
from .errors import EmptyDb, EmptyInput
from .mine import ParaphrasePair

log = logging.getLogger(__name__)

PPDB_SEP = "|||"

_SUFFIXES = ("ing", "ed", "es", "s")


def _stem(word: str) -> str:
    for suf in _SUFFIXES:
        if word.endswith(suf) and len(word) - len(suf) >= 3:
            return word[: -len(suf)]
    return word


def normalize_phrase(phrase: str | Sequence[str], stem: bool = False) -> str:
    words = phrase.split() if isinstance(phrase, str) else [w for p in phrase for w in p.split()]
    words = [w.lower() for w in words]
    if stem:
        words = [_stem(w) for w in words]
    return " ".join(words)


def pair_key(a, b, stem: bool = False) -> tuple[str, str]:
    a, b = normalize_phrase(a, stem), normalize_phrase(b, stem)
    return (a, b) if a <= b else (b, a)


@dataclass
class ParaphraseDB:
    entries: set[tuple[str, str]]
    source_name: str = ""
    stem: bool = False
    skipped: int = 0

    def __contains__(self, pair) -> bool:
        a, b = pair
        return pair_key(a, b, self.stem) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, a, b) -> None:
        self.entries.add(pair_key(a, b, self.stem))


def parse_db_line(line: str) -> tuple[str, str] | None:
    """Phrase pair from a PPDB line (``LHS ||| phrase ||| paraphrase ||| ...``) or a 2-column TSV line."""
    line = line.strip()
    if not line or line.startswith("#"):
        return None
    if PPDB_SEP in line:
        fields = [f.strip() for f in line.split(PPDB_SEP)]
        if len(fields) >= 3 and fields[1] and fields[2]:
            return fields[1], fields[2]
        return None
    cols = [c.strip() for c in line.split("\t")]
    if len(cols) >= 2 and cols[0] and cols[1]:
        return cols[0], cols[1]
    return None


def load_paraphrase_db(path: str | Path, stem: bool = False) -> ParaphraseDB:
    text = read_text(path)
    db = ParaphraseDB(set(), Path(path).name, stem)
    for line in text.splitlines():
        parsed = parse_db_line(line)
        if parsed is None:
            if line.strip() and not line.startswith("#"):
                db.skipped += 1
            continue
        db.add(*parsed)
    if db.skipped:
        log.warning("%s: skipped %d malformed line(s)", path, db.skipped)
    if not db.entries:
        raise EmptyDb(f"no paraphrase pairs parsed from {path}")
    return db


@dataclass(frozen=True)
class CoverageReport:
    total: int
    found: int
    source: str = ""

    @property
    def fraction(self) -> float:
        return self.found / self.total

    def to_json(self) -> dict:
        return {"source": self.source, "total": self.total, "found": self.found, "fraction": self.fraction}


def db_coverage(pairs: Iterable[ParaphrasePair], db: ParaphraseDB) -> CoverageReport:
    pairs = list(pairs)
    if not pairs:
        raise EmptyInput("no paraphrase pairs to evaluate")
    found = sum((p.phrase_a, p.phrase_b) in db for p in pairs)
    return CoverageReport(len(pairs), found, db.source_name)


@dataclass
class LabeledPairs:
    labels: dict[tuple[str, str], bool] = field(default_factory=dict)

    def add(self, a, b, valid: bool) -> None:
        self.labels[pair_key(a, b)] = valid

    def get(self, a, b) -> bool | None:
        return self.labels.get(pair_key(a, b))

    def __len__(self) -> int:
        return len(self.labels)


_LABEL_TRUE = re.compile(r"^(1|true|yes|y)$", re.IGNORECASE)
_LABEL_FALSE = re.compile(r"^(0|false|no|n)$", re.IGNORECASE)


def load_labels(path: str | Path) -> LabeledPairs:
    """Read ``phrase_a<TAB>phrase_b<TAB>0|1`` judgements."""
    out = LabeledPairs()
    for lineno, line in enumerate(read_text(path).splitlines(), start=1):
        cols = line.rstrip("\n").split("\t")
        if not line.strip() or line.startswith("#"):
            continue
        if len(cols) < 3 or not (_LABEL_TRUE.match(cols[2].strip()) or _LABEL_FALSE.match(cols[2].strip())):
            log.warning("%s:%d: malformed label line skipped", path, lineno)
            continue
        out.add(cols[0], cols[1], bool(_LABEL_TRUE.match(cols[2].strip())))
    return out


@dataclass(frozen=True)
class PrecisionReport:
    extracted: int
    valid: int
    unjudged: int

    @property
    def precision(self) -> float | None:
        return self.valid / self.extracted if self.extracted else None

    def to_json(self) -> dict:
        return {
            "extracted": self.extracted,
            "valid": self.valid,
            "precision": self.precision,
            "unjudged": self.unjudged,
        }


def precision_report(pairs: Iterable[ParaphrasePair], labels: LabeledPairs) -> PrecisionReport:
    """Precision over judged pairs; pairs without a label are counted apart."""
    extracted = valid = unjudged = 0
    for p in pairs:
        verdict = labels.get(p.phrase_a, p.phrase_b)
        if verdict is None:
            unjudged += 1
            continue
        extracted += 1
        valid += verdict
    return PrecisionReport(extracted, valid, unjudged)
