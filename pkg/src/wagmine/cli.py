"""Command-line entry point.

Exit status: 0 on success, 1 for input/user errors, 2 when an internal
invariant (acyclicity of the word-alignment graph) is breached.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import graph as wag
from .aligner import AlignerConfig, load_embeddings, load_synonyms
from .corpus import Document, MaskConfig, read_document, read_gazetteer
from .errors import CycleDetected, EmptyInput, InputError
from .evaluation import db_coverage, load_labels, load_paraphrase_db, precision_report
from .mine import FILTER_MODES, MineConfig, ParaphrasePair, essential_form
from .pipeline import build_graph, run

log = logging.getLogger("wagmine")

FORMATS = ("json", "tsv", "dot")


@dataclass
class RunConfig:
    inputs: list[Path]
    out_dir: Path
    threshold: float = 0.60
    embeddings: Path | None = None
    synonyms: Path | None = None
    gazetteer: Path | None = None
    monotone: bool = True
    strict_transitivity: bool = False
    max_internal_len: int = 6
    max_phrase_len: int = 3
    filter_mode: str = "verb3"
    formats: tuple[str, ...] = FORMATS
    strip_punct: bool = False
    label: str | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        formats = tuple(f.strip() for f in args.formats.split(",") if f.strip())
        bad = set(formats) - set(FORMATS)
        if bad:
            raise InputError(f"unknown output format(s): {', '.join(sorted(bad))}")
        return cls(
            inputs=[Path(p) for p in args.input or []],
            out_dir=Path(args.out_dir),
            threshold=args.threshold,
            embeddings=args.embeddings,
            synonyms=args.synonyms,
            gazetteer=args.gazetteer,
            monotone=not args.no_monotone_align,
            strict_transitivity=args.strict_transitivity,
            max_internal_len=args.max_internal_len,
            max_phrase_len=args.max_phrase_len,
            filter_mode=args.filter_mode,
            formats=formats,
            strip_punct=getattr(args, "strip_punct", False),
            label=args.label,
        )

    def validate(self) -> None:
        for p in [*self.inputs, self.embeddings, self.synonyms, self.gazetteer]:
            if p is not None and not Path(p).is_file():
                raise InputError(f"no such file: {p}")

    def echo(self) -> dict:
        out = {}
        for key, value in asdict(self).items():
            if isinstance(value, Path):
                value = str(value)
            elif key == "inputs":
                value = [str(p) for p in value]
            out[key] = value
        return out

    def aligner(self) -> AlignerConfig:
        return AlignerConfig(
            threshold=self.threshold,
            embeddings=load_embeddings(self.embeddings) if self.embeddings else None,
            synonyms=load_synonyms(self.synonyms) if self.synonyms else frozenset(),
            enforce_monotone=self.monotone,
        )

    def miner(self) -> MineConfig:
        return MineConfig(
            max_internal_len=self.max_internal_len,
            max_phrase_len=self.max_phrase_len,
            filter_mode=self.filter_mode,
        )

    def masking(self) -> MaskConfig:
        if self.gazetteer:
            return MaskConfig.with_gazetteer(read_gazetteer(self.gazetteer))
        return MaskConfig()


def _documents(cfg: RunConfig):
    """Yield (document, output directory) for every input file."""
    if not cfg.inputs:
        raise InputError("no --input given")
    masking = cfg.masking()
    for path in cfg.inputs:
        doc = read_document(path, cfg.label, masking)
        out = cfg.out_dir if len(cfg.inputs) == 1 else cfg.out_dir / path.stem
        out.mkdir(parents=True, exist_ok=True)
        yield doc, out


def _write(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8")


def _jsonl(rows) -> str:
    return "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows)


def _write_graph(g: wag.WordAlignmentGraph, doc: Document, out: Path, cfg: RunConfig) -> None:
    shown = wag.strip_punctuation(g) if cfg.strip_punct else g
    if "json" in cfg.formats:
        _write(out / "graph.json", wag.dumps(shown, document=doc.label))
    if "dot" in cfg.formats:
        _write(out / "graph.dot", wag.to_dot(shown, doc.label or "wag"))


def _groups_json(groups) -> str:
    rows = [{"group": k, "members": list(g.members)} for k, g in enumerate(groups)]
    return json.dumps({"groups": rows}, indent=1) + "\n"


def cmd_mine(cfg: RunConfig) -> int:
    for doc, out in _documents(cfg):
        started = time.perf_counter()
        res = run(doc, cfg.aligner(), cfg.miner(), cfg.strict_transitivity)
        g = res.graph
        if "json" in cfg.formats:
            _write(out / "pairs.jsonl", _jsonl(p.to_json() for p in res.pairs))
            _write(
                out / "optionals.jsonl",
                _jsonl(
                    {
                        "phrase": " ".join(o.text),
                        "anchors": [o.path.anchor_from, o.path.anchor_to],
                        "anchor_labels": [g.nodes[o.path.anchor_from].label, g.nodes[o.path.anchor_to].label],
                        "support": sorted(o.path.support),
                        "bypass_support": sorted(o.bypass_support),
                    }
                    for o in res.optionals
                ),
            )
        if "tsv" in cfg.formats:
            _write(out / "pairs.tsv", "".join(p.to_tsv() + "\n" for p in res.pairs))
        _write(out / "groups.json", _groups_json(res.groups))
        _write_graph(g, doc, out, cfg)
        report = {
            "config": cfg.echo(),
            "document": doc.label,
            "counts": res.counts(),
            "timings": res.timings,
            "wall_time": time.perf_counter() - started,
        }
        _write(out / "run.json", json.dumps(report, indent=1) + "\n")
        log.info("%s: %d sentences, %d groups, %d pairs", doc.label, len(doc), len(res.groups), len(res.pairs))
    return 0


def cmd_graph(cfg: RunConfig) -> int:
    for doc, out in _documents(cfg):
        _, groups, g = build_graph(doc, cfg.aligner(), cfg.strict_transitivity)
        _write_graph(g, doc, out, cfg)
        _write(out / "groups.json", _groups_json(groups))
    return 0


def cmd_clean(cfg: RunConfig) -> int:
    for doc, out in _documents(cfg):
        res = run(doc, cfg.aligner(), cfg.miner(), cfg.strict_transitivity)
        lines = [" ".join(essential_form(s, res.optionals, res.graph)) for s in doc]
        _write(out / "essential.txt", "".join(line + "\n" for line in lines))
    return 0


def _read_pairs(path: Path) -> list[ParaphrasePair]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return [ParaphrasePair.from_json(json.loads(line)) for line in text.splitlines() if line.strip()]


def cmd_eval(cfg: RunConfig, db_path: Path, labels_path: Path | None, pairs_path: Path | None) -> int:
    for p in (db_path, labels_path, pairs_path):
        if p is not None and not p.is_file():
            raise InputError(f"no such file: {p}")
    db = load_paraphrase_db(db_path)
    labels = load_labels(labels_path) if labels_path else None
    if pairs_path is not None:
        batches = [(_read_pairs(pairs_path), cfg.out_dir)]
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
    else:
        batches = [
            (run(doc, cfg.aligner(), cfg.miner(), cfg.strict_transitivity).pairs, out)
            for doc, out in _documents(cfg)
        ]
    for pairs, out in batches:
        if not pairs:
            raise EmptyInput("no paraphrase pairs to evaluate")
        _write(out / "coverage.json", json.dumps(db_coverage(pairs, db).to_json(), indent=1) + "\n")
        if labels is not None:
            _write(out / "precision.json", json.dumps(precision_report(pairs, labels).to_json(), indent=1) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", help="corpus file (repeatable); .tagged files are read as pre-tagged")
    common.add_argument("--out-dir", default="out")
    common.add_argument("--label", help="document label (default: input file stem)")
    common.add_argument("--threshold", type=float, default=0.60)
    common.add_argument("--embeddings", type=Path)
    common.add_argument("--synonyms", type=Path)
    common.add_argument("--gazetteer", type=Path)
    common.add_argument("--no-monotone-align", action="store_true")
    common.add_argument("--strict-transitivity", action="store_true")
    common.add_argument("--max-internal-len", type=int, default=6)
    common.add_argument("--max-phrase-len", type=int, default=3)
    common.add_argument("--filter-mode", choices=FILTER_MODES, default="verb3")
    common.add_argument("--formats", default=",".join(FORMATS), help="comma-separated subset of json,tsv,dot")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="wagmine", description="Mine paraphrases from same-intent sentences.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("mine", parents=[common], help="full pipeline: pairs, optionals, graph")
    g = sub.add_parser("graph", parents=[common], help="build and export the word-alignment graph")
    g.add_argument("--strip-punct", action="store_true")
    sub.add_parser("clean", parents=[common], help="write sentences with optional phrases removed")
    e = sub.add_parser("eval", parents=[common], help="coverage against a paraphrase DB, precision against labels")
    e.add_argument("--db", type=Path, required=True)
    e.add_argument("--labels", type=Path)
    e.add_argument("--pairs", type=Path, help="pairs.jsonl from a previous mine run instead of --input")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = RunConfig.from_args(args)
        cfg.validate()
        if args.command == "mine":
            return cmd_mine(cfg)
        if args.command == "graph":
            return cmd_graph(cfg)
        if args.command == "clean":
            return cmd_clean(cfg)
        return cmd_eval(cfg, args.db, args.labels, args.pairs)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CycleDetected as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
