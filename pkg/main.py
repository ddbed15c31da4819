"""Command-line entry point: split, train, segment, eval, reproduce, stats, sample."""
from pathlib import Path
from typing import List, Optional, Sequence
import argparse
import logging
import sys
import tempfile

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from config import get_settings
from errors import CorpusIOError, DocumentsNotComparableError, SegmenterError, UsageError
from evaluation.alignment import segmented_from_texts
from evaluation.evaluator import SegmentationEvaluator
from evaluation.metrics import report_block
from evaluation.sampling import sample_for_annotation
from ingestion.loader import load_corpus, normalize_source
from ingestion.pipeline import SegmentationPipeline, base_id
from ingestion.splitter import split_corpus
from ingestion.stats import corpus_statistics
from ingestion.synthetic import write_synthetic_corpus
from models import AnnotatedDocument, SegmentedDocument, TrainerConfig
from segmentation.segmenter import SentenceSegmenter, forced_abbrev_list_default, parse_forced_abbrevs
from serialization.files import atomic_write_bytes, list_files, read_bytes
from serialization.params_io import load_params, save_params
from serialization.xml_io import emit_xml, parse_annotated_document
from tokenization.tokenizer import tokenize_document
from training.trainer import SentenceBoundaryTrainer

logger = logging.getLogger(__name__)


class CliParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class RunConfig(BaseModel):
    """Validated arguments of one invocation."""

    model_config = ConfigDict(frozen=True)

    command: str
    inputs: dict = Field(default_factory=dict)
    outputs: dict = Field(default_factory=dict)
    ratio: float = Field(default_factory=lambda: get_settings().split_ratio, gt=0, lt=1)
    fraction: float = Field(0.1, gt=0, le=1)
    trainer: TrainerConfig = Field(default_factory=TrainerConfig)
    ellipsis_breaks: bool = Field(default_factory=lambda: get_settings().ellipsis_breaks)
    enders: str = Field(default_factory=lambda: get_settings().enders)
    default_abbrevs: bool = False
    per_file: bool = False
    per_stratum: bool = False
    workers: int = Field(default_factory=lambda: get_settings().workers, ge=1)

    def check_paths(self) -> None:
        for name, path in self.inputs.items():
            if path is not None and not Path(path).exists():
                flag = "--in" if name == "in_dir" else f"--{name}"
                raise CorpusIOError(path, f"{flag} path does not exist")

    def path(self, name: str) -> Optional[Path]:
        value = self.inputs.get(name, self.outputs.get(name))
        return Path(value) if value is not None else None


def build_parser() -> CliParser:
    settings = get_settings()
    parser = CliParser(prog="sbd", description="Unsupervised sentence boundary detection for Sorani text.")
    commands = parser.add_subparsers(dest="command", required=True)

    split = commands.add_parser("split", help="Split a corpus into dev/ and test/ trees")
    split.add_argument("--in", dest="in_dir", required=True)
    split.add_argument("--out", required=True)
    split.add_argument("--ratio", type=float, default=settings.split_ratio)

    train = commands.add_parser("train", help="Train a model on a dev tree")
    train.add_argument("--in", dest="in_dir", required=True)
    train.add_argument("--model", required=True)
    train.add_argument("--abbrev-threshold", type=float, default=settings.abbrev_threshold)
    train.add_argument("--colloc-threshold", type=float, default=settings.colloc_threshold)
    train.add_argument("--starter-threshold", type=float, default=settings.starter_threshold)
    train.add_argument("--workers", type=int, default=settings.workers)

    segment = commands.add_parser("segment", help="Segment a text tree into one XML file per input")
    segment.add_argument("--in", dest="in_dir", required=True)
    segment.add_argument("--model", required=True)
    segment.add_argument("--out", required=True)
    segment.add_argument("--abbrev", help="Forced abbreviations, one per line")
    segment.add_argument("--default-abbrevs", action="store_true", help="Add the five built-in abbreviations")
    segment.add_argument("--ellipsis-breaks", action="store_true", default=settings.ellipsis_breaks)
    segment.add_argument("--enders", default=settings.enders)
    segment.add_argument("--workers", type=int, default=settings.workers)

    evaluate = commands.add_parser("eval", help="Score predicted XML against gold, or hand-annotated XML")
    source = evaluate.add_mutually_exclusive_group(required=True)
    source.add_argument("--pred")
    source.add_argument("--annotated")
    evaluate.add_argument("--gold")
    evaluate.add_argument("--enders", default=settings.enders)
    evaluate.add_argument("--per-file", action="store_true")

    reproduce = commands.add_parser("reproduce", help="Abbreviation ablation: split, train, segment twice, score")
    reproduce.add_argument("--corpus", help="Corpus directory; the bundled synthetic corpus when omitted")
    reproduce.add_argument("--gold")
    reproduce.add_argument("--out")
    reproduce.add_argument("--ratio", type=float, default=settings.split_ratio)
    reproduce.add_argument("--ellipsis-breaks", action="store_true", default=settings.ellipsis_breaks)
    reproduce.add_argument("--enders", default=settings.enders)
    reproduce.add_argument("--workers", type=int, default=settings.workers)

    stats = commands.add_parser("stats", help="Token and type counts of a corpus")
    stats.add_argument("--in", dest="in_dir", required=True)
    stats.add_argument("--per-stratum", action="store_true")

    sample = commands.add_parser("sample", help="Evenly spaced sentence sample for hand annotation")
    sample.add_argument("--in", dest="in_dir", required=True)
    sample.add_argument("--out", required=True)
    sample.add_argument("--fraction", type=float, default=0.1)
    return parser


def to_run_config(args: argparse.Namespace) -> RunConfig:
    command = args.command
    inputs = {name: getattr(args, name, None) for name in ("in_dir", "abbrev", "pred", "gold", "annotated", "corpus")}
    outputs = {name: getattr(args, name, None) for name in ("out",)}
    if command == "segment":
        inputs["model"] = args.model
    elif command == "train":
        outputs["model"] = args.model
    if command == "eval" and args.pred is not None and args.gold is None:
        raise UsageError("eval: --pred requires --gold")

    values = dict(
        command=command,
        inputs={k: v for k, v in inputs.items() if v is not None},
        outputs={k: v for k, v in outputs.items() if v is not None},
    )
    for name in ("ratio", "fraction", "ellipsis_breaks", "enders", "default_abbrevs", "per_file", "per_stratum", "workers"):
        if getattr(args, name, None) is not None:
            values[name] = getattr(args, name)
    if command == "train":
        values["trainer"] = dict(
            abbrev_threshold=args.abbrev_threshold,
            colloc_threshold=args.colloc_threshold,
            starter_threshold=args.starter_threshold,
        )
    try:
        config = RunConfig(**values)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"])
        raise UsageError(f"{command}: --{field.split('.')[-1].replace('_', '-')}: {error['msg']}") from e
    if "." in config.enders or any(ch.isspace() for ch in config.enders) or not config.enders:
        raise UsageError(f"{command}: --enders must be non-empty and contain neither '.' nor whitespace")
    return config


# --- commands ---------------------------------------------------------------

def cmd_split(config: RunConfig) -> int:
    docs = load_corpus(config.path("in_dir"), workers=config.workers)
    split = split_corpus(docs, config.ratio)
    out = config.path("out")
    for side, parts in (("dev", split.dev), ("test", split.test)):
        for doc in parts:
            atomic_write_bytes(out / side / f"{base_id(doc.id)}{get_settings().corpus_extension}", doc.text().encode("utf-8"))
    logger.info(f"Wrote {len(split.dev)} dev and {len(split.test)} test files to {out}")
    return 0


def cmd_train(config: RunConfig) -> int:
    docs = load_corpus(config.path("in_dir"), workers=config.workers)
    enders = frozenset(config.enders)
    trainer = SentenceBoundaryTrainer(config.trainer, workers=config.workers)
    params = trainer.train([tokenize_document(doc, enders) for doc in docs])
    atomic_write_bytes(config.path("model"), save_params(params))
    logger.info(f"Wrote model to {config.path('model')}")
    return 0


def cmd_segment(config: RunConfig) -> int:
    params = load_params(read_bytes(config.path("model")))
    forced = set(params.forced_abbrevs)
    if config.path("abbrev") is not None:
        forced |= parse_forced_abbrevs(normalize_source(read_bytes(config.path("abbrev")), config.path("abbrev")))
    if config.default_abbrevs:
        forced |= forced_abbrev_list_default()
    params = params.with_forced(forced)

    docs = load_corpus(config.path("in_dir"), workers=config.workers)
    segmenter = SentenceSegmenter(params, config.ellipsis_breaks, config.enders, config.workers)
    out = config.path("out")
    for doc in segmenter.segment_all(docs):
        atomic_write_bytes(out / f"{doc.id}.xml", emit_xml(doc))
    logger.info(f"Segmented {len(docs)} files into {out}")
    return 0


def _read_xml_tree(root: Path) -> dict:
    documents = {}
    for path in list_files(root, ".xml"):
        relative = path.relative_to(root).with_suffix("").as_posix()
        documents[relative] = parse_annotated_document(read_bytes(path))
    return documents


def _as_segmented(doc_id: str, doc: AnnotatedDocument, enders) -> SegmentedDocument:
    return segmented_from_texts(doc_id, [s.text for s in doc.sentences], enders)


def cmd_eval(config: RunConfig) -> int:
    evaluator = SegmentationEvaluator()
    if config.path("annotated") is not None:
        documents = _read_xml_tree(config.path("annotated"))
        table = evaluator.evaluate_annotated_batch(
            doc.model_copy(update={"id": name}) for name, doc in documents.items())
    else:
        predicted = _read_xml_tree(config.path("pred"))
        gold = _read_xml_tree(config.path("gold"))
        missing = sorted(set(predicted) ^ set(gold))
        if missing:
            raise DocumentsNotComparableError(f"{missing[0]} is present on only one side")
        enders = frozenset(config.enders)
        table = evaluator.evaluate_batch(
            (_as_segmented(name, predicted[name], enders), _as_segmented(name, gold[name], enders))
            for name in predicted)

    if config.per_file:
        print(table.to_string(index=False))
    counts, result = evaluator.summary()
    print(report_block(counts, result))
    return 0


def cmd_reproduce(config: RunConfig) -> int:
    pipeline = SegmentationPipeline(
        trainer=SentenceBoundaryTrainer(workers=config.workers),
        ratio=config.ratio,
        ellipsis_breaks=config.ellipsis_breaks,
        enders=config.enders,
        workers=config.workers,
    )
    corpus = config.path("corpus")
    if corpus is None:
        with tempfile.TemporaryDirectory(prefix="sbd-corpus-") as tmp:
            report = pipeline.run(write_synthetic_corpus(Path(tmp)), config.path("gold"))
    else:
        report = pipeline.run(corpus, config.path("gold"))

    if config.path("out") is not None:
        pipeline.write_outputs(report, config.path("out"))
    print(report.table().to_string())
    return 0


def cmd_stats(config: RunConfig) -> int:
    docs = load_corpus(config.path("in_dir"), workers=config.workers)
    stats, table = corpus_statistics(docs, config.enders)
    print("\n".join(f"{key}={value}" for key, value in stats.model_dump().items()))
    if config.per_stratum:
        print(table.to_string())
    return 0


def cmd_sample(config: RunConfig) -> int:
    root, out = config.path("in_dir"), config.path("out")
    documents = _read_xml_tree(root)
    for name, doc in documents.items():
        picked = sample_for_annotation(len(doc.sentences), config.fraction)
        sampled = segmented_from_texts(doc.id or name, [doc.sentences[i].text for i in picked], config.enders)
        atomic_write_bytes(out / f"{name}.xml", emit_xml(sampled))
    logger.info(f"Sampled {len(documents)} files into {out}")
    return 0


HANDLERS = {
    "split": cmd_split,
    "train": cmd_train,
    "segment": cmd_segment,
    "eval": cmd_eval,
    "reproduce": cmd_reproduce,
    "stats": cmd_stats,
    "sample": cmd_sample,
}


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        configure_logging(get_settings().log)
        args = build_parser().parse_args(argv)
        config = to_run_config(args)
        config.check_paths()
        return HANDLERS[config.command](config)
    except SegmenterError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        # out-of-range ratios and thresholds rejected below the CLI layer
        print(f"error: {e}", file=sys.stderr)
        return UsageError.exit_code
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 0


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
