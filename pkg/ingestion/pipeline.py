from pathlib import Path
from typing import Dict, List, Optional, Tuple
import logging

import pandas as pd
from pydantic import BaseModel, ConfigDict

from config import get_settings
from errors import UndefinedMetricError
from evaluation.alignment import align_gold, restrict_to_lines
from evaluation.evaluator import SegmentationEvaluator
from evaluation.metrics import percent
from ingestion.loader import load_corpus
from ingestion.splitter import DEV_SUFFIX, TEST_SUFFIX, split_corpus
from ingestion.synthetic import GOLD_DIR, TEXT_DIR
from models import ConfusionCounts, CorpusSplit, Document, Metrics, Parameters, SegmentedDocument
from segmentation.segmenter import SentenceSegmenter, forced_abbrev_list_default
from serialization.files import atomic_write_bytes, read_bytes
from serialization.params_io import save_params
from serialization.xml_io import emit_xml, parse_annotated_document
from tokenization.tokenizer import tokenize_document
from training.trainer import SentenceBoundaryTrainer

logger = logging.getLogger(__name__)

WITHOUT = "without_abbrevs"
WITH = "with_abbrevs"
REPORT_ROWS = ("tp", "tn", "fp", "fn", "precision", "recall", "f1", "error_rate", "sentences")


def base_id(doc_id: str) -> str:
    for suffix in (DEV_SUFFIX, TEST_SUFFIX):
        if doc_id.endswith(suffix):
            return doc_id[:-len(suffix)]
    return doc_id


def resolve_layout(corpus: Path, gold: Optional[Path] = None) -> Tuple[Path, Optional[Path]]:
    """Text and gold roots for a corpus directory: either <corpus>/text + <corpus>/gold or a plain text tree."""
    corpus = Path(corpus)
    if (corpus / TEXT_DIR).is_dir():
        if gold is None and (corpus / GOLD_DIR).is_dir():
            gold = corpus / GOLD_DIR
        return corpus / TEXT_DIR, gold
    return corpus, gold


class SegmentationRun(BaseModel):
    """One segmentation of the test set, with its score when gold is available."""

    model_config = ConfigDict(frozen=True)

    label: str
    documents: Tuple[SegmentedDocument, ...]
    counts: Optional[ConfusionCounts] = None
    metrics: Optional[Metrics] = None

    @property
    def sentences(self) -> int:
        return sum(len(doc.sentences) for doc in self.documents)


class AblationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    params: Parameters
    runs: Tuple[SegmentationRun, ...]

    def table(self) -> pd.DataFrame:
        columns = {}
        for run in self.runs:
            values = {"sentences": run.sentences}
            if run.counts is not None:
                values.update(run.counts.model_dump())
            if run.metrics is not None:
                values.update({name: f"{percent(value)}%" for name, value in run.metrics.model_dump().items()})
            columns[run.label] = [values.get(row, "") for row in REPORT_ROWS]
        return pd.DataFrame(columns, index=list(REPORT_ROWS))


class SegmentationPipeline:
    """split -> train on dev -> segment test without and with the default forced abbreviations -> score."""

    def __init__(self,
                 trainer: Optional[SentenceBoundaryTrainer] = None,
                 ratio: Optional[float] = None,
                 ellipsis_breaks: Optional[bool] = None,
                 enders: Optional[str] = None,
                 workers: Optional[int] = None):
        settings = get_settings()
        self.workers = workers or settings.workers
        self.trainer = trainer or SentenceBoundaryTrainer(workers=self.workers)
        self.ratio = ratio or settings.split_ratio
        self.ellipsis_breaks = settings.ellipsis_breaks if ellipsis_breaks is None else ellipsis_breaks
        self.enders = frozenset(enders if enders is not None else settings.enders)
        self.evaluator = SegmentationEvaluator()

    def load_gold(self, docs: List[Document], gold_root: Optional[Path]) -> Dict[str, SegmentedDocument]:
        """Gold segmentations aligned to their full source documents, keyed by document id."""
        if gold_root is None:
            logger.warning("No gold segmentation given; reporting sentence counts only")
            return {}
        gold = {}
        for doc in docs:
            path = Path(gold_root) / f"{doc.id}.xml"
            if not path.is_file():
                logger.warning(f"No gold file for {doc.id} at {path}; leaving it out of the scores")
                continue
            annotated = parse_annotated_document(read_bytes(path))
            gold[doc.id] = align_gold(doc, [s.text for s in annotated.sentences], self.enders)
        return gold

    def train(self, split: CorpusSplit) -> Parameters:
        tokenized = [tokenize_document(doc, self.enders) for doc in split.dev]
        params = self.trainer.train(tokenized)
        logger.info(
            f"Trained on {len(split.dev)} dev parts: {len(params.abbrev_types)} abbreviations, "
            f"{len(params.collocations)} collocations, {len(params.sentence_starters)} sentence starters")
        return params

    def segment_and_score(self, label: str, params: Parameters, test: Tuple[Document, ...],
                          gold: Dict[str, SegmentedDocument]) -> SegmentationRun:
        segmenter = SentenceSegmenter(params, self.ellipsis_breaks, self.enders, self.workers)
        predicted = segmenter.segment_all(test)

        pairs = [
            (pred, restrict_to_lines(gold[base_id(doc.id)], doc))
            for pred, doc in zip(predicted, test)
            if base_id(doc.id) in gold
        ]
        if not pairs:
            return SegmentationRun(label=label, documents=tuple(predicted))

        self.evaluator.reset()
        per_document = self.evaluator.evaluate_batch(pairs)
        logger.debug(f"{label} per-document scores:\n{per_document.to_string()}")
        try:
            counts, result = self.evaluator.summary()
        except UndefinedMetricError as e:
            logger.warning(f"{label}: {e}")
            counts, result = self.evaluator.totals, None
        return SegmentationRun(label=label, documents=tuple(predicted), counts=counts, metrics=result)

    def run(self, corpus: Path, gold: Optional[Path] = None) -> AblationReport:
        text_root, gold_root = resolve_layout(corpus, gold)
        docs = load_corpus(text_root, workers=self.workers)
        split = split_corpus(docs, self.ratio)
        params = self.train(split)
        gold_docs = self.load_gold(docs, gold_root)

        runs = (
            self.segment_and_score(WITHOUT, params, split.test, gold_docs),
            self.segment_and_score(WITH, params.with_forced(forced_abbrev_list_default()), split.test, gold_docs),
        )
        for run in runs:
            logger.info(f"{run.label}: {run.sentences} sentences over {len(split.test)} test parts")
        return AblationReport(params=params, runs=runs)

    @staticmethod
    def write_outputs(report: AblationReport, out_dir: Path) -> None:
        """model.txt plus one XML tree per run, named after the source files."""
        out_dir = Path(out_dir)
        atomic_write_bytes(out_dir / "model.txt", save_params(report.params))
        for run in report.runs:
            subdir = "with" if run.label == WITH else "without"
            for doc in run.documents:
                atomic_write_bytes(out_dir / subdir / f"{base_id(doc.id)}.xml", emit_xml(doc))
        logger.info(f"Wrote model and {len(report.runs)} segmentations to {out_dir}")
