from typing import Dict, Iterable, List, Optional, Tuple
import logging
import math

import pandas as pd

from errors import UndefinedMetricError
from evaluation.metrics import boundary_confusion, confusion_from_annotations, metrics
from models import AnnotatedDocument, ConfusionCounts, SegmentedDocument

logger = logging.getLogger(__name__)

METRIC_NAMES = ("precision", "recall", "f1", "error_rate")


class SegmentationEvaluator:
    """Scores predicted segmentations against gold, or hand-annotated XML, per document."""

    def __init__(self):
        self.totals = ConfusionCounts()

    def reset(self) -> None:
        self.totals = ConfusionCounts()

    def score(self, counts: ConfusionCounts) -> Dict[str, float]:
        try:
            result = metrics(counts)
        except UndefinedMetricError as e:
            logger.debug(f"Metrics undefined for {counts}: {e}")
            return {name: math.nan for name in METRIC_NAMES}
        return result.model_dump()

    def evaluate_single_document(self, pred: SegmentedDocument, gold: SegmentedDocument) -> Dict:
        """Confusion counts and metrics for one predicted/gold pair"""
        counts = boundary_confusion(pred, gold)
        self.totals = self.totals + counts
        return {"document": pred.id, **counts.model_dump(), **self.score(counts)}

    def evaluate_annotated_document(self, doc: AnnotatedDocument) -> Dict:
        counts = confusion_from_annotations(doc.sentences)
        self.totals = self.totals + counts
        return {"document": doc.id, **counts.model_dump(), **self.score(counts)}

    def evaluate_batch(self, pairs: Iterable[Tuple[SegmentedDocument, SegmentedDocument]]) -> pd.DataFrame:
        """Evaluate multiple documents; totals accumulate across the batch"""
        rows = [self.evaluate_single_document(pred, gold) for pred, gold in pairs]
        return self._frame(rows)

    def evaluate_annotated_batch(self, docs: Iterable[AnnotatedDocument]) -> pd.DataFrame:
        rows = [self.evaluate_annotated_document(doc) for doc in docs]
        return self._frame(rows)

    @staticmethod
    def _frame(rows: List[Dict]) -> pd.DataFrame:
        columns = ["document", "tp", "tn", "fp", "fn", *METRIC_NAMES]
        return pd.DataFrame(rows, columns=columns)

    def summary(self, counts: Optional[ConfusionCounts] = None):
        """Pooled metrics over everything evaluated so far; raises on undefined metrics."""
        counts = counts or self.totals
        return counts, metrics(counts)
