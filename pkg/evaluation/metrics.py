from decimal import Decimal, ROUND_HALF_UP
from typing import Sequence

from errors import DocumentsNotComparableError, MissingJudgmentError, UndefinedMetricError
from models import AnnotatedSentence, ConfusionCounts, Judgment, Metrics, SegmentedDocument


def confusion_from_annotations(sentences: Sequence[AnnotatedSentence]) -> ConfusionCounts:
    tally = {judgment: 0 for judgment in Judgment}
    for index, sentence in enumerate(sentences):
        if sentence.judgment is None:
            raise MissingJudgmentError(index)
        tally[sentence.judgment] += 1
    return ConfusionCounts(
        tp=tally[Judgment.TP], tn=tally[Judgment.TN], fp=tally[Judgment.FP], fn=tally[Judgment.FN])


def token_stream(doc: SegmentedDocument) -> list:
    return [token for sentence in doc.sentences for token in sentence.tokens]


def boundary_positions(doc: SegmentedDocument) -> set:
    """Indices of the tokens that end a sentence."""
    positions, end = set(), 0
    for sentence in doc.sentences:
        if sentence.tokens:
            end += len(sentence.tokens)
            positions.add(end - 1)
    return positions


def boundary_confusion(pred: SegmentedDocument, gold: SegmentedDocument) -> ConfusionCounts:
    pred_tokens, gold_tokens = token_stream(pred), token_stream(gold)
    if pred_tokens != gold_tokens:
        raise DocumentsNotComparableError(f"{pred.id} and {gold.id} have different token streams")

    pred_b, gold_b = boundary_positions(pred), boundary_positions(gold)
    return ConfusionCounts(
        tp=len(pred_b & gold_b),
        fp=len(pred_b - gold_b),
        fn=len(gold_b - pred_b),
        tn=len(pred_tokens) - len(pred_b | gold_b),
    )


def metrics(counts: ConfusionCounts) -> Metrics:
    if counts.total < 1:
        raise UndefinedMetricError("error_rate")
    if counts.tp + counts.fp < 1:
        raise UndefinedMetricError("precision")
    if counts.tp + counts.fn < 1:
        raise UndefinedMetricError("recall")

    precision = counts.tp / (counts.tp + counts.fp)
    recall = counts.tp / (counts.tp + counts.fn)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    error_rate = (counts.fp + counts.fn) / counts.total
    # the harmonic mean may land an ulp outside [min, max] of its inputs
    f1 = min(max(f1, min(precision, recall)), max(precision, recall))
    return Metrics(precision=precision, recall=recall, f1=f1, error_rate=error_rate)


def percent(fraction: float) -> Decimal:
    """Percentage rounded half-up to two decimals."""
    return (Decimal(repr(fraction)) * 100).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)


def report_block(counts: ConfusionCounts, result: Metrics) -> str:
    rows = [
        ("tp", counts.tp), ("tn", counts.tn), ("fp", counts.fp), ("fn", counts.fn),
        ("precision", f"{percent(result.precision)}%"),
        ("recall", f"{percent(result.recall)}%"),
        ("f1", f"{percent(result.f1)}%"),
        ("error_rate", f"{percent(result.error_rate)}%"),
    ]
    return "\n".join(f"{key}={value}" for key, value in rows)
