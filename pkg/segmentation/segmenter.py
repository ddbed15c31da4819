"""Token-level boundary decisions and line-bounded sentence segmentation."""
from concurrent.futures import ThreadPoolExecutor
from typing import FrozenSet, Iterable, List, Optional, Sequence
import logging
import unicodedata

from config import get_settings
from models import (
    BoundaryDecision,
    DecisionKind,
    Document,
    NUMBER_KEY,
    Parameters,
    SegmentedDocument,
    Sentence,
    Token,
)
from tokenization.tokenizer import (
    DEFAULT_ENDERS,
    normalize_key,
    slice_bytes,
    strip_final_period,
    tokenize_line,
    type_of,
)

logger = logging.getLogger(__name__)

# doctor, professor, "peace be upon him", mamosta, BC
_DEFAULT_FORCED = ("\u062f", "\u067e", "\u062f.\u062e", "\u0645", "\u067e\u200c.\u200c\u0632")


def forced_abbrev_list_default() -> FrozenSet[str]:
    return frozenset(unicodedata.normalize("NFC", key) for key in _DEFAULT_FORCED)


def parse_forced_abbrevs(text: str) -> FrozenSet[str]:
    """One abbreviation per line, with or without its trailing period; blank lines are skipped."""
    keys = set()
    for raw in text.split("\n"):
        entry = raw.strip()
        if entry:
            keys.add(strip_final_period(normalize_key(entry)))
    return frozenset(key for key in keys if key)


def first_pass(tokens: Sequence[Token], params: Parameters, ellipsis_breaks: bool = False) -> List[BoundaryDecision]:
    decisions = []
    for index, token in enumerate(tokens):
        kind, reason = DecisionKind.NONE, ""
        if token.unambiguous_ender:
            kind, reason = DecisionKind.SENTENCE_BREAK, "unambiguous_ender"
        elif token.ellipsis:
            kind = DecisionKind.SENTENCE_BREAK if ellipsis_breaks else DecisionKind.ELLIPSIS
            reason = "ellipsis"
        elif token.period_final:
            key = strip_final_period(type_of(token))
            if key in params.forced_abbrevs:
                kind, reason = DecisionKind.ABBREVIATION, "forced_abbrev"
            elif key in params.abbrev_types:
                kind, reason = DecisionKind.ABBREVIATION, "learned_abbrev"
            else:
                kind, reason = DecisionKind.SENTENCE_BREAK, "plain_period"
        decisions.append(BoundaryDecision(token_index=index, kind=kind, reason=reason))

    if decisions and not decisions[-1].ends_sentence:
        # a line always closes its last sentence
        last = decisions[-1]
        kind = DecisionKind.ABBREVIATION_AND_BREAK if last.kind == DecisionKind.ABBREVIATION else DecisionKind.SENTENCE_BREAK
        decisions[-1] = BoundaryDecision(token_index=last.token_index, kind=kind, reason="line_end")
    return decisions


def second_pass(tokens: Sequence[Token], decisions: Sequence[BoundaryDecision], params: Parameters) -> List[BoundaryDecision]:
    """Refine first-pass decisions using the token that follows on the same line."""
    refined = list(decisions)
    for index in range(len(tokens) - 1):
        token, decision = tokens[index], refined[index]
        if not token.period_final or decision.reason == "line_end":
            continue
        next_key = type_of(tokens[index + 1])

        if decision.kind in (DecisionKind.ABBREVIATION, DecisionKind.ELLIPSIS):
            if next_key in params.sentence_starters:
                refined[index] = BoundaryDecision(
                    token_index=index, kind=DecisionKind.ABBREVIATION_AND_BREAK, reason="starter_break")
            continue

        if decision.kind == DecisionKind.SENTENCE_BREAK and decision.reason == "plain_period":
            key = strip_final_period(type_of(token))
            if token.is_number and (NUMBER_KEY, next_key) in params.collocations:
                refined[index] = BoundaryDecision(
                    token_index=index, kind=DecisionKind.ABBREVIATION, reason="numeral_collocation")
            elif (key, next_key) in params.collocations:
                refined[index] = BoundaryDecision(
                    token_index=index, kind=DecisionKind.ABBREVIATION, reason="collocation_suppress")
    return refined


def decide_line(tokens: Sequence[Token], params: Parameters, ellipsis_breaks: bool = False) -> List[BoundaryDecision]:
    return second_pass(tokens, first_pass(tokens, params, ellipsis_breaks), params)


def segment_document(doc: Document, params: Parameters, ellipsis_breaks: bool = False,
                     enders: Iterable[str] = DEFAULT_ENDERS) -> SegmentedDocument:
    enders = frozenset(enders)
    sentences = []
    for line in doc.lines:
        tokens = tokenize_line(line, enders)
        if not tokens:
            continue
        decisions = decide_line(tokens, params, ellipsis_breaks)
        base = line.source_span[0]
        start = 0
        for decision in decisions:
            if not decision.ends_sentence:
                continue
            chunk = tokens[start:decision.token_index + 1]
            span = (chunk[0].span[0], chunk[-1].span[1])
            sentences.append(Sentence(
                text=slice_bytes(line.text, span),
                token_spans=tuple((base + t.span[0], base + t.span[1]) for t in chunk),
                tokens=tuple(t.text for t in chunk),
            ))
            start = decision.token_index + 1
    return SegmentedDocument(id=doc.id, sentences=tuple(sentences))


class SentenceSegmenter:
    def __init__(self, params: Parameters, ellipsis_breaks: Optional[bool] = None,
                 enders: Optional[Iterable[str]] = None, workers: Optional[int] = None):
        settings = get_settings()
        self.params = params
        self.ellipsis_breaks = settings.ellipsis_breaks if ellipsis_breaks is None else ellipsis_breaks
        self.enders = frozenset(enders if enders is not None else settings.enders)
        self.workers = workers or settings.workers

    def explain(self, text: str) -> List[tuple]:
        """(token, decision) pairs for one line of text."""
        tokens = tokenize_line(text, self.enders)
        return list(zip(tokens, decide_line(tokens, self.params, self.ellipsis_breaks)))

    def segment(self, doc: Document) -> SegmentedDocument:
        segmented = segment_document(doc, self.params, self.ellipsis_breaks, self.enders)
        logger.debug(f"{doc.id}: {len(doc.lines)} lines -> {len(segmented.sentences)} sentences")
        return segmented

    def segment_all(self, docs: Sequence[Document]) -> List[SegmentedDocument]:
        if self.workers <= 1:
            return [self.segment(doc) for doc in docs]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(self.segment, docs))
