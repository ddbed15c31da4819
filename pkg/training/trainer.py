from concurrent.futures import ThreadPoolExecutor
from functools import reduce
from typing import FrozenSet, List, Optional, Sequence, Set, Tuple
import logging
import unicodedata

from nltk.tokenize.punkt import PunktParameters

from config import get_settings
from models import CountTable, NUMBER_KEY, Parameters, TrainerConfig
from tokenization.tokenizer import TokenizedDocument, strip_final_period
from training.counts import collect_counts
from training.statistics import abbrev_score, pair_llr

logger = logging.getLogger(__name__)


def has_letter(key: str) -> bool:
    return any(unicodedata.category(ch).startswith("L") for ch in key)


def is_collocation_candidate(key: str) -> bool:
    """Numerals and every abbreviation candidate may head a collocation."""
    return key == NUMBER_KEY or has_letter(key)


def detect_abbreviations(counts: CountTable, threshold: float = 0.3) -> Set[str]:
    abbrevs = set()
    for key_with_period in sorted(counts.c_with_period):
        key = strip_final_period(key_with_period)
        if key == NUMBER_KEY or not has_letter(key):
            continue
        score = abbrev_score(key, counts)
        logger.debug(f"abbreviation candidate {key!r}: score={score:.10g}")
        if score >= threshold:
            abbrevs.add(key)
    return abbrevs


def detect_collocations(counts: CountTable, threshold: float = 7.88) -> Set[Tuple[str, str]]:
    collocations = set()
    n = counts.n_tokens
    for (first, second), c12 in sorted(counts.bigrams.items()):
        if not first.endswith("."):
            continue
        head = strip_final_period(first)
        if not is_collocation_candidate(head):
            continue
        c1 = counts.type_count(head)
        c2 = counts.count(second)
        if c2 - c12 > n - c1 or c12 / c1 <= c2 / n:
            continue
        score = pair_llr(c1, c2, c12, n)
        logger.debug(f"collocation candidate ({head!r}, {second!r}): llr={score:.10g}")
        if score >= threshold:
            collocations.add((head, second))
    return collocations


def detect_sentence_starters(counts: CountTable, threshold: float = 30.0) -> Set[str]:
    starters = set()
    n, n_starts = counts.n_tokens, counts.n_starts
    for key, c12 in sorted(counts.starts.items()):
        c2 = counts.count(key)
        if c12 / n_starts <= c2 / n:
            continue
        score = pair_llr(n_starts, c2, c12, n)
        logger.debug(f"sentence starter candidate {key!r}: llr={score:.10g}")
        if score >= threshold:
            starters.add(key)
    return starters


class SentenceBoundaryTrainer:
    """Learns abbreviations, collocations and sentence starters from unlabelled text."""

    def __init__(self, config: Optional[TrainerConfig] = None, workers: Optional[int] = None):
        settings = get_settings()
        self.config = config or TrainerConfig(
            abbrev_threshold=settings.abbrev_threshold,
            colloc_threshold=settings.colloc_threshold,
            starter_threshold=settings.starter_threshold,
        )
        self.workers = workers or settings.workers

    def count(self, docs: Sequence[TokenizedDocument], abbrev_types: FrozenSet[str] = frozenset()) -> CountTable:
        if self.workers <= 1 or len(docs) <= 1:
            return collect_counts(docs, abbrev_types)
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            tables = list(pool.map(lambda doc: collect_counts([doc], abbrev_types), docs))
        return reduce(CountTable.merge, tables)

    def train(self, docs: Sequence[TokenizedDocument]) -> Parameters:
        docs = list(docs)
        first_pass = self.count(docs)
        if first_pass.n_tokens == 0:
            raise ValueError("cannot train on an empty corpus")

        abbrevs = frozenset(detect_abbreviations(first_pass, self.config.abbrev_threshold))
        logger.info(f"First pass: {first_pass.n_tokens} tokens, {len(abbrevs)} abbreviation types")

        # recount sentence starts against boundaries that respect the learned abbreviations
        second_pass = self.count(docs, abbrevs)
        collocations = detect_collocations(second_pass, self.config.colloc_threshold)
        starters = detect_sentence_starters(second_pass, self.config.starter_threshold)
        logger.info(f"Second pass: {len(collocations)} collocations, {len(starters)} sentence starters")

        punkt = PunktParameters()
        punkt.abbrev_types = set(abbrevs)
        punkt.collocations = collocations
        punkt.sent_starters = starters
        return Parameters.from_punkt(punkt)


def train(docs: List[TokenizedDocument], config: Optional[TrainerConfig] = None) -> Parameters:
    return SentenceBoundaryTrainer(config).train(docs)
