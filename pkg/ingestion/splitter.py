from fractions import Fraction
from itertools import groupby
from typing import List, Sequence, Tuple
import logging
import math

from models import CorpusSplit, Document

logger = logging.getLogger(__name__)

DEV_SUFFIX = "#dev"
TEST_SUFFIX = "#test"


def dev_line_count(n_lines: int, ratio: float) -> int:
    # exact rational arithmetic so 0.9 * 10 is 9, not 9.000000000000002
    return math.ceil(Fraction(str(ratio)) * n_lines)


def split_document(doc: Document, ratio: float) -> Tuple[Document, Document]:
    cut = dev_line_count(len(doc.lines), ratio)
    dev = doc.model_copy(update={"id": doc.id + DEV_SUFFIX, "lines": doc.lines[:cut], "trailing_newline": True})
    test = doc.model_copy(update={"id": doc.id + TEST_SUFFIX, "lines": doc.lines[cut:], "trailing_newline": True})
    return dev, test


def split_corpus(docs: Sequence[Document], ratio: float) -> CorpusSplit:
    """Line-level split of every document: its first ceil(ratio·n) lines go to dev."""
    if not 0 < ratio < 1:
        raise ValueError(f"split ratio must lie strictly between 0 and 1, got {ratio}")
    if not docs:
        raise ValueError("cannot split an empty corpus")

    dev: List[Document] = []
    test: List[Document] = []
    ordered = sorted(docs, key=lambda d: (d.strata_key, d.id))
    for strata_key, group in groupby(ordered, key=lambda d: d.strata_key):
        n_dev = n_test = 0
        for doc in group:
            if not doc.lines:
                logger.warning(f"Document {doc.id} has no lines; placing it in dev")
                dev.append(doc.model_copy(update={"id": doc.id + DEV_SUFFIX}))
                continue
            dev_doc, test_doc = split_document(doc, ratio)
            dev.append(dev_doc)
            n_dev += len(dev_doc.lines)
            if test_doc.lines:
                test.append(test_doc)
                n_test += len(test_doc.lines)
        logger.debug(f"Stratum {strata_key}: {n_dev} dev lines, {n_test} test lines")

    logger.info(f"Split {len(docs)} documents: {len(dev)} dev parts, {len(test)} test parts")
    return CorpusSplit(dev=tuple(dev), test=tuple(test), ratio=ratio)
