from typing import Iterable, Sequence, Tuple

import pandas as pd

from models import CorpusStats, Document
from tokenization.tokenizer import DEFAULT_ENDERS, tokenize_document, type_of


def corpus_statistics(docs: Sequence[Document], enders: Iterable[str] = DEFAULT_ENDERS) -> Tuple[CorpusStats, pd.DataFrame]:
    """Token and type counts overall and per stratum."""
    enders = frozenset(enders)
    rows = {}
    all_types = set()
    n_lines = n_tokens = 0

    for doc in docs:
        row = rows.setdefault(doc.strata_key, {"documents": 0, "lines": 0, "tokens": 0, "types": set()})
        row["documents"] += 1
        for line in tokenize_document(doc, enders):
            if not line:
                continue
            row["lines"] += 1
            row["tokens"] += len(line)
            row["types"].update(type_of(token) for token in line)
    for row in rows.values():
        n_lines += row["lines"]
        n_tokens += row["tokens"]
        all_types |= row["types"]
        row["types"] = len(row["types"])

    table = pd.DataFrame.from_dict(rows, orient="index", columns=["documents", "lines", "tokens", "types"])
    table = table.sort_index()
    table.index.name = "strata_key"

    stats = CorpusStats(documents=len(docs), lines=n_lines, tokens=n_tokens, types=len(all_types))
    return stats, table
