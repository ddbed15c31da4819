from typing import AbstractSet, Iterable

from nltk.probability import FreqDist

from models import CountTable, Token
from tokenization.tokenizer import TokenizedDocument, strip_final_period, type_of


def is_provisional_boundary(token: Token, key: str, abbrev_types: AbstractSet[str]) -> bool:
    if token.line_end or token.unambiguous_ender:
        return True
    return token.period_final and strip_final_period(key) not in abbrev_types


def collect_counts(docs: Iterable[TokenizedDocument], abbrev_types: AbstractSet[str] = frozenset()) -> CountTable:
    """Count types, same-line bigrams and sentence-initial types over a tokenized corpus.

    Sentence starts are the document's first token and every token that follows
    a provisional boundary.
    """
    c_with, c_without, bigrams, starts = FreqDist(), FreqDist(), FreqDist(), FreqDist()

    for doc in docs:
        at_start = True
        for line in doc:
            prev_key = None
            for token in line:
                key = type_of(token)
                if token.period_final:
                    c_with[key] += 1
                else:
                    c_without[key] += 1
                if at_start:
                    starts[key] += 1
                if prev_key is not None:
                    bigrams[(prev_key, key)] += 1
                prev_key = key
                at_start = is_provisional_boundary(token, key, abbrev_types)

    return CountTable(
        n_tokens=c_with.N() + c_without.N(),
        n_periods=c_with.N(),
        c_with_period=c_with,
        c_without_period=c_without,
        bigrams=bigrams,
        starts=starts,
        n_starts=starts.N(),
    )
