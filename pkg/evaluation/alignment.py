"""Turn sentence texts (gold XML, annotated XML) into comparable segmentations."""
from typing import Iterable, Sequence

from errors import DocumentsNotComparableError
from models import Document, SegmentedDocument, Sentence
from tokenization.tokenizer import DEFAULT_ENDERS, tokenize_line


def segmented_from_texts(doc_id: str, texts: Sequence[str], enders: Iterable[str] = DEFAULT_ENDERS) -> SegmentedDocument:
    """Spans are relative to each sentence's own text; blank sentences are dropped."""
    enders = frozenset(enders)
    sentences = []
    for text in texts:
        tokens = tokenize_line(text, enders)
        if tokens:
            sentences.append(Sentence(
                text=text,
                token_spans=tuple(t.span for t in tokens),
                tokens=tuple(t.text for t in tokens),
            ))
    return SegmentedDocument(id=doc_id, sentences=tuple(sentences))


def align_gold(doc: Document, texts: Sequence[str], enders: Iterable[str] = DEFAULT_ENDERS) -> SegmentedDocument:
    """Map gold sentence texts onto the document's tokens, giving document-relative spans."""
    enders = frozenset(enders)
    stream = []
    for line in doc.lines:
        base = line.source_span[0]
        stream.extend((t.text, (base + t.span[0], base + t.span[1])) for t in tokenize_line(line, enders))

    sentences, cursor = [], 0
    for text in texts:
        tokens = [t.text for t in tokenize_line(text, enders)]
        if not tokens:
            continue
        window = stream[cursor:cursor + len(tokens)]
        if [token for token, _ in window] != tokens:
            raise DocumentsNotComparableError(f"gold sentence {len(sentences)} of {doc.id} does not match the source")
        sentences.append(Sentence(text=text, token_spans=tuple(span for _, span in window), tokens=tuple(tokens)))
        cursor += len(tokens)

    if cursor != len(stream):
        raise DocumentsNotComparableError(f"gold for {doc.id} covers {cursor} of {len(stream)} tokens")
    return SegmentedDocument(id=doc.id, sentences=tuple(sentences))


def restrict_to_lines(gold: SegmentedDocument, part: Document) -> SegmentedDocument:
    """Keep the gold sentences that start inside a derived document's lines."""
    if not part.lines:
        return SegmentedDocument(id=part.id)
    start = part.lines[0].source_span[0]
    end = part.lines[-1].source_span[1]
    kept = tuple(s for s in gold.sentences if s.token_spans and start <= s.token_spans[0][0] < end)
    return SegmentedDocument(id=part.id, sentences=kept)
