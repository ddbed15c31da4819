from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional
import logging
import unicodedata

from config import get_settings
from errors import CorpusEncodingError
from models import Document, Line
from serialization.files import list_files, read_bytes
from serialization.xml_io import scrub_xml_illegal
from tokenization.tokenizer import byte_offsets

logger = logging.getLogger(__name__)

BOM = "\ufeff"


def normalize_source(data: bytes, path: Path = None) -> str:
    """Decode UTF-8, drop a leading BOM, NFC-normalize and convert CRLF/CR to LF.

    Form feeds and the other separator controls become spaces, and any other
    character XML cannot carry becomes U+FFFD, so every line can be written
    back out as a sentence.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise CorpusEncodingError(path, e.start) from e
    if text.startswith(BOM):
        text = text[1:]
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    return scrub_xml_illegal(unicodedata.normalize("NFC", text))


def document_ids(relative: Path) -> tuple:
    """(id, strata_key) for a corpus-relative path such as math/grade7.txt."""
    parts = relative.parts
    stem = relative.stem
    doc_id = relative.with_suffix("").as_posix()
    strata_key = f"{parts[0]}/{stem}" if len(parts) > 1 else stem
    return doc_id, strata_key


def build_document(doc_id: str, strata_key: str, text: str) -> Document:
    if not text:
        return Document(id=doc_id, strata_key=strata_key)
    pieces = text.split("\n")
    trailing_newline = text.endswith("\n")
    if trailing_newline:
        pieces.pop()

    lines = []
    position = 0
    for piece in pieces:
        size = byte_offsets(piece)[-1]
        lines.append(Line(text=piece, source_span=(position, position + size)))
        position += size + 1
    return Document(id=doc_id, strata_key=strata_key, lines=tuple(lines), trailing_newline=trailing_newline)


def load_document(path: Path, root: Path) -> Document:
    doc_id, strata_key = document_ids(path.relative_to(root))
    text = normalize_source(read_bytes(path), path)
    return build_document(doc_id, strata_key, text)


def load_corpus(root: Path, extension: Optional[str] = None, workers: Optional[int] = None) -> List[Document]:
    """One Document per matching file under `root`, in relative-path order."""
    root = Path(root)
    settings = get_settings()
    extension = extension or settings.corpus_extension
    workers = workers or settings.workers
    paths = list_files(root, extension)

    if workers > 1 and len(paths) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            docs = list(pool.map(lambda p: load_document(p, root), paths))
    else:
        docs = [load_document(p, root) for p in paths]

    logger.info(f"Loaded {len(docs)} documents from {root}")
    return docs
