from pathlib import Path

import pytest
from hypothesis import strategies as st

from config import get_settings
from ingestion.loader import build_document
from ingestion.synthetic import write_synthetic_corpus
from tokenization.tokenizer import tokenize_document

SORANI_LETTERS = "ئابپتجچحخدرڕزژسشعغفڤقکگلڵمنوۆهەیێ"
SORANI_WORDS = ("کتێب", "وانە", "قوتابی", "مامۆستا", "خوێندن", "نووسین", "زانست", "شار", "ئاو", "خۆر")

# Words, numbers, punctuation and whitespace in the proportions textbook lines have.
line_pieces = st.one_of(
    st.text(alphabet=SORANI_LETTERS + "\u200c", min_size=1, max_size=6),
    st.sampled_from(SORANI_WORDS),
    st.text(alphabet="0123456789٠١٢٣٤٥٦٧٨٩۰۱۲۳۴۵۶۷۸۹", min_size=1, max_size=3),
    st.sampled_from([".", "..", "...", "?", "!", "؟", "،", "؛", ":", "(", ")", "«", "»", "-", "_", "—"]),
    st.sampled_from([" ", "  ", "\t"]),
    st.sampled_from(["Dr", "A", "b"]),
)

sorani_line = st.lists(line_pieces, max_size=25).map("".join)
sorani_text = st.lists(sorani_line, max_size=8).map("\n".join)


def make_document(text: str, doc_id: str = "doc", strata_key: str = "test/doc"):
    return build_document(doc_id, strata_key, text)


def tokenized(*texts: str):
    """Tokenized corpus with one document per text."""
    return [tokenize_document(make_document(text, f"doc{i}")) for i, text in enumerate(texts)]


@pytest.fixture
def write_tree(tmp_path):
    """Write {relative path: text} under a fresh directory and return it."""

    def _write(files: dict, name: str = "corpus") -> Path:
        root = tmp_path / name
        root.mkdir(parents=True, exist_ok=True)
        for relative, content in files.items():
            path = root / relative
            path.parent.mkdir(parents=True, exist_ok=True)
            data = content if isinstance(content, bytes) else content.encode("utf-8")
            path.write_bytes(data)
        return root

    return _write


@pytest.fixture
def synthetic_root(tmp_path) -> Path:
    return write_synthetic_corpus(tmp_path / "synthetic")


@pytest.fixture
def fresh_settings():
    """Re-read SBD_* settings inside the test and again after it."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
