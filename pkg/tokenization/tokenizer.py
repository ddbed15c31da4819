"""Line tokenizer and type-key normalization for Persian-Arabic script text.

Periods attach to the preceding word so the trainer can weigh them as
abbreviation markers; the unambiguous enders and list punctuation are split
off as single-character tokens.
"""
from functools import lru_cache
from itertools import accumulate
from typing import FrozenSet, Iterable, List, Union
import re
import unicodedata

from nltk.tokenize.punkt import PunktLanguageVars

from models import Document, Line, NUMBER_KEY, Span, Token, TokenFlag


class SoraniLanguageVars(PunktLanguageVars):
    sent_end_chars = (".", "?", "!", "\u061f")


# "." is ambiguous and left to the trainer
DEFAULT_ENDERS: FrozenSet[str] = frozenset(SoraniLanguageVars.sent_end_chars) - {"."}

# Characters that always form a token of their own. '-' and '_' follow ordinal
# numerals as list punctuation and never end a sentence.
STANDALONE: FrozenSet[str] = frozenset("?!؟،؛:()«»\"'—–_-")

ZWNJ = "\u200c"

_DIGIT = "0-9\u0660-\u0669\u06f0-\u06f9"
_NUMBER_RE = re.compile(rf"[{_DIGIT}]+(?:[.,\u066b][{_DIGIT}]+)?")
_ELLIPSIS_RE = re.compile(r"\.{3,}")

TokenizedLine = List[Token]
TokenizedDocument = List[TokenizedLine]


def _utf8_len(ch: str) -> int:
    return len(ch.encode("utf-8", "surrogatepass"))


def byte_offsets(text: str) -> List[int]:
    """offsets[i] is the UTF-8 byte offset of character i; offsets[len(text)] the total."""
    return list(accumulate((_utf8_len(ch) for ch in text), initial=0))


def slice_bytes(text: str, span: Span) -> str:
    start, end = span
    return text.encode("utf-8", "surrogatepass")[start:end].decode("utf-8", "surrogatepass")


def is_number_text(text: str) -> bool:
    if text.endswith("."):
        text = text[:-1]
    return _NUMBER_RE.fullmatch(text) is not None


def _char_pieces(text: str, standalone: FrozenSet[str]) -> List[tuple]:
    pieces = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in standalone:
            j = i + 1
        elif ch == ".":
            # a period run with no word character before it
            j = i
            while j < n and text[j] == ".":
                j += 1
        else:
            # word characters, including ZWNJ, and any periods after them
            j = i + 1
            while j < n and not text[j].isspace() and text[j] not in standalone:
                j += 1
        pieces.append((i, j))
        i = j
    return pieces


def tokenize_line(line: Union[Line, str], enders: Iterable[str] = DEFAULT_ENDERS) -> List[Token]:
    """Split one line into flagged tokens. Any input tokenizes; blank lines give []."""
    text = line.text if isinstance(line, Line) else line
    enders = frozenset(enders)
    pieces = _char_pieces(text, STANDALONE | enders)
    if not pieces:
        return []

    offsets = byte_offsets(text)
    last = len(pieces) - 1
    tokens = []
    for index, (start, end) in enumerate(pieces):
        piece = text[start:end]
        flags = set()
        if piece.endswith("."):
            flags.add(TokenFlag.PERIOD_FINAL)
        if _ELLIPSIS_RE.search(piece):
            flags.add(TokenFlag.ELLIPSIS)
        if is_number_text(piece):
            flags.add(TokenFlag.NUMBER)
        if piece in enders:
            flags.add(TokenFlag.UNAMBIGUOUS_ENDER)
        if index == 0:
            flags.add(TokenFlag.LINE_START)
        if index == last:
            flags.add(TokenFlag.LINE_END)
        tokens.append(Token(text=piece, span=(offsets[start], offsets[end]), flags=frozenset(flags)))
    return tokens


def tokenize_document(doc: Document, enders: Iterable[str] = DEFAULT_ENDERS) -> TokenizedDocument:
    enders = frozenset(enders)
    return [tokenize_line(line, enders) for line in doc.lines]


@lru_cache(maxsize=None)
def _is_latin(ch: str) -> bool:
    return "LATIN" in unicodedata.name(ch, "")


@lru_cache(maxsize=1 << 16)
def normalize_key(text: str) -> str:
    """NFC, Latin case folding, trailing period run collapsed to a single '.'."""
    key = unicodedata.normalize("NFC", text)
    key = "".join(ch.casefold() if _is_latin(ch) else ch for ch in key)
    key = unicodedata.normalize("NFC", key)
    if key.endswith("."):
        key = key.rstrip(".") + "."
    return key


def type_of(token: Token) -> str:
    if token.is_number:
        return NUMBER_KEY + ("." if token.period_final else "")
    return normalize_key(token.text)


def strip_final_period(key: str) -> str:
    return key[:-1] if key.endswith(".") else key
