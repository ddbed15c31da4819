"""Versioned plain-text model files.

    PUNKTPARAMS v1
    [abbreviations]
    د
    [collocations]
    ##number##<TAB>بەش
    [sentence_starters]
    [forced_abbreviations]
"""
from typing import Dict, List
import logging
import unicodedata

from pydantic import ValidationError

from errors import ModelFormatError, UnsupportedModelVersionError
from models import Parameters

logger = logging.getLogger(__name__)

MAGIC = "PUNKTPARAMS"
VERSION = "v1"
HEADER = f"{MAGIC} {VERSION}"

_SECTIONS = ("abbreviations", "collocations", "sentence_starters", "forced_abbreviations")
_FIELDS = {
    "abbreviations": "abbrev_types",
    "collocations": "collocations",
    "sentence_starters": "sentence_starters",
    "forced_abbreviations": "forced_abbrevs",
}


def _nfc(value: str) -> str:
    return unicodedata.normalize("NFC", value)


def _escape(entry: str) -> str:
    if not entry or entry[0] in "[\\":
        return "\\" + entry
    return entry


def _unescape(entry: str) -> str:
    return entry[1:] if entry.startswith("\\") else entry


def save_params(params: Parameters) -> bytes:
    lines = [HEADER]
    for section in _SECTIONS:
        lines.append(f"[{section}]")
        values = getattr(params, _FIELDS[section])
        if section == "collocations":
            entries = sorted(f"{_escape(_nfc(a))}\t{_nfc(b)}" for a, b in values)
        else:
            entries = sorted(_escape(_nfc(value)) for value in values)
        lines.extend(entries)
    return ("\n".join(lines) + "\n").encode("utf-8")


def load_params(data: bytes) -> Parameters:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ModelFormatError(f"model file is not UTF-8 (byte offset {e.start})") from e

    lines = text.split("\n")
    header = lines[0].rstrip("\r")
    if not header.startswith(MAGIC):
        raise ModelFormatError("missing PUNKTPARAMS header")
    if header != HEADER:
        raise UnsupportedModelVersionError(header)

    found: Dict[str, List] = {section: [] for section in _SECTIONS}
    section = None
    for number, raw in enumerate(lines[1:], start=2):
        line = raw.rstrip("\r")
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1]
            if section not in found:
                raise ModelFormatError(f"line {number}: unknown section [{section}]")
            continue
        if section is None:
            raise ModelFormatError(f"line {number}: entry outside any section")
        if section == "collocations":
            parts = line.split("\t")
            if len(parts) != 2:
                raise ModelFormatError(f"line {number}: collocation must be two tab-separated keys")
            found[section].append((_nfc(_unescape(parts[0])), _nfc(parts[1])))
        else:
            found[section].append(_nfc(_unescape(line)))

    values = {}
    for section, entries in found.items():
        unique = set(entries)
        if len(unique) != len(entries):
            logger.warning(f"Model section [{section}] has {len(entries) - len(unique)} duplicate entries; ignoring them")
        values[_FIELDS[section]] = frozenset(unique)

    try:
        return Parameters(**values)
    except ValidationError as e:
        raise ModelFormatError(f"invalid model: {e.errors()[0]['msg']}") from e
