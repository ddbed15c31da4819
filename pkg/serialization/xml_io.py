"""Sentence-per-element XML, as written by `segment` and hand-annotated for evaluation."""
from typing import Dict, List, Optional
from xml.sax.saxutils import escape, quoteattr
import re
import xml.etree.ElementTree as ET

from errors import DataFormatError, UnknownJudgmentError, XmlFormatError
from models import AnnotatedDocument, AnnotatedSentence, Judgment, SegmentedDocument

XML_HEADER = '<?xml version="1.0" encoding="UTF-8"?>'

_ENTITIES = {"\"": "&quot;", "'": "&apos;"}
_TEXT_ENTITIES = dict(_ENTITIES, **{"\r": "&#13;"})

_ILLEGAL_RE = re.compile("[\x00-\x08\x0b\x0c\x0e-\x1f\ud800-\udfff\ufffe\uffff]")
# C0 controls that str.isspace() treats as whitespace
_SEPARATOR_RE = re.compile("[\x0b\x0c\x1c-\x1f]")

_JUDGMENTS = {judgment.value: judgment for judgment in Judgment}


def _check_legal(value: str) -> None:
    match = _ILLEGAL_RE.search(value)
    if match:
        raise DataFormatError(f"character U+{ord(match.group()):04X} is not allowed in XML")


def scrub_xml_illegal(text: str) -> str:
    """Make text XML-safe: separator controls become spaces, other illegal characters U+FFFD."""
    return _ILLEGAL_RE.sub("\ufffd", _SEPARATOR_RE.sub(" ", text))


def escape_text(value: str) -> str:
    _check_legal(value)
    return escape(value, _TEXT_ENTITIES)


def escape_attr(value: str) -> str:
    """The quoted attribute value; tab, CR and LF become character references."""
    _check_legal(value)
    return quoteattr(value, _ENTITIES)


def emit_xml(doc: SegmentedDocument, judgments: Optional[Dict[int, Judgment]] = None) -> bytes:
    judgments = judgments or {}
    for index in judgments:
        if not 0 <= index < len(doc.sentences):
            raise DataFormatError(f"judgment for sentence {index} but document has {len(doc.sentences)} sentences")

    lines = [XML_HEADER]
    doc_id = escape_attr(doc.id)
    if not doc.sentences:
        lines.append(f"<doc id={doc_id}/>")
    else:
        lines.append(f"<doc id={doc_id}>")
        for index, sentence in enumerate(doc.sentences):
            judgment = judgments.get(index)
            attr = f' type="{Judgment(judgment).value}"' if judgment is not None else ""
            lines.append(f"  <s{attr}>{escape_text(sentence.text)}</s>")
        lines.append("</doc>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_annotated_document(data: bytes) -> AnnotatedDocument:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as e:
        line, column = e.position
        raise XmlFormatError("malformed XML", line, column) from e

    if root.tag != "doc":
        raise XmlFormatError(f"expected root element <doc>, found <{root.tag}>")

    sentences = []
    for element in root:
        if element.tag != "s":
            raise XmlFormatError(f"unexpected element <{element.tag}> inside <doc>")
        value = element.get("type")
        judgment = None
        if value is not None:
            if value not in _JUDGMENTS:
                raise UnknownJudgmentError(value)
            judgment = _JUDGMENTS[value]
        sentences.append(AnnotatedSentence(text="".join(element.itertext()), judgment=judgment))
    return AnnotatedDocument(id=root.get("id", ""), sentences=tuple(sentences))


def parse_annotated_xml(data: bytes) -> List[AnnotatedSentence]:
    return list(parse_annotated_document(data).sentences)
