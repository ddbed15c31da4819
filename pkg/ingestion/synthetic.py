"""Small bundled Sorani corpus with gold segmentation, used by `reproduce` when no corpus is given.

Every file has 20 lines: the first 18 land in dev under the default split and
read like textbook lessons (titles without punctuation, numbered headings,
dash and underscore list items, question and statement sentences). The last
two are held out and carry the contexts the abbreviation ablation measures:
a forced abbreviation in the middle of a sentence, followed by a name the
trainer has never seen, and an ordinal numeral heading it has no collocation
for.
"""
from pathlib import Path
from typing import Dict, List, Tuple
import logging

from evaluation.alignment import segmented_from_texts
from serialization.files import atomic_write_bytes
from serialization.xml_io import emit_xml

logger = logging.getLogger(__name__)

TEXT_DIR = "text"
GOLD_DIR = "gold"

# subject -> (title, nouns)
SUBJECTS = {
    "math": ("بیرکاری", (
        "ژمارە", "هاوکێشە", "سێگۆشە", "بازنە", "کۆکردنەوە",
        "لێدەرکردن", "لێکدان", "دابەشکردن", "گۆشە", "ڕووبەر",
    )),
    "science": ("زانست", (
        "ئاو", "ڕووەک", "خانە", "وزە", "هەوا",
        "خۆر", "گەرمی", "ماددە", "ئاژەڵ", "زەوی",
    )),
    "history": ("مێژوو", (
        "شارستانیەت", "پاشا", "شار", "جەنگ", "ئیمپراتۆریەت",
        "مێژوونووس", "کۆشک", "نووسین", "بازرگانی", "ئایین",
    )),
}

LEVELS = {"grade7": "حەوتەم", "grade8": "هەشتەم"}

ORDINALS = ("یەکەم", "دووەم", "سێیەم")
VERBS = ("دەخوێنین", "دەناسین", "دەبینین", "بەکاردەهێنین", "ڕوون دەکەینەوە")
ADVERBS = ("بە وردی", "لە ژیاندا", "بە نموونە")

HEADING_LINES = (1, 7, 13)

# (subject, level) -> held-out lines, each a list of gold sentences
HELD_OUT: Dict[Tuple[str, str], Tuple[List[str], ...]] = {
    ("math", "grade7"): (
        ["ئەم وانەیە لەلایەن د. ئازاد ئامادە کراوە.", "ئایا پرسیارەکان ئاسانن؟"],
        ["4. خشتەی لێکدان"],
    ),
    ("math", "grade8"): (
        ["پ. شێرزاد کتێبەکەی پێداچووەتەوە.", "سوپاس بۆ ماندووبوونی!"],
        ["4. ڕاهێنانی کۆتایی"],
    ),
    ("science", "grade7"): (
        ["م. هێمن ئەزموونەکەی لە تاقیگە ڕوونکردەوە.", "ئەنجامەکە سەرسوڕهێنەر بوو."],
        ["4. خشتەی توخمەکان"],
    ),
    ("science", "grade8"): (
        ["ئەم بابەتە لەلایەن د. کاوە نووسراوە.", "ئایا ڕووەکەکان هەناسە دەدەن؟"],
        ["4. خشتەی وزەکان"],
    ),
    ("history", "grade7"): (
        ["پێغەمبەر محەممەد (د.خ.) لە مەککە لەدایکبووە.", "ئایا ئەم ڕووداوە گرنگە؟"],
        ["4. خشتەی ڕووداوەکان"],
    ),
    ("history", "grade8"): (
        ["شاری نەینەوا لە ساڵی 612 پ\u200c.\u200cز. ڕووخێنرا.", "ئەمە کۆتایی ئیمپراتۆریەتی ئاشوور بوو."],
        ["4. خشتەی پاشاکان"],
    ),
}


def _lesson_line(index: int, offset: int, title: str, level: str, nouns: Tuple[str, ...]) -> List[str]:
    """Gold sentences of dev line `index` for the file at position `offset`."""

    def noun(j: int) -> str:
        return nouns[(j + offset) % len(nouns)]

    def verb(j: int) -> str:
        return VERBS[(j + offset) % len(VERBS)]

    if index == 0:
        return [f"{title} بۆ پۆلی {level}"]
    if index in HEADING_LINES:
        k = HEADING_LINES.index(index)
        return [f"{k + 1}. وانەی {ORDINALS[k]}"]
    if index == 4:
        return [f"1- {noun(index)}"]
    if index == 10:
        return [f"2_ {noun(index)}"]
    if index == 16:
        return [f"{noun(index)} ... {verb(index)}."]
    if index % 3 == 2:
        return [f"ئایا {noun(index)} گرنگە؟", f"لەم وانەیەدا {noun(index + 1)} {verb(index)}."]
    return [
        f"{noun(index)} {ADVERBS[index % len(ADVERBS)]} {verb(index)}.",
        f"{noun(index + 2)} {verb(index + 1)} و {noun(index + 3)} {verb(index + 2)}.",
    ]


def synthetic_corpus() -> Dict[str, List[List[str]]]:
    """Relative path (without suffix) -> lines, each line a list of gold sentences."""
    corpus = {}
    offset = 0
    for subject, (title, nouns) in SUBJECTS.items():
        for level, level_word in LEVELS.items():
            lines = [_lesson_line(i, offset, title, level_word, nouns) for i in range(18)]
            lines.extend(HELD_OUT[(subject, level)])
            corpus[f"{subject}/{level}"] = lines
            offset += 1
    return corpus


def write_synthetic_corpus(root: Path) -> Path:
    """Write text/<subject>/<level>.txt and gold/<subject>/<level>.xml under `root`."""
    root = Path(root)
    for relative, lines in synthetic_corpus().items():
        text = "".join(" ".join(sentences) + "\n" for sentences in lines)
        gold = segmented_from_texts(relative, [s for sentences in lines for s in sentences])
        atomic_write_bytes(root / TEXT_DIR / f"{relative}.txt", text.encode("utf-8"))
        atomic_write_bytes(root / GOLD_DIR / f"{relative}.xml", emit_xml(gold))
    logger.info(f"Wrote synthetic corpus to {root}")
    return root
