from typing import FrozenSet, Iterable, Optional, Tuple
from enum import Enum

from nltk.probability import FreqDist
from nltk.tokenize.punkt import PunktParameters
from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, field_validator

# (start, end) UTF-8 byte offsets
Span = Tuple[int, int]

NUMBER_KEY = "##number##"


class Judgment(str, Enum):
    TP = "tp"
    TN = "tn"
    FP = "fp"
    FN = "fn"


class TokenFlag(str, Enum):
    PERIOD_FINAL = "period_final"
    ELLIPSIS = "ellipsis"
    NUMBER = "number"
    UNAMBIGUOUS_ENDER = "unambiguous_ender"
    LINE_START = "line_start"
    LINE_END = "line_end"


class DecisionKind(str, Enum):
    SENTENCE_BREAK = "sentence_break"
    ABBREVIATION = "abbreviation"
    ABBREVIATION_AND_BREAK = "abbreviation_and_break"
    ELLIPSIS = "ellipsis"
    NONE = "none"


# --- corpus ---------------------------------------------------------------

class Line(BaseModel):
    model_config = ConfigDict(frozen=True)

    text: str
    source_span: Span


class Document(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    strata_key: str
    lines: Tuple[Line, ...] = ()
    trailing_newline: bool = False

    def text(self) -> str:
        """Normalized source text rebuilt from the lines."""
        body = "\n".join(line.text for line in self.lines)
        if self.trailing_newline and self.lines:
            body += "\n"
        return body


class CorpusSplit(BaseModel):
    model_config = ConfigDict(frozen=True)

    dev: Tuple[Document, ...]
    test: Tuple[Document, ...]
    ratio: float = Field(gt=0, lt=1)


class AnnotatedSentence(BaseModel):
    model_config = ConfigDict(frozen=True)

    text: str
    judgment: Optional[Judgment] = None


class AnnotatedDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    sentences: Tuple[AnnotatedSentence, ...] = ()


class CorpusStats(BaseModel):
    documents: int = 0
    lines: int = 0
    tokens: int = 0
    types: int = 0


# --- tokens ---------------------------------------------------------------

class Token(BaseModel):
    model_config = ConfigDict(frozen=True)

    text: str
    span: Span
    flags: FrozenSet[TokenFlag] = frozenset()

    @property
    def period_final(self) -> bool:
        return TokenFlag.PERIOD_FINAL in self.flags

    @property
    def ellipsis(self) -> bool:
        return TokenFlag.ELLIPSIS in self.flags

    @property
    def is_number(self) -> bool:
        return TokenFlag.NUMBER in self.flags

    @property
    def unambiguous_ender(self) -> bool:
        return TokenFlag.UNAMBIGUOUS_ENDER in self.flags

    @property
    def line_end(self) -> bool:
        return TokenFlag.LINE_END in self.flags


# --- training -------------------------------------------------------------

class CountTable(BaseModel):
    """Corpus statistics behind the three detectors. Merging is pointwise addition."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n_tokens: NonNegativeInt = 0
    n_periods: NonNegativeInt = 0
    c_with_period: FreqDist = Field(default_factory=FreqDist)
    c_without_period: FreqDist = Field(default_factory=FreqDist)
    bigrams: FreqDist = Field(default_factory=FreqDist)
    starts: FreqDist = Field(default_factory=FreqDist)
    n_starts: NonNegativeInt = 0

    @field_validator("c_with_period", "c_without_period", "bigrams", "starts", mode="before")
    @classmethod
    def _as_freq_dist(cls, value):
        if isinstance(value, FreqDist):
            return value
        return FreqDist(dict(value))

    def count(self, key: str) -> int:
        """Occurrences of an exact type key."""
        if key.endswith("."):
            return self.c_with_period[key]
        return self.c_without_period[key]

    def type_count(self, stripped: str) -> int:
        """Occurrences of a period-stripped type, with or without its period."""
        return self.c_with_period[stripped + "."] + self.c_without_period[stripped]

    def merge(self, other: "CountTable") -> "CountTable":
        return CountTable(
            n_tokens=self.n_tokens + other.n_tokens,
            n_periods=self.n_periods + other.n_periods,
            c_with_period=self.c_with_period + other.c_with_period,
            c_without_period=self.c_without_period + other.c_without_period,
            bigrams=self.bigrams + other.bigrams,
            starts=self.starts + other.starts,
            n_starts=self.n_starts + other.n_starts,
        )

    __add__ = merge


class TrainerConfig(BaseModel):
    abbrev_threshold: float = Field(0.3, gt=0)
    colloc_threshold: float = Field(7.88, gt=0)
    starter_threshold: float = Field(30.0, gt=0)


class Parameters(BaseModel):
    """A trained model plus the forced abbreviations supplied by the user."""

    model_config = ConfigDict(frozen=True)

    abbrev_types: FrozenSet[str] = frozenset()
    collocations: FrozenSet[Tuple[str, str]] = frozenset()
    sentence_starters: FrozenSet[str] = frozenset()
    forced_abbrevs: FrozenSet[str] = frozenset()

    @field_validator("abbrev_types")
    @classmethod
    def _no_number_abbrevs(cls, value):
        if NUMBER_KEY in value:
            raise ValueError(f"{NUMBER_KEY} cannot be an abbreviation type")
        return value

    def with_forced(self, keys) -> "Parameters":
        return self.model_copy(update={"forced_abbrevs": frozenset(keys)})

    @classmethod
    def from_punkt(cls, punkt: PunktParameters, forced: Iterable[str] = ()) -> "Parameters":
        return cls(
            abbrev_types=frozenset(punkt.abbrev_types),
            collocations=frozenset(punkt.collocations),
            sentence_starters=frozenset(punkt.sent_starters),
            forced_abbrevs=frozenset(forced),
        )


# --- segmentation ---------------------------------------------------------

class BoundaryDecision(BaseModel):
    model_config = ConfigDict(frozen=True)

    token_index: int
    kind: DecisionKind = DecisionKind.NONE
    reason: str = ""

    @property
    def ends_sentence(self) -> bool:
        return self.kind in (DecisionKind.SENTENCE_BREAK, DecisionKind.ABBREVIATION_AND_BREAK)


class Sentence(BaseModel):
    model_config = ConfigDict(frozen=True)

    text: str
    token_spans: Tuple[Span, ...] = ()
    tokens: Tuple[str, ...] = ()


class SegmentedDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    sentences: Tuple[Sentence, ...] = ()

    def texts(self) -> list:
        return [sentence.text for sentence in self.sentences]


# --- evaluation -----------------------------------------------------------

class ConfusionCounts(BaseModel):
    model_config = ConfigDict(frozen=True)

    tp: NonNegativeInt = 0
    tn: NonNegativeInt = 0
    fp: NonNegativeInt = 0
    fn: NonNegativeInt = 0

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(
            tp=self.tp + other.tp,
            tn=self.tn + other.tn,
            fp=self.fp + other.fp,
            fn=self.fn + other.fn,
        )


class Metrics(BaseModel):
    model_config = ConfigDict(frozen=True)

    precision: float = Field(ge=0, le=1)
    recall: float = Field(ge=0, le=1)
    f1: float = Field(ge=0, le=1)
    error_rate: float = Field(ge=0, le=1)
