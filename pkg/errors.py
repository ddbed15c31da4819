"""Exceptions raised by the segmenter; each carries the CLI exit code it maps to."""


class SegmenterError(Exception):
    exit_code = 1


class UsageError(SegmenterError):
    exit_code = 1


class CorpusIOError(SegmenterError):
    """A file or directory could not be read or written."""

    exit_code = 2

    def __init__(self, path, reason: str):
        self.path = path
        super().__init__(f"{path}: {reason}")


class DataFormatError(SegmenterError, ValueError):
    exit_code = 3


class CorpusEncodingError(DataFormatError):
    def __init__(self, path, offset: int):
        self.path = path
        self.offset = offset
        super().__init__(f"{path}: invalid UTF-8 at byte offset {offset}")


class XmlFormatError(DataFormatError):
    def __init__(self, message: str, line: int = None, column: int = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnknownJudgmentError(XmlFormatError):
    def __init__(self, value: str):
        self.value = value
        super().__init__(f"unknown judgment {value}")


class MissingJudgmentError(DataFormatError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"sentence {index} has no judgment")


class ModelFormatError(DataFormatError):
    pass


class UnsupportedModelVersionError(ModelFormatError):
    def __init__(self, header: str):
        self.header = header
        super().__init__(f"unsupported model version: {header!r}")


class DocumentsNotComparableError(DataFormatError):
    def __init__(self, detail: str = ""):
        message = "documents not comparable"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class UndefinedMetricError(SegmenterError, ValueError):
    exit_code = 3

    def __init__(self, metric: str):
        self.metric = metric
        super().__init__(f"undefined metric: {metric}")
