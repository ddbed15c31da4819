import logging

import pytest

from ingestion.loader import load_corpus
from ingestion.pipeline import REPORT_ROWS, WITH, WITHOUT, SegmentationPipeline, base_id, resolve_layout
from ingestion.synthetic import GOLD_DIR, TEXT_DIR, synthetic_corpus
from models import NUMBER_KEY
from serialization.xml_io import parse_annotated_document


@pytest.fixture
def report(synthetic_root):
    return SegmentationPipeline(workers=1).run(synthetic_root)


def test_base_id():
    assert base_id("math/grade7#dev") == "math/grade7"
    assert base_id("math/grade7#test") == "math/grade7"
    assert base_id("math/grade7") == "math/grade7"


def test_resolve_layout(synthetic_root, tmp_path):
    assert resolve_layout(synthetic_root) == (synthetic_root / TEXT_DIR, synthetic_root / GOLD_DIR)
    assert resolve_layout(tmp_path) == (tmp_path, None)
    assert resolve_layout(synthetic_root, tmp_path) == (synthetic_root / TEXT_DIR, tmp_path)


def test_synthetic_corpus_shape(synthetic_root):
    corpus = synthetic_corpus()
    assert len(corpus) == 6
    assert all(len(lines) == 20 for lines in corpus.values())
    docs = load_corpus(synthetic_root / TEXT_DIR)
    assert [doc.id for doc in docs] == sorted(corpus)
    gold = parse_annotated_document((synthetic_root / GOLD_DIR / "math" / "grade7.xml").read_bytes())
    assert len(gold.sentences) == sum(len(line) for line in corpus["math/grade7"])


def test_trained_model(report):
    assert report.params.forced_abbrevs == frozenset()
    assert any(first == NUMBER_KEY for first, _ in report.params.collocations)


def test_forced_abbreviations_remove_false_positives(report):
    without, with_ = report.runs
    assert (without.label, with_.label) == (WITHOUT, WITH)
    assert (without.counts.tp, without.counts.fp, without.counts.fn) == (18, 12, 0)
    assert (with_.counts.tp, with_.counts.fp, with_.counts.fn) == (18, 6, 0)
    assert with_.metrics.precision > without.metrics.precision
    assert with_.metrics.recall == without.metrics.recall == 1.0
    assert with_.metrics.error_rate < without.metrics.error_rate
    assert (without.sentences, with_.sentences) == (30, 24)


def test_report_table(report):
    table = report.table()
    assert list(table.index) == list(REPORT_ROWS)
    assert list(table.columns) == [WITHOUT, WITH]
    assert table.loc["fp", WITHOUT] == 12
    assert table.loc["precision", WITH] == "75.00%"
    assert table.loc["recall", WITHOUT] == "100.00%"


def test_without_gold_only_counts_sentences(synthetic_root, caplog):
    with caplog.at_level(logging.WARNING):
        report = SegmentationPipeline(workers=1).run(synthetic_root / TEXT_DIR)
    assert all(run.counts is None and run.metrics is None for run in report.runs)
    assert report.table().loc["tp", WITHOUT] == ""
    assert report.table().loc["sentences", WITH] == 24
    assert "No gold" in caplog.text


def test_write_outputs(report, tmp_path):
    SegmentationPipeline.write_outputs(report, tmp_path)
    assert (tmp_path / "model.txt").read_bytes().startswith(b"PUNKTPARAMS v1")
    with_doc = parse_annotated_document((tmp_path / "with" / "math" / "grade7.xml").read_bytes())
    without_doc = parse_annotated_document((tmp_path / "without" / "math" / "grade7.xml").read_bytes())
    assert with_doc.id == without_doc.id == "math/grade7#test"
    assert (len(without_doc.sentences), len(with_doc.sentences)) == (5, 4)
