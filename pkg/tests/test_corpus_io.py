import logging

import pytest
from hypothesis import given, settings, strategies as st

from errors import (
    CorpusEncodingError,
    CorpusIOError,
    DataFormatError,
    ModelFormatError,
    UnknownJudgmentError,
    UnsupportedModelVersionError,
    XmlFormatError,
)
from ingestion.loader import load_corpus, normalize_source
from ingestion.splitter import dev_line_count, split_corpus
from models import Judgment, NUMBER_KEY, Parameters, SegmentedDocument, Sentence
from serialization.files import atomic_write_bytes, read_bytes
from serialization.params_io import load_params, save_params
from serialization.xml_io import emit_xml, parse_annotated_document, parse_annotated_xml

from conftest import SORANI_LETTERS, make_document

XML_ILLEGAL = "".join(chr(c) for c in range(0x20) if chr(c) not in "\t\n\r") + "\ufffe\uffff"
xml_text = st.text(
    alphabet=st.characters(blacklist_categories=("Cs",), blacklist_characters=XML_ILLEGAL),
    max_size=30,
)
model_keys = st.text(alphabet=SORANI_LETTERS + ".[]\\\u200c", min_size=1, max_size=6)


def lines_of(n: int, prefix: str = "ڕستە") -> str:
    return "\n".join(f"{prefix} {i}." for i in range(n))


class TestLoadCorpus:
    def test_empty_directory(self, write_tree):
        assert load_corpus(write_tree({})) == []

    def test_missing_directory(self, tmp_path):
        with pytest.raises(CorpusIOError) as info:
            load_corpus(tmp_path / "absent")
        assert info.value.exit_code == 2

    def test_ids_and_strata(self, write_tree):
        root = write_tree({
            "math/grade7.txt": "ا\nب\n",
            "history/grade8.txt": "ج",
            "notes.md": "skipped",
        })
        docs = load_corpus(root, workers=1)
        assert [(d.id, d.strata_key) for d in docs] == [("history/grade8", "history/grade8"), ("math/grade7", "math/grade7")]
        assert [line.text for line in docs[1].lines] == ["ا", "ب"]
        assert docs[1].trailing_newline

    def test_top_level_file_uses_its_stem(self, write_tree):
        docs = load_corpus(write_tree({"lesson.txt": "ا"}))
        assert (docs[0].id, docs[0].strata_key) == ("lesson", "lesson")

    def test_bom_and_line_endings(self, write_tree):
        root = write_tree({"a/b.txt": b"\xef\xbb\xbf\xd8\xa7\r\n\xd8\xa8\r\xd8\xac"})
        doc = load_corpus(root)[0]
        assert [line.text for line in doc.lines] == ["ا", "ب", "ج"]
        assert [line.source_span for line in doc.lines] == [(0, 2), (3, 5), (6, 8)]

    def test_text_is_nfc(self):
        assert normalize_source("e\u0301".encode("utf-8")) == "\u00e9"

    def test_controls_are_made_xml_safe(self):
        assert normalize_source(b"a\x0cb\x1fc\x0bd") == "a b c d"
        assert normalize_source(b"a\x01b\x00c") == "a\ufffdb\ufffdc"
        assert normalize_source(b"a\tb\r\nc") == "a\tb\nc"

    def test_invalid_utf8_reports_offset(self, write_tree):
        root = write_tree({"a/b.txt": b"ab\xffc"})
        with pytest.raises(CorpusEncodingError) as info:
            load_corpus(root)
        assert info.value.offset == 2
        assert info.value.exit_code == 3
        assert "byte offset 2" in str(info.value)

    def test_workers_keep_order(self, write_tree):
        root = write_tree({f"s{i}/g.txt": f"ا {i}" for i in range(6)})
        assert load_corpus(root, workers=4) == load_corpus(root, workers=1)


class TestSplit:
    def test_ten_lines(self):
        result = split_corpus([make_document(lines_of(10))], 0.9)
        assert [len(d.lines) for d in result.dev] == [9]
        assert [len(d.lines) for d in result.test] == [1]
        assert result.dev[0].id == "doc#dev"
        assert result.test[0].id == "doc#test"
        assert result.test[0].lines[0].text == "ڕستە 9."

    def test_single_line_goes_to_dev(self):
        result = split_corpus([make_document("ا")], 0.9)
        assert len(result.dev[0].lines) == 1
        assert result.test == ()

    def test_two_strata(self):
        docs = [make_document(lines_of(20), "math/grade7", "math/grade7"),
                make_document(lines_of(20), "history/grade8", "history/grade8")]
        result = split_corpus(docs, 0.9)
        assert sum(len(d.lines) for d in result.dev) == 36
        assert sum(len(d.lines) for d in result.test) == 4
        assert [d.id for d in result.test] == ["history/grade8#test", "math/grade7#test"]

    def test_empty_document_goes_to_dev_with_warning(self, caplog):
        with caplog.at_level(logging.WARNING):
            result = split_corpus([make_document("", "empty"), make_document(lines_of(10), "full")], 0.9)
        assert "empty#dev" in [d.id for d in result.dev]
        assert "empty" in caplog.text

    @pytest.mark.parametrize("ratio", [0, 1, 1.5, -0.1])
    def test_rejects_bad_ratio(self, ratio):
        with pytest.raises(ValueError):
            split_corpus([make_document("ا")], ratio)

    def test_rejects_empty_corpus(self):
        with pytest.raises(ValueError):
            split_corpus([], 0.9)

    def test_exact_rational_cut(self):
        assert dev_line_count(10, 0.9) == 9
        assert dev_line_count(3, 0.5) == 2
        assert dev_line_count(0, 0.9) == 0

    @settings(max_examples=1000, deadline=None)
    @given(st.integers(1, 60), st.sampled_from([0.1, 0.5, 0.8, 0.9, 0.95]))
    def test_lines_are_partitioned_in_order(self, n, ratio):
        doc = make_document(lines_of(n))
        result = split_corpus([doc], ratio)
        dev_lines = result.dev[0].lines
        test_lines = result.test[0].lines if result.test else ()
        assert dev_lines + test_lines == doc.lines
        assert len(dev_lines) >= 1
        assert len(test_lines) <= n - ratio * n + 1e-9


class TestXml:
    def test_emit(self):
        doc = SegmentedDocument(id="math/grade7", sentences=(Sentence(text="ا & ب"), Sentence(text="<ج>")))
        assert emit_xml(doc, {1: Judgment.FP}) == (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            '<doc id="math/grade7">\n'
            "  <s>ا &amp; ب</s>\n"
            '  <s type="fp">&lt;ج&gt;</s>\n'
            "</doc>\n"
        ).encode("utf-8")

    def test_emit_empty_document(self):
        assert emit_xml(SegmentedDocument(id="d")).decode("utf-8").splitlines()[-1] == '<doc id="d"/>'

    def test_emit_rejects_out_of_range_judgment(self):
        with pytest.raises(DataFormatError):
            emit_xml(SegmentedDocument(id="d", sentences=(Sentence(text="ا"),)), {1: Judgment.TP})

    def test_emit_escapes_quotes_and_controls(self):
        doc = SegmentedDocument(id="x\"y'z\t<", sentences=(Sentence(text="\"ا\" 'ب'\r"),))
        lines = emit_xml(doc).decode("utf-8").splitlines()
        assert lines[1] == '<doc id="x&quot;y&apos;z&#9;&lt;">'
        assert lines[2] == "  <s>&quot;ا&quot; &apos;ب&apos;&#13;</s>"

    def test_emit_rejects_control_characters(self):
        with pytest.raises(DataFormatError):
            emit_xml(SegmentedDocument(id="d", sentences=(Sentence(text="ا\x01"),)))

    def test_parse_judgments(self):
        data = '<doc id="x"><s type="tp">ا.</s><s type="fp">ب</s><s>ج</s></doc>'.encode("utf-8")
        doc = parse_annotated_document(data)
        assert doc.id == "x"
        assert [(s.text, s.judgment) for s in doc.sentences] == [
            ("ا.", Judgment.TP), ("ب", Judgment.FP), ("ج", None)]
        assert parse_annotated_xml(data) == list(doc.sentences)

    def test_unknown_judgment(self):
        with pytest.raises(UnknownJudgmentError) as info:
            parse_annotated_document(b'<doc><s type="xx">a</s></doc>')
        assert "unknown judgment xx" in str(info.value)
        assert info.value.exit_code == 3

    def test_malformed_xml_has_position(self):
        with pytest.raises(XmlFormatError) as info:
            parse_annotated_document(b"<doc>\n<s>a</doc>")
        assert info.value.line == 2

    @pytest.mark.parametrize("data", [b"<text><s>a</s></text>", b"<doc><p>a</p></doc>"])
    def test_unexpected_elements(self, data):
        with pytest.raises(XmlFormatError):
            parse_annotated_document(data)

    @settings(max_examples=1000, deadline=None)
    @given(xml_text, st.lists(st.tuples(xml_text, st.none() | st.sampled_from(list(Judgment))), max_size=6))
    def test_emitted_xml_parses_back(self, doc_id, rows):
        doc = SegmentedDocument(id=doc_id, sentences=tuple(Sentence(text=text) for text, _ in rows))
        judgments = {i: judgment for i, (_, judgment) in enumerate(rows) if judgment is not None}
        parsed = parse_annotated_document(emit_xml(doc, judgments))
        assert parsed.id == doc_id
        assert [(s.text, s.judgment) for s in parsed.sentences] == rows


class TestModelFile:
    def test_exact_layout(self):
        params = Parameters(
            abbrev_types={"د"}, collocations={(NUMBER_KEY, "بەش")}, sentence_starters={"ئەم"}, forced_abbrevs={"م"})
        assert save_params(params).decode("utf-8") == (
            "PUNKTPARAMS v1\n"
            "[abbreviations]\nد\n"
            f"[collocations]\n{NUMBER_KEY}\tبەش\n"
            "[sentence_starters]\nئەم\n"
            "[forced_abbreviations]\nم\n"
        )

    def test_empty_model(self):
        assert load_params(save_params(Parameters())) == Parameters()

    @settings(max_examples=1000, deadline=None)
    @given(
        st.frozensets(model_keys, max_size=5),
        st.frozensets(st.tuples(model_keys | st.just(NUMBER_KEY), model_keys), max_size=5),
        st.frozensets(model_keys, max_size=5),
        st.frozensets(model_keys, max_size=5),
    )
    def test_saved_models_load_back(self, abbrevs, collocations, starters, forced):
        params = Parameters(
            abbrev_types=abbrevs, collocations=collocations, sentence_starters=starters, forced_abbrevs=forced)
        assert load_params(save_params(params)) == params

    def test_unsupported_version(self):
        with pytest.raises(UnsupportedModelVersionError) as info:
            load_params(b"PUNKTPARAMS v999\n[abbreviations]\n")
        assert info.value.exit_code == 3

    @pytest.mark.parametrize("data", [
        b"",
        b"something else\n",
        "PUNKTPARAMS v1\nد\n".encode("utf-8"),
        b"PUNKTPARAMS v1\n[unknown]\n",
        "PUNKTPARAMS v1\n[collocations]\nد بەش\n".encode("utf-8"),
        f"PUNKTPARAMS v1\n[abbreviations]\n{NUMBER_KEY}\n".encode("utf-8"),
        b"PUNKTPARAMS v1\n\xff\n",
    ])
    def test_malformed_models(self, data):
        with pytest.raises(ModelFormatError):
            load_params(data)

    def test_duplicates_are_collapsed_with_a_warning(self, caplog):
        data = "PUNKTPARAMS v1\r\n[abbreviations]\r\nد\r\nد\r\n".encode("utf-8")
        with caplog.at_level(logging.WARNING):
            params = load_params(data)
        assert params.abbrev_types == {"د"}
        assert "duplicate" in caplog.text


class TestFiles:
    def test_atomic_write_replaces_content(self, tmp_path):
        target = tmp_path / "out" / "model.txt"
        atomic_write_bytes(target, b"one")
        atomic_write_bytes(target, b"two")
        assert read_bytes(target) == b"two"
        assert [p.name for p in target.parent.iterdir()] == ["model.txt"]

    def test_unwritable_target(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_bytes(b"")
        with pytest.raises(CorpusIOError):
            atomic_write_bytes(blocker / "model.txt", b"x")

    def test_missing_file(self, tmp_path):
        with pytest.raises(CorpusIOError) as info:
            read_bytes(tmp_path / "absent.txt")
        assert info.value.exit_code == 2
