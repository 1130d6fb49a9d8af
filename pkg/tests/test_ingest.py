import io
import json
import random

import numpy as np
import pytest

from fbeta_plot.core.errors import (
    BadCell,
    DuplicateKey,
    MalformedDocument,
    MissingHeader,
    MixedPayload,
    NoPositiveInstances,
    RaggedFolds,
    UnknownInputKind,
    ValueOutOfRange,
)
from fbeta_plot.core.metrics import ConfusionCounts, PointEstimate
from fbeta_plot.ingest import (
    CountsCsvReader,
    ReaderFactory,
    RunEntry,
    RunTable,
    emit_counts_csv,
    emit_rates_json,
    parse_counts_csv,
    parse_predictions_csv,
    parse_rates_json,
    to_records,
)

COUNTS_HEADER = "classifier,fold,tp,fn,fp,tn\n"
PREDICTIONS_HEADER = "classifier,fold,y_true,y_pred\n"


def counts(text):
    return parse_counts_csv(io.StringIO(text))


class TestCountsCsv:
    def test_single_row(self):
        table = counts(COUNTS_HEADER + "A,0,50,10,5,935\n")
        assert len(table.entries) == 1
        entry = table.entries[0]
        assert (entry.classifier, entry.fold) == ("A", 0)
        assert entry.payload == ConfusionCounts(tp=50, fn_=10, fp=5, tn=935)
        assert table.mode == 'hold-out'

    def test_windows_line_endings(self):
        table = counts("classifier,fold,tp,fn,fp,tn\r\nA,0,50,10,5,935\r\nB,0,1,2,3,4\r\n")
        assert table.classifiers == ["A", "B"]

    def test_byte_order_mark_is_ignored(self):
        table = counts("\ufeff" + COUNTS_HEADER + "A,0,1,1,1,1\n")
        assert table.classifiers == ["A"]

    def test_duplicate_key(self):
        with pytest.raises(DuplicateKey) as excinfo:
            counts(COUNTS_HEADER + "A,0,1,1,1,1\nA,0,2,2,2,2\n")
        assert (excinfo.value.classifier, excinfo.value.fold, excinfo.value.row) == ("A", 0, 3)

    def test_ragged_folds(self):
        with pytest.raises(RaggedFolds) as excinfo:
            counts(COUNTS_HEADER + "A,0,1,1,1,1\nA,1,1,1,1,1\nB,0,1,1,1,1\n")
        assert excinfo.value.classifier == "B"

    @pytest.mark.parametrize("text", [
        "",
        "classifier,fold,tp,fn,fp\nA,0,1,1,1\n",
        "Classifier,Fold,TP,FN,FP,TN\nA,0,1,1,1,1\n",
    ])
    def test_missing_header(self, text):
        with pytest.raises(MissingHeader):
            counts(text)

    @pytest.mark.parametrize("row,column", [
        ("A,0,x,1,1,1", "tp"),
        ("A,0,1,-1,1,1", "fn"),
        ("A,zero,1,1,1,1", "fold"),
        ("A,0,0,0,0,0", "tp"),
        (",0,1,1,1,1", "classifier"),
    ])
    def test_bad_cell(self, row, column):
        with pytest.raises(BadCell) as excinfo:
            counts(COUNTS_HEADER + "B,0,1,1,1,1\n" + row + "\n")
        assert excinfo.value.row == 3
        assert excinfo.value.column == column

    def test_comma_in_name_rejected(self):
        with pytest.raises(BadCell):
            counts(COUNTS_HEADER + "A,B,0,1,1,1,1\n")

    def test_row_order_is_irrelevant(self):
        rows = [f"{name},{fold},{fold + 1},2,3,{10 + fold}" for name in "ABC" for fold in range(4)]
        expected = counts(COUNTS_HEADER + "\n".join(rows) + "\n")
        for seed in range(5):
            shuffled = list(rows)
            random.Random(seed).shuffle(shuffled)
            assert counts(COUNTS_HEADER + "\n".join(shuffled) + "\n") == expected

    def test_emit_then_parse(self):
        table = counts(COUNTS_HEADER + "B,1,4,3,2,1\nA,0,50,10,5,935\nA,1,9,9,9,9\nB,0,1,2,3,4\n")
        text = emit_counts_csv(table)
        assert counts(text) == table
        assert emit_counts_csv(counts(text)) == text
        assert table.mode == 'cross-validation'


class TestPredictionsCsv:
    def test_one_of_each_cell(self):
        text = PREDICTIONS_HEADER + "A,0,1,1\nA,0,1,0\nA,0,0,1\nA,0,0,0\n"
        table = parse_predictions_csv(io.StringIO(text), positive_label="1")
        assert table.entries[0].payload == ConfusionCounts(tp=1, fn_=1, fp=1, tn=1)
        assert table.diagnostics == ()

    def test_always_positive_predictor(self):
        text = PREDICTIONS_HEADER + "A,0,1,1\nA,0,0,1\nA,0,0,1\nA,0,1,1\nA,0,0,1\n"
        payload = parse_predictions_csv(io.StringIO(text)).entries[0].payload
        assert payload.fp == 3
        assert payload.tn == 0

    def test_custom_positive_label(self):
        text = PREDICTIONS_HEADER + "A,0,sick,sick\nA,0,healthy,sick\nA,0,healthy,healthy\n"
        payload = parse_predictions_csv(io.StringIO(text), positive_label="sick").entries[0].payload
        assert payload == ConfusionCounts(tp=1, fn_=0, fp=1, tn=1)

    def test_unseen_positive_label_is_a_diagnostic(self):
        text = PREDICTIONS_HEADER + "A,0,no,yes\nA,0,no,no\n"
        table = parse_predictions_csv(io.StringIO(text), positive_label="1")
        assert len(table.diagnostics) == 1
        assert table.diagnostics[0].startswith("UnseenPositiveLabel")

    def test_matches_independent_tally(self):
        rng = np.random.default_rng(17)
        lines = [PREDICTIONS_HEADER]
        tally = {}
        for _ in range(1000):
            name = str(rng.choice(["A", "B"]))
            fold = int(rng.integers(0, 3))
            y_true = str(rng.choice(["0", "1"], p=[0.85, 0.15]))
            y_pred = str(rng.choice(["0", "1"], p=[0.8, 0.2]))
            lines.append(f"{name},{fold},{y_true},{y_pred}\n")
            cell = {("1", "1"): 0, ("1", "0"): 1, ("0", "1"): 2, ("0", "0"): 3}[(y_true, y_pred)]
            tally.setdefault((name, fold), [0, 0, 0, 0])[cell] += 1

        table = parse_predictions_csv(io.StringIO("".join(lines)))
        observed = {(e.classifier, e.fold): [e.payload.tp, e.payload.fn_, e.payload.fp, e.payload.tn]
                    for e in table.entries}
        assert observed == tally

    def test_empty_label(self):
        with pytest.raises(BadCell) as excinfo:
            parse_predictions_csv(io.StringIO(PREDICTIONS_HEADER + "A,0,,1\n"))
        assert excinfo.value.column == 'y_true'

    def test_ragged_folds(self):
        text = PREDICTIONS_HEADER + "A,0,1,1\nA,1,1,0\nB,0,1,1\n"
        with pytest.raises(RaggedFolds):
            parse_predictions_csv(io.StringIO(text))


class TestRatesJson:
    def test_single_record(self):
        table = parse_rates_json(io.StringIO('{"A":[{"fold":0,"ppv":0.9,"tpr":0.6}]}'))
        assert table.entries == (RunEntry("A", 0, PointEstimate(0.9, 0.6)),)

    def test_value_out_of_range(self):
        with pytest.raises(ValueOutOfRange) as excinfo:
            parse_rates_json(io.StringIO('{"A":[{"fold":3,"ppv":1.2,"tpr":0.6}]}'))
        assert (excinfo.value.classifier, excinfo.value.fold, excinfo.value.field) == ("A", 3, "ppv")

    def test_nan_rejected(self):
        with pytest.raises(ValueOutOfRange):
            parse_rates_json(io.StringIO('{"A":[{"fold":0,"ppv":NaN,"tpr":0.6}]}'))

    @pytest.mark.parametrize("text", [
        '{"A":[{"fold":0,"ppv":0.9,"tpr":0.6,"f1":0.72}]}',
        '{"A":[{"fold":0,"ppv":0.9}]}',
        '{"A":[{"fold":-1,"ppv":0.9,"tpr":0.6}]}',
        '{"A":[{"fold":0,"ppv":"0.9","tpr":0.6}]}',
        '{"A":[]}',
        '[{"fold":0,"ppv":0.9,"tpr":0.6}]',
        '{"A":[{"fold":0,"ppv":0.9,',
    ])
    def test_malformed(self, text):
        with pytest.raises(MalformedDocument):
            parse_rates_json(io.StringIO(text))

    def test_duplicate_fold(self):
        with pytest.raises(DuplicateKey):
            parse_rates_json(io.StringIO('{"A":[{"fold":0,"ppv":0.9,"tpr":0.6},{"fold":0,"ppv":0.8,"tpr":0.6}]}'))

    def test_repeated_classifier_key(self):
        text = '{"A":[{"fold":0,"ppv":0.9,"tpr":0.6}],"A":[{"fold":0,"ppv":0.1,"tpr":0.2}]}'
        with pytest.raises(DuplicateKey) as excinfo:
            parse_rates_json(io.StringIO(text))
        assert (excinfo.value.classifier, excinfo.value.fold) == ("A", 0)

    def test_repeated_classifier_key_with_other_folds(self):
        text = '{"A":[{"fold":0,"ppv":0.9,"tpr":0.6}],"B":[{"fold":0,"ppv":0.5,"tpr":0.5}],' \
               '"A":[{"fold":1,"ppv":0.1,"tpr":0.2}]}'
        with pytest.raises(DuplicateKey) as excinfo:
            parse_rates_json(io.StringIO(text))
        assert (excinfo.value.classifier, excinfo.value.fold) == ("A", None)

    def test_repeated_field_in_item(self):
        with pytest.raises(MalformedDocument, match="ppv"):
            parse_rates_json(io.StringIO('{"A":[{"fold":0,"ppv":0.9,"ppv":0.1,"tpr":0.6}]}'))

    def test_emit_then_parse(self):
        rng = np.random.default_rng(23)
        entries = [RunEntry(name, fold, PointEstimate(float(p), float(t)))
                   for name in ("B", "A", "C") for fold in range(3)
                   for p, t in [rng.uniform(0, 1, 2)]]
        table = RunTable(entries=tuple(entries))
        text = emit_rates_json(table)
        assert parse_rates_json(io.StringIO(text)) == table
        assert list(json.loads(text)) == ["A", "B", "C"]


class TestRunTable:
    def test_mixed_payload(self):
        with pytest.raises(MixedPayload):
            RunTable(entries=(RunEntry("A", 0, PointEstimate(0.5, 0.5)),
                              RunEntry("B", 0, ConfusionCounts(1, 1, 1, 1))))

    def test_entries_are_sorted(self):
        table = RunTable(entries=(RunEntry("B", 1, PointEstimate(0.1, 0.2)),
                                  RunEntry("A", 1, PointEstimate(0.3, 0.4)),
                                  RunEntry("B", 0, PointEstimate(0.5, 0.6)),
                                  RunEntry("A", 0, PointEstimate(0.7, 0.8))))
        assert [(e.classifier, e.fold) for e in table.entries] == [("A", 0), ("A", 1), ("B", 0), ("B", 1)]
        assert table.fold_ids == [0, 1]


class TestToRecords:
    def test_counts_are_converted(self):
        records = to_records(counts(COUNTS_HEADER + "A,0,50,10,5,935\n"))
        estimate = records[0].folds[0]
        assert estimate.ppv == pytest.approx(0.909091, abs=1e-6)
        assert estimate.tpr == pytest.approx(0.833333, abs=1e-6)

    def test_estimates_pass_through(self):
        table = parse_rates_json(io.StringIO('{"A":[{"fold":1,"ppv":0.2,"tpr":0.3},{"fold":0,"ppv":0.9,"tpr":0.6}]}'))
        record = to_records(table)[0]
        assert record.folds == (PointEstimate(0.9, 0.6), PointEstimate(0.2, 0.3))

    def test_sorted_by_name(self):
        table = parse_rates_json(io.StringIO(
            '{"B":[{"fold":0,"ppv":0.5,"tpr":0.5}],"A":[{"fold":0,"ppv":0.6,"tpr":0.6}]}'))
        assert [rec.name for rec in to_records(table)] == ["A", "B"]

    def test_context_on_missing_positives(self):
        table = counts(COUNTS_HEADER + "A,0,1,1,1,1\nA,1,0,0,3,4\n")
        with pytest.raises(NoPositiveInstances) as excinfo:
            to_records(table)
        assert (excinfo.value.classifier, excinfo.value.fold) == ("A", 1)


class TestReaderFactory:
    def test_registered_kinds(self):
        assert ReaderFactory.list_kinds() == ['counts-csv', 'predictions-csv', 'rates-json']

    def test_create(self):
        reader = ReaderFactory.create('counts-csv')
        assert isinstance(reader, CountsCsvReader)

    def test_create_passes_options(self):
        reader = ReaderFactory.create('predictions-csv', positive_label='yes')
        assert reader.positive_label == 'yes'

    def test_unknown_kind(self):
        with pytest.raises(UnknownInputKind):
            ReaderFactory.create('arff')
