import json
import math

import numpy as np
import pytest

from porpob import (
    DataFormatError,
    LabelMap,
    MetricRecord,
    ResultDocument,
    ValidationError,
    dumps_results,
    load_csv,
    load_po_matrix_csv,
    read_results,
    write_csv,
    write_results,
)

from helpers import CLASSROOM_MEANS


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadCsv:
    def test_basic_parse(self, tmp_path):
        path = write(tmp_path, "d.csv", "action,outcome\n1,30\n1,40\n2,50\n2,60\n")
        study, labels = load_csv(path)
        assert study.k == 2
        assert list(study.arm(1).values) == [30.0, 40.0]
        assert list(study.arm(2).values) == [50.0, 60.0]
        assert labels.labels == ("1", "2")

    def test_first_appearance_label_order(self, tmp_path):
        rows = ["action,outcome"]
        for label in ("S", "H", "B"):
            rows += [f"{label},1.0", f"{label},2.0"]
        study, labels = load_csv(write(tmp_path, "d.csv", "\n".join(rows) + "\n"))
        assert labels.labels == ("S", "H", "B")
        assert labels.id_for("B") == 3
        assert labels.label_for(1) == "S"

    def test_duplicate_rows_are_distinct_subjects(self, tmp_path):
        path = write(tmp_path, "d.csv", "action,outcome\na,1\na,1\nb,2\nb,3\n")
        study, _ = load_csv(path)
        assert list(study.arm(1).values) == [1.0, 1.0]

    def test_single_arm_rejected(self, tmp_path):
        path = write(tmp_path, "d.csv", "action,outcome\n1,30\n1,40\n")
        with pytest.raises(ValidationError):
            load_csv(path)

    def test_small_arm_rejected(self, tmp_path):
        path = write(tmp_path, "d.csv", "action,outcome\n1,30\n1,40\n2,50\n")
        with pytest.raises(ValidationError):
            load_csv(path)

    def test_missing_header(self, tmp_path):
        path = write(tmp_path, "d.csv", "a,b\n1,30\n")
        with pytest.raises(DataFormatError):
            load_csv(path)

    def test_non_numeric_outcome_reports_line(self, tmp_path):
        path = write(tmp_path, "d.csv", "action,outcome\n1,30\n1,oops\n2,1\n2,2\n")
        with pytest.raises(DataFormatError, match="line 3"):
            load_csv(path)

    @pytest.mark.parametrize("bad", ["nan", "inf", "-inf"])
    def test_non_finite_rejected(self, tmp_path, bad):
        path = write(tmp_path, "d.csv", f"action,outcome\n1,30\n1,{bad}\n2,1\n2,2\n")
        with pytest.raises(DataFormatError):
            load_csv(path)

    def test_wrong_field_count(self, tmp_path):
        path = write(tmp_path, "d.csv", "action,outcome\n1,30,9\n")
        with pytest.raises(DataFormatError):
            load_csv(path)

    def test_round_trip_through_write_csv(self, tmp_path, rng):
        rows = ["action,outcome"]
        for label in ("S", "H", "B"):
            for v in rng.normal(size=5):
                rows.append(f"{label},{float(v)!r}")
        original = write(tmp_path, "d.csv", "\n".join(rows) + "\n")
        study, labels = load_csv(original)
        copy = tmp_path / "copy.csv"
        write_csv(study, labels, copy)
        study2, labels2 = load_csv(copy)
        assert labels2.labels == labels.labels
        for action in study.actions:
            assert np.array_equal(study.arm(action).values, study2.arm(action).values)


class TestLoadPoMatrixCsv:
    def test_classroom_table(self, classroom_csv):
        matrix, labels = load_po_matrix_csv(classroom_csv)
        assert matrix.n_subjects == 8
        assert labels.labels == ("A", "B", "C")
        assert tuple(matrix.outcomes.mean(axis=0)) == CLASSROOM_MEANS

    def test_empty_body(self, tmp_path):
        with pytest.raises(DataFormatError):
            load_po_matrix_csv(write(tmp_path, "m.csv", "id,A,B\n"))

    def test_ragged_row(self, tmp_path):
        path = write(tmp_path, "m.csv", "id,A,B\n1,1.0,2.0\n2,1.0\n")
        with pytest.raises(DataFormatError, match="line 3"):
            load_po_matrix_csv(path)

    def test_tie_row_flagged(self, tmp_path):
        path = write(tmp_path, "m.csv", "id,A,B,C\n1,5,5,3\n2,1,2,3\n")
        matrix, _ = load_po_matrix_csv(path)
        assert matrix.tie_row_count == 1

    def test_header_checked(self, tmp_path):
        with pytest.raises(DataFormatError):
            load_po_matrix_csv(write(tmp_path, "m.csv", "subject,A,B\n1,1,2\n"))
        with pytest.raises(DataFormatError):
            load_po_matrix_csv(write(tmp_path, "m.csv", "id,A\n1,1\n"))


class TestLabelMap:
    def test_bijection(self):
        labels = LabelMap(("S", "H", "B"))
        assert [labels.id_for(x) for x in ("S", "H", "B")] == [1, 2, 3]
        assert [labels.label_for(i) for i in (1, 2, 3)] == ["S", "H", "B"]

    def test_unknown_label(self):
        with pytest.raises(ValidationError):
            LabelMap(("S",)).id_for("Q")

    def test_duplicates_rejected(self):
        with pytest.raises(ValidationError):
            LabelMap(("S", "S"))


class TestResultDocument:
    def build(self):
        return ResultDocument(
            metadata={"tool": "porpob", "version": "0.1.0", "command": "estimate"},
            records=[
                MetricRecord(
                    kind="por",
                    arguments={"ranking": ["B", "S", "H"]},
                    point=math.pi / 4,
                    ci={"level": 0.95, "lower": 0.1, "upper": 0.9},
                ),
                MetricRecord(
                    kind="pob",
                    arguments={"action": "B"},
                    interval=(1 / 3, 2 / 3),
                    tie_rows=0,
                ),
            ],
        )

    def test_round_trip(self, tmp_path):
        doc = self.build()
        path = tmp_path / "out.json"
        write_results(doc, path)
        loaded = read_results(path)
        assert loaded.to_dict() == doc.to_dict()

    def test_floats_survive_round_trip_exactly(self, tmp_path):
        doc = self.build()
        path = tmp_path / "out.json"
        write_results(doc, path)
        loaded = read_results(path)
        assert loaded.records[0].point == math.pi / 4
        assert loaded.records[1].interval == (1 / 3, 2 / 3)

    def test_empty_records_valid(self, tmp_path):
        doc = ResultDocument(metadata={"tool": "porpob"})
        path = tmp_path / "empty.json"
        write_results(doc, path)
        assert read_results(path).records == []

    def test_canonical_bytes_stable(self):
        assert dumps_results(self.build()) == dumps_results(self.build())

    def test_schema_checked(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"schema": "other", "metadata": {}, "records": []}))
        with pytest.raises(DataFormatError):
            read_results(path)
