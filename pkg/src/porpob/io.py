"""Dataset ingestion and result serialization.

Two CSV layouts are understood:

  long form (one observation per row)      header: action,outcome
  outcome table (one subject per row)      header: id,<label1>,<label2>,...

Action labels may be arbitrary strings; they are mapped to integer action ids
1..K in order of first appearance, and the mapping is returned so reports can
speak the caller's labels.

Results are written as a canonical JSON document: sorted keys, stable field
set, floats serialized via repr (full round-trip precision).
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .core import ActionId, PoMatrix, StudyData, ValidationError


class DataFormatError(ValidationError):
    """A file does not parse as one of the documented CSV layouts."""


@dataclass(frozen=True)
class LabelMap:
    """Bijection between user-facing action labels and action ids 1..K.

    `labels[i]` is the label of action id i+1.
    """

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(str(label) for label in self.labels)
        if len(set(labels)) != len(labels):
            raise ValidationError("action labels must be distinct")
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.labels)

    def id_for(self, label: str) -> ActionId:
        try:
            return self.labels.index(str(label)) + 1
        except ValueError:
            raise ValidationError(
                f"unknown action label {label!r}; known labels: {list(self.labels)}"
            ) from None

    def label_for(self, action: ActionId) -> str:
        if not 1 <= action <= len(self.labels):
            raise ValidationError(f"action id {action} outside 1..{len(self.labels)}")
        return self.labels[action - 1]

    @classmethod
    def identity(cls, k: int) -> "LabelMap":
        return cls(tuple(str(i) for i in range(1, k + 1)))


def _parse_outcome(text: str, line_num: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise DataFormatError(f"line {line_num}: outcome {text!r} is not numeric") from None
    if not math.isfinite(value):
        raise DataFormatError(f"line {line_num}: outcome {text!r} is not finite")
    return value


def load_csv(path) -> tuple[StudyData, LabelMap]:
    """Read a long-form dataset: header `action,outcome`, one row per observation.

    Labels become action ids in first-appearance order. Duplicate
    (action, outcome) rows are legal; they are distinct subjects.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or len(header) < 2 or [
            cell.strip().lower() for cell in header[:2]
        ] != ["action", "outcome"]:
            raise DataFormatError(f"{path}: expected header 'action,outcome'")
        by_label: dict[str, list[float]] = {}
        for row in reader:
            if not row:
                continue
            if len(row) != 2:
                raise DataFormatError(
                    f"line {reader.line_num}: expected 2 fields, got {len(row)}"
                )
            label = row[0].strip()
            by_label.setdefault(label, []).append(
                _parse_outcome(row[1].strip(), reader.line_num)
            )
    if len(by_label) < 2:
        raise ValidationError(f"{path}: need at least two distinct action labels")
    for label, values in by_label.items():
        if len(values) < 2:
            raise ValidationError(f"{path}: action {label!r} has fewer than 2 rows")
    label_map = LabelMap(tuple(by_label))
    study = StudyData.from_arrays(
        {label_map.id_for(label): values for label, values in by_label.items()}
    )
    return study, label_map


def write_csv(study: StudyData, label_map: LabelMap, path) -> None:
    """Write a study back to the long form; inverse of `load_csv` up to row
    order within arms."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["action", "outcome"])
        for action in study.actions:
            label = label_map.label_for(action)
            for value in study.arm(action).values:
                writer.writerow([label, repr(float(value))])


def load_po_matrix_csv(path) -> tuple[PoMatrix, LabelMap]:
    """Read an outcome table: header `id,<label1>,...`, one subject per row."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or len(header) < 3 or header[0].strip().lower() != "id":
            raise DataFormatError(
                f"{path}: expected header 'id,<label1>,<label2>,...' with >= 2 labels"
            )
        labels = tuple(cell.strip() for cell in header[1:])
        rows: list[list[float]] = []
        for row in reader:
            if not row:
                continue
            if len(row) != len(labels) + 1:
                raise DataFormatError(
                    f"line {reader.line_num}: expected {len(labels) + 1} fields, got {len(row)}"
                )
            rows.append(
                [_parse_outcome(cell.strip(), reader.line_num) for cell in row[1:]]
            )
    if not rows:
        raise DataFormatError(f"{path}: no subject rows")
    return PoMatrix(np.array(rows)), LabelMap(labels)


@dataclass
class MetricRecord:
    """One reported metric: its kind, user-label arguments, and values.

    point      scalar estimate (None for bounds-only records)
    interval   [lower, upper] identified-set bounds, when computed
    ci         {"level", "lower", "upper"} bootstrap or replication interval
    tie_rows   count of tie-affected rows for oracle metrics
    extra      free-form extras (replicate means, per-run values, ...)
    """

    kind: str
    arguments: dict
    point: float | None = None
    interval: tuple[float, float] | None = None
    ci: dict | None = None
    tie_rows: int | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "arguments": self.arguments,
            "point": self.point,
            "interval": None if self.interval is None else list(self.interval),
            "ci": self.ci,
            "tie_rows": self.tie_rows,
            "extra": self.extra,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MetricRecord":
        interval = data.get("interval")
        return cls(
            kind=data["kind"],
            arguments=data["arguments"],
            point=data.get("point"),
            interval=None if interval is None else tuple(interval),
            ci=data.get("ci"),
            tie_rows=data.get("tie_rows"),
            extra=data.get("extra", {}),
        )


@dataclass
class ResultDocument:
    """A full report: tool metadata plus a list of metric records."""

    metadata: dict
    records: list[MetricRecord] = field(default_factory=list)

    SCHEMA = "porpob.result/1"

    def to_dict(self) -> dict:
        return {
            "schema": self.SCHEMA,
            "metadata": self.metadata,
            "records": [record.to_dict() for record in self.records],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ResultDocument":
        if data.get("schema") != cls.SCHEMA:
            raise DataFormatError(f"unrecognized result schema {data.get('schema')!r}")
        return cls(
            metadata=data["metadata"],
            records=[MetricRecord.from_dict(r) for r in data["records"]],
        )


def dumps_results(doc: ResultDocument) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline.

    Equal documents serialize to identical bytes.
    """
    return json.dumps(doc.to_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_results(doc: ResultDocument, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_results(doc))


def read_results(path) -> ResultDocument:
    with open(path) as fh:
        return ResultDocument.from_dict(json.load(fh))
