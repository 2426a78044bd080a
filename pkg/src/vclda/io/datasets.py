"""Dataset CSV format: header ``u,y,x1,...,xp``, one sample per row.

The ``y`` column may be omitted for prediction inputs. Floats are written with
their shortest round-trip representation.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from vclda.core.errors import DatasetParseError
from vclda.simulation.scenarios import Dataset


def dataset_header(p: int, with_labels: bool = True) -> list[str]:
    return ["u"] + (["y"] if with_labels else []) + [f"x{j}" for j in range(1, p + 1)]


def write_dataset(path: Path | str, data: Dataset) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(dataset_header(data.n_features))
        for x, u, y in zip(data.X, data.U, data.Y):
            writer.writerow([repr(float(u)), str(int(y))] + [repr(float(v)) for v in x])


def _parse_float(cell: str, row: int, column: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise DatasetParseError(f"not a number: {cell!r}", row=row, column=column)
    if not math.isfinite(value):
        raise DatasetParseError(f"value must be finite: {cell!r}", row=row, column=column)
    return value


def _check_header(header: list[str]) -> bool:
    """Validate the header and return whether it carries a ``y`` column."""
    if not header or header[0] != "u":
        raise DatasetParseError("header must start with 'u'", row=1)
    has_labels = len(header) > 1 and header[1] == "y"
    features = header[2:] if has_labels else header[1:]
    expected = [f"x{j}" for j in range(1, len(features) + 1)]
    if not features or features != expected:
        raise DatasetParseError(
            f"expected feature columns x1..xp, got {','.join(features) or 'none'}",
            row=1,
        )
    return has_labels


def parse_rows(
    rows: Iterable[list[str]],
) -> tuple[np.ndarray, np.ndarray, Optional[np.ndarray]]:
    rows = iter(rows)
    try:
        header = [cell.strip() for cell in next(rows)]
    except StopIteration:
        raise DatasetParseError("file is empty")
    has_labels = _check_header(header)

    U, Y, X = [], [], []
    for row_number, row in enumerate(rows, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise DatasetParseError(
                f"expected {len(header)} columns, found {len(row)}", row=row_number
            )
        values = [cell.strip() for cell in row]
        U.append(_parse_float(values[0], row_number, "u"))
        offset = 1
        if has_labels:
            if values[1] not in ("0", "1"):
                raise DatasetParseError(
                    f"label must be 0 or 1, got {values[1]!r}", row=row_number, column="y"
                )
            Y.append(int(values[1]))
            offset = 2
        X.append(
            [
                _parse_float(cell, row_number, name)
                for cell, name in zip(values[offset:], header[offset:])
            ]
        )

    if not X:
        raise DatasetParseError("no data rows")
    labels = np.array(Y, dtype=int) if has_labels else None
    return np.array(X, dtype=float), np.array(U, dtype=float), labels


def read_dataset(path: Path | str) -> tuple[np.ndarray, np.ndarray, Optional[np.ndarray]]:
    """Return ``(X, U, Y)``; ``Y`` is None when the file has no label column."""
    with open(path, "r", encoding="utf-8", newline="") as f:
        return parse_rows(csv.reader(f))


def read_labeled_dataset(path: Path | str) -> Dataset:
    X, U, Y = read_dataset(path)
    if Y is None:
        raise DatasetParseError(f"{path} has no 'y' column", row=1, column="y")
    return Dataset(X=X, U=U, Y=Y)


def write_predictions(path: Path | str, labels: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["index", "prediction"])
        for i, label in enumerate(labels):
            writer.writerow([i, int(label)])
