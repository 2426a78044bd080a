"""Tests for vclda.io.datasets."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from vclda.core.errors import DatasetParseError
from vclda.io.datasets import (
    dataset_header,
    read_dataset,
    read_labeled_dataset,
    write_dataset,
    write_predictions,
)
from vclda.simulation.generator import generate
from vclda.simulation.scenarios import ScenarioConfig


def _write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "data.csv"
    path.write_text(text)
    return path


class TestWriteDataset:
    def test_header_and_rows(self, tmp_path: Path):
        train, _, _ = generate(ScenarioConfig(n_per_class=4, p=3))
        path = tmp_path / "train.csv"

        write_dataset(path, train)

        lines = path.read_bytes().split(b"\n")
        assert lines[0] == b"u,y,x1,x2,x3"
        assert len(lines) == 1 + 8 + 1
        assert lines[-1] == b""
        assert b"\r" not in path.read_bytes()

    def test_full_precision_round_trip(self, tmp_path: Path):
        train, _, _ = generate(ScenarioConfig(n_per_class=10, p=2, seed=9))
        path = tmp_path / "train.csv"

        write_dataset(path, train)
        loaded = read_labeled_dataset(path)

        assert np.array_equal(loaded.X, train.X)
        assert np.array_equal(loaded.U, train.U)
        assert np.array_equal(loaded.Y, train.Y)

    def test_header_helper(self):
        assert dataset_header(2) == ["u", "y", "x1", "x2"]
        assert dataset_header(2, with_labels=False) == ["u", "x1", "x2"]


class TestReadDataset:
    def test_unlabeled_file(self, tmp_path: Path):
        X, U, Y = read_dataset(_write(tmp_path, "u,x1,x2\n0.5,1,2\n0.25,3,4\n"))

        assert Y is None
        np.testing.assert_array_equal(X, [[1, 2], [3, 4]])
        np.testing.assert_array_equal(U, [0.5, 0.25])

    def test_blank_lines_are_skipped(self, tmp_path: Path):
        X, _, Y = read_dataset(_write(tmp_path, "u,y,x1\n0.1,1,2.0\n\n0.2,0,3.0\n"))

        assert X.shape == (2, 1)
        np.testing.assert_array_equal(Y, [1, 0])

    def test_non_numeric_cell_names_row_and_column(self, tmp_path: Path):
        path = _write(tmp_path, "u,y,x1,x2\n0.1,1,2.0,3.0\n0.2,0,4.0,abc\n")

        with pytest.raises(DatasetParseError, match="row 3, column 'x2'") as exc_info:
            read_dataset(path)

        assert exc_info.value.row == 3
        assert exc_info.value.column == "x2"

    @pytest.mark.parametrize(
        "text, message",
        [
            ("", "empty"),
            ("u,y,x1\n", "no data rows"),
            ("y,u,x1\n1,0.5,2\n", "start with 'u'"),
            ("u,y,x2\n0.5,1,2\n", "x1..xp"),
            ("u,y\n0.5,1\n", "x1..xp"),
            ("u,y,x1\n0.5,1,2,3\n", "row 2: expected 3 columns"),
            ("u,y,x1\n0.5,2,1.0\n", "column 'y'"),
            ("u,y,x1\nnan,1,1.0\n", "finite"),
            ("u,y,x1\n0.5,1,inf\n", "column 'x1'"),
        ],
    )
    def test_malformed_files(self, tmp_path: Path, text: str, message: str):
        with pytest.raises(DatasetParseError, match=message):
            read_dataset(_write(tmp_path, text))

    def test_labeled_reader_requires_labels(self, tmp_path: Path):
        with pytest.raises(DatasetParseError, match="no 'y' column"):
            read_labeled_dataset(_write(tmp_path, "u,x1\n0.5,1\n"))

    def test_parse_errors_are_value_errors(self, tmp_path: Path):
        with pytest.raises(ValueError):
            read_dataset(_write(tmp_path, "u,x1\n0.5,oops\n"))


def test_write_predictions(tmp_path: Path):
    path = tmp_path / "pred.csv"

    write_predictions(path, np.array([1, 0, 1]))

    assert path.read_text() == "index,prediction\n0,1\n1,0\n2,1\n"
