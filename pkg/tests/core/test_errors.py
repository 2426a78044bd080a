"""Tests for vclda.core.errors."""

from __future__ import annotations

import pytest

from vclda.core.errors import (
    EXIT_NUMERICAL,
    EXIT_USAGE,
    ConfigError,
    DatasetParseError,
    SingularGramError,
    TrialFailedError,
)


@pytest.mark.parametrize(
    "error, code",
    [(ConfigError("x"), EXIT_USAGE), (SingularGramError("x"), EXIT_NUMERICAL)],
)
def test_exit_codes(error, code):
    assert error.exit_code == code


def test_usage_errors_are_value_errors():
    assert isinstance(ConfigError("x"), ValueError)
    assert isinstance(SingularGramError("x"), ArithmeticError)


def test_dataset_parse_error_location():
    assert str(DatasetParseError("bad", row=4)) == "row 4: bad"
    assert str(DatasetParseError("bad")) == "bad"


class TestTrialFailedError:
    def test_message_names_trial_and_seed(self):
        error = TrialFailedError(3, 7, SingularGramError("class 0 Gram matrix is singular"))

        assert "Trial 3 failed (replay with seed 7)" in str(error)
        assert "SingularGramError" in str(error)
        assert (error.trial, error.seed) == (3, 7)

    def test_exit_code_follows_cause(self):
        assert TrialFailedError(0, 0, ConfigError("x")).exit_code == EXIT_USAGE
        assert TrialFailedError(0, 0, SingularGramError("x")).exit_code == EXIT_NUMERICAL
        assert TrialFailedError(0, 0, RuntimeError("x")).exit_code == EXIT_NUMERICAL
