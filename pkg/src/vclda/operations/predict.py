"""Apply a saved model to a dataset CSV."""

from typing import Optional

import click
import numpy as np

from vclda.core.console import status
from vclda.core.errors import DimensionMismatchError
from vclda.estimators.classify import predict_batch
from vclda.io.datasets import read_dataset, write_predictions
from vclda.io.model_file import load_model
from vclda.operations.common import translate_errors


def predict_command(ctx, model_path: str, dataset: str, out: Optional[str]):
    """Write one label per row; print the empirical risk when labels are present."""
    with translate_errors():
        model = load_model(model_path)
        X, U, Y = read_dataset(dataset)
        if X.shape[1] != model.n_features:
            raise DimensionMismatchError(
                f"model expects {model.n_features} features, dataset has {X.shape[1]}"
            )
        labels = predict_batch(model, X, U)
        if out:
            write_predictions(out, labels)
            status(f"Wrote {labels.size} predictions to {out}")
        else:
            click.echo("index,prediction")
            for i, label in enumerate(labels):
                click.echo(f"{i},{int(label)}")

    if Y is not None:
        risk = float(np.mean(labels != Y))
        click.echo(f"risk={risk:.3f}", err=out is None)
