"""YAML serialization of a fitted :class:`ClassifierModel`.

PyYAML writes floats with ``repr``, the shortest string that parses back to
the same double, so save -> load reproduces every coefficient bit for bit.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np
import yaml

from vclda.core.errors import ModelFileError, VcldaError
from vclda.estimators.bspline import SplineBasis
from vclda.estimators.classify import ClassifierModel
from vclda.estimators.meanfit import MeanModel, PriorMode
from vclda.estimators.solver import GammaCoefficients

FORMAT_VERSION = 1


def model_to_document(model: ClassifierModel) -> dict[str, Any]:
    mean_model = model.mean_model
    return {
        "format_version": FORMAT_VERSION,
        "degree": model.basis.degree,
        "num_basis": model.basis.num_basis,
        "knots": [float(k) for k in model.basis.knots],
        "mode": model.mode.value,
        "n_features": model.n_features,
        "prior_class1": float(mean_model.prior_class1),
        "coeffs_class1": mean_model.coeffs_class1.tolist(),
        "coeffs_class0": mean_model.coeffs_class0.tolist(),
        "gamma": model.gamma.values.tolist(),
    }


def model_from_document(doc: Any) -> ClassifierModel:
    if not isinstance(doc, dict):
        raise ModelFileError("model document must be a mapping")
    try:
        if doc["format_version"] != FORMAT_VERSION:
            raise ModelFileError(f"unsupported model format {doc['format_version']}")
        basis = SplineBasis(
            degree=int(doc["degree"]),
            num_basis=int(doc["num_basis"]),
            knots=np.array(doc["knots"], dtype=float),
        )
        mean_model = MeanModel(
            basis=basis,
            coeffs_class1=np.array(doc["coeffs_class1"], dtype=float),
            coeffs_class0=np.array(doc["coeffs_class0"], dtype=float),
            prior_class1=float(doc["prior_class1"]),
        )
        gamma = GammaCoefficients(
            values=np.array(doc["gamma"], dtype=float),
            p=int(doc["n_features"]),
            ln=basis.num_basis,
        )
        return ClassifierModel(
            basis=basis, mean_model=mean_model, gamma=gamma, mode=PriorMode(doc["mode"])
        )
    except KeyError as e:
        raise ModelFileError(f"model file is missing key {e}")
    except ModelFileError:
        raise
    except (VcldaError, TypeError, ValueError) as e:
        raise ModelFileError(f"invalid model file: {e}")


def save_model(path: Path | str, model: ClassifierModel) -> None:
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(model_to_document(model), f, sort_keys=False)


def load_model(path: Path | str) -> ClassifierModel:
    try:
        with open(path, "r", encoding="utf-8") as f:
            doc = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ModelFileError(f"Error parsing {path}: {e}")
    return model_from_document(doc)
