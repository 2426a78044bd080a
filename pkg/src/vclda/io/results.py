"""Benchmark results: JSON document and the ``mean(sd)`` risk table.

The table is rendered only from the JSON document, so re-rendering a saved
file reproduces the printed table exactly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

import numpy as np
from jinja2 import Environment, StrictUndefined

from vclda.core.errors import ConfigError

TABLE_TEMPLATE = """\
Misclassification risk (sd) over {{ doc.trials }} trial{{ "s" if doc.trials != 1 else "" }}
scenario: p={{ scenario.p }}, s={{ scenario.s if scenario.s is not none else scenario.p }}, \
n={{ scenario.n_per_class }}, direction={{ scenario.direction_id }}, \
covariance={{ scenario.covariance_id }}, seed={{ scenario.seed }}
{{ "%-12s"|format("method") }} risk
{% for name in doc.methods %}
{{ "%-12s"|format(name) }} {{ doc.summary[name].mean|risk }}({{ doc.summary[name].sd|risk }})
{% endfor %}
"""

_environment = Environment(
    trim_blocks=True,
    keep_trailing_newline=True,
    undefined=StrictUndefined,
    autoescape=False,
)
_environment.filters["risk"] = lambda value: f"{value:.3f}"
_table = _environment.from_string(TABLE_TEMPLATE)


def summarize_risks(risks: Sequence[float]) -> dict[str, float]:
    """Mean and per-trial standard deviation (0 for a single trial)."""
    values = np.asarray(risks, dtype=float)
    sd = float(values.std(ddof=1)) if values.size > 1 else 0.0
    return {"mean": float(values.mean()), "sd": sd}


def format_cell(mean: float, sd: float) -> str:
    return f"{mean:.3f}({sd:.3f})"


def render_table(doc: dict[str, Any]) -> str:
    return _table.render(doc=doc, scenario=doc["scenario"])


def dumps_results(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_results(path: Path | str, doc: dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps_results(doc))


def load_results(path: Path | str) -> dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Error parsing {path}: {e}")
    for key in ("scenario", "methods", "summary", "trials"):
        if key not in doc:
            raise ConfigError(f"{path} is not a benchmark results file (missing '{key}')")
    return doc
