# -*- coding: utf-8 -*-

"""Vector figures rendered from result tables only."""

import pathlib
from typing import List, Tuple

import matplotlib
import numpy as np
import pandas as pd

matplotlib.use("Agg")

from matplotlib.figure import Figure  # noqa: E402

from implantlab.harness.utilities import (  # noqa: E402
    CurveColumns,
    HistogramColumns,
    ResultColumns,
)

_SVG_SALT = "implantlab"


def _save(figure: Figure, path: pathlib.Path) -> pathlib.Path:
    with matplotlib.rc_context({"svg.hashsalt": _SVG_SALT}):
        figure.savefig(path, format="svg", metadata={"Date": None})
    return path


def _stderr(values: np.ndarray) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1) / np.sqrt(len(values)))


def plot_curve(curve: pd.DataFrame, env_name: str, path: pathlib.Path) -> pathlib.Path:
    """Normalized return against horizon, with a std-error band."""
    horizon = curve[CurveColumns.HORIZON].to_numpy(dtype=np.float64)
    mean = curve[CurveColumns.MEAN_NORMALIZED].to_numpy(dtype=np.float64)
    stderr = curve[CurveColumns.STDERR].to_numpy(dtype=np.float64)

    figure = Figure(figsize=(5.0, 3.5))
    ax = figure.subplots()
    ax.plot(horizon, mean, marker="o", label="IMPLANT")
    ax.fill_between(horizon, mean - stderr, mean + stderr, alpha=0.25)
    ax.set_xlabel("planning horizon H")
    ax.set_ylabel("normalized return")
    ax.set_title(env_name)
    ax.legend(loc="best")
    figure.tight_layout()
    return _save(figure, path)


def plot_histogram(histogram: pd.DataFrame, path: pathlib.Path) -> pathlib.Path:
    """Overlaid inferred-reward densities of policy pairs and expert pairs."""
    edges = np.append(
        histogram[HistogramColumns.BIN_LEFT].to_numpy(dtype=np.float64),
        histogram[HistogramColumns.BIN_RIGHT].to_numpy(dtype=np.float64)[-1],
    )
    figure = Figure(figsize=(5.0, 3.5))
    ax = figure.subplots()
    ax.stairs(
        histogram[HistogramColumns.DENSITY_POLICY].to_numpy(dtype=np.float64),
        edges,
        fill=True,
        alpha=0.5,
        label="policy",
    )
    ax.stairs(
        histogram[HistogramColumns.DENSITY_EXPERT].to_numpy(dtype=np.float64),
        edges,
        fill=True,
        alpha=0.5,
        label="expert",
    )
    ax.set_xlabel("inferred reward")
    ax.set_ylabel("density")
    ax.legend(loc="best")
    figure.tight_layout()
    return _save(figure, path)


def plot_noise_sweep(
    results: pd.DataFrame, env_name: str, perturbation: str, path: pathlib.Path
) -> pathlib.Path:
    """Normalized return against sigma, one line per algorithm."""
    ok = results[
        (results[ResultColumns.STATUS] == ResultColumns.STATUS_OK)
        & (results[ResultColumns.ENV] == env_name)
        & (results[ResultColumns.PERTURBATION] == perturbation)
    ]
    figure = Figure(figsize=(5.0, 3.5))
    ax = figure.subplots()
    for algorithm in ok[ResultColumns.ALGORITHM].drop_duplicates():
        rows = ok[ok[ResultColumns.ALGORITHM] == algorithm]
        sigmas = sorted(rows[ResultColumns.SIGMA].unique())
        means, errors = [], []
        for sigma in sigmas:
            values = rows[rows[ResultColumns.SIGMA] == sigma][
                ResultColumns.NORMALIZED
            ].to_numpy(dtype=np.float64)
            means.append(float(np.mean(values)))
            errors.append(_stderr(values))
        x = np.asarray(sigmas, dtype=np.float64)
        y = np.asarray(means)
        e = np.asarray(errors)
        ax.plot(x, y, marker="o", label=str(algorithm))
        ax.fill_between(x, y - e, y + e, alpha=0.2)
    ax.set_xlabel("sigma")
    ax.set_ylabel("normalized return")
    ax.set_title(f"{env_name}, {perturbation}")
    ax.legend(loc="best")
    figure.tight_layout()
    return _save(figure, path)


def swept_groups(results: pd.DataFrame) -> List[Tuple[str, str]]:
    """``(env, perturbation)`` pairs whose successful rows span more than one sigma."""
    ok = results[results[ResultColumns.STATUS] == ResultColumns.STATUS_OK]
    groups = []
    for (env, perturbation), rows in ok.groupby(
        [ResultColumns.ENV, ResultColumns.PERTURBATION], sort=False
    ):
        if rows[ResultColumns.SIGMA].nunique() > 1:
            groups.append((str(env), str(perturbation)))
    return groups
