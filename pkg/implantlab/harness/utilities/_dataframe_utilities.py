import pathlib
from typing import List, Sequence, Union

import numpy as np
import pandas as pd

from implantlab.core import MissingArtifactError
from implantlab.envs import Trajectory
from implantlab.imitation import TrainingRecord
from implantlab.harness.models import EvalReport, ResultRow
from implantlab.harness.utilities._constants import (
    FLOAT_FORMAT,
    ResultColumns,
    TrainingLogColumns,
)


def convert_rows_to_dataframe(rows: Sequence[ResultRow]) -> pd.DataFrame:
    """Creates a DataFrame with one row per evaluated (spec, seed) cell.

    Args:
        rows: Result rows in canonical order.

    Returns:
        A DataFrame with exactly the result columns, in their documented order. A
        missing copy-score becomes NaN.
    """
    frame = pd.DataFrame(
        [[getattr(row, c) for c in ResultColumns.RESULT_COLUMNS] for row in rows],
        columns=ResultColumns.RESULT_COLUMNS,
    )
    frame[ResultColumns.COPY_SCORE] = frame[ResultColumns.COPY_SCORE].astype(float)
    return frame


def summarize_results(results: pd.DataFrame) -> pd.DataFrame:
    """Aggregate per-seed rows into one row per (env, algorithm, perturbation, sigma).

    Failed rows count towards ``n_failed`` only. Stds are population stds across seeds.
    The copy-score mean skips NaN entries and is NaN when every entry is.

    Args:
        results: A results DataFrame as produced by :func:`convert_rows_to_dataframe`.

    Returns:
        The summary DataFrame, groups in order of first appearance.
    """
    records = []
    keys = results[ResultColumns.GROUP_COLUMNS].drop_duplicates()
    for key in keys.itertuples(index=False):
        mask = np.ones(len(results), dtype=bool)
        for column, value in zip(ResultColumns.GROUP_COLUMNS, key):
            mask &= (results[column] == value).to_numpy()
        group = results[mask]
        ok = group[group[ResultColumns.STATUS] == ResultColumns.STATUS_OK]
        records.append(
            [
                *key,
                _population_mean(ok[ResultColumns.MEAN_RETURN]),
                _population_std(ok[ResultColumns.MEAN_RETURN]),
                _population_mean(ok[ResultColumns.NORMALIZED]),
                _population_std(ok[ResultColumns.NORMALIZED]),
                _nan_mean(ok[ResultColumns.COPY_SCORE]),
                len(ok),
                len(group) - len(ok),
            ]
        )
    return pd.DataFrame(records, columns=ResultColumns.SUMMARY_COLUMNS)


def reports_from_results(
    results: pd.DataFrame, expert_return: float, random_return: float
) -> List[EvalReport]:
    """Build one report per result group sharing the given references."""
    reports = []
    keys = results[ResultColumns.GROUP_COLUMNS].drop_duplicates()
    for env, algorithm, perturbation, sigma in keys.itertuples(index=False):
        group = results[
            (results[ResultColumns.ENV] == env)
            & (results[ResultColumns.ALGORITHM] == algorithm)
            & (results[ResultColumns.PERTURBATION] == perturbation)
            & (results[ResultColumns.SIGMA] == sigma)
        ]
        ok = group[group[ResultColumns.STATUS] == ResultColumns.STATUS_OK]
        reports.append(
            EvalReport(
                env=env,
                algorithm=algorithm,
                perturbation=perturbation,
                sigma=float(sigma),
                seed_means=ok[ResultColumns.MEAN_RETURN].tolist(),
                seed_stds=ok[ResultColumns.STD_RETURN].tolist(),
                seed_normalized=ok[ResultColumns.NORMALIZED].tolist(),
                expert_return=expert_return,
                random_return=random_return,
                n_failed=len(group) - len(ok),
            )
        )
    return reports


def write_table(frame: pd.DataFrame, path: Union[str, pathlib.Path]) -> None:
    """Write a result table with the fixed float format."""
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def read_table(path: Union[str, pathlib.Path]) -> pd.DataFrame:
    """Read a result table.

    Raises:
        MissingArtifactError: if the file does not exist.
    """
    path = pathlib.Path(path)
    if not path.is_file():
        raise MissingArtifactError.for_path(str(path), "result table")
    return pd.read_csv(path)


def convert_trajectory_to_dataframe(trajectory: Trajectory) -> pd.DataFrame:
    """Creates a DataFrame with columns ``t, s_*, a_*, reward``, one row per step."""
    observations = trajectory.observation_matrix()
    actions = trajectory.action_matrix()
    if trajectory.length == 0:
        return pd.DataFrame(columns=["t", "reward"])
    columns = (
        ["t"]
        + [f"s_{i}" for i in range(observations.shape[1])]
        + [f"a_{i}" for i in range(actions.shape[1])]
        + ["reward"]
    )
    values = np.hstack(
        [
            np.arange(trajectory.length)[:, np.newaxis],
            observations,
            actions,
            np.asarray(trajectory.env_rewards)[:, np.newaxis],
        ]
    )
    frame = pd.DataFrame(values, columns=columns)
    frame["t"] = frame["t"].astype(int)
    return frame


def convert_irl_log_to_dataframe(records: Sequence[TrainingRecord]) -> pd.DataFrame:
    """Creates a DataFrame with one row per IRL iteration."""
    return pd.DataFrame(
        [
            [getattr(record, c) for c in TrainingLogColumns.IRL_LOG_COLUMNS]
            for record in records
        ],
        columns=TrainingLogColumns.IRL_LOG_COLUMNS,
    )


def convert_bc_log_to_dataframe(losses: Sequence[float]) -> pd.DataFrame:
    """Creates a DataFrame with one row per BC epoch."""
    return pd.DataFrame(
        {
            TrainingLogColumns.EPOCH: np.arange(len(losses), dtype=int),
            TrainingLogColumns.LOSS: np.asarray(losses, dtype=np.float64),
        },
        columns=TrainingLogColumns.BC_LOG_COLUMNS,
    )


def _population_mean(values: pd.Series) -> float:
    return float(np.mean(values.to_numpy())) if len(values) else float("nan")


def _population_std(values: pd.Series) -> float:
    return float(np.std(values.to_numpy())) if len(values) else float("nan")


def _nan_mean(values: pd.Series) -> float:
    finite = values.dropna()
    return float(np.mean(finite.to_numpy())) if len(finite) else float("nan")
