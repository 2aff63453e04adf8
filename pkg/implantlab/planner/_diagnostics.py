# -*- coding: utf-8 -*-

"""Tabular export of planner diagnostics."""

import pathlib
from typing import Sequence, Union

import pandas as pd

from .models import PlanDiagnostics

DIAGNOSTICS_COLUMNS = ["step", "chosen_index", "best_score", "mean_score", "score_std"]


def diagnostics_to_dataframe(diagnostics: Sequence[PlanDiagnostics]) -> pd.DataFrame:
    """One row per decision step."""
    rows = [
        [d.step, d.chosen_index, d.best_score, d.mean_score, d.score_std]
        for d in diagnostics
    ]
    return pd.DataFrame(rows, columns=DIAGNOSTICS_COLUMNS)


def write_diagnostics_csv(
    path: Union[str, pathlib.Path], diagnostics: Sequence[PlanDiagnostics]
) -> None:
    """Write diagnostics as CSV."""
    diagnostics_to_dataframe(diagnostics).to_csv(
        path, index=False, float_format="%.10g"
    )
