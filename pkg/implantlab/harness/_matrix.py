# -*- coding: utf-8 -*-

"""The evaluation matrix: every spec crossed with its seeds."""

import logging
from concurrent.futures import Future, ThreadPoolExecutor
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import pandas as pd

from implantlab.core import (
    PlanningAbortedError,
    SimulationDivergedError,
    TrainingDivergedError,
)
from implantlab.envs import DemoSet, Trajectory

from ._evaluation import CellEvaluation, evaluate_cell, failed_row
from ._references import measure_references, ReferenceReturns
from ._training import (
    collect_cell_demos,
    demo_key,
    train_cell,
    DemoKey,
    TrainedArtifacts,
    training_key,
    TrainingKey,
)
from .models import EvalReport, ExperimentSpec, ResultRow
from .utilities import (
    convert_rows_to_dataframe,
    reports_from_results,
    ResultColumns,
    summarize_results,
)

_logger = logging.getLogger(__name__)

ArtifactProvider = Callable[[ExperimentSpec, int], TrainedArtifacts]
"""Supplies the trained artifacts of a (spec, seed) cell."""

CellCallback = Callable[[ResultRow], None]

_CELL_FAILURES = (TrainingDivergedError, PlanningAbortedError, SimulationDivergedError)


class MatrixResult(NamedTuple):
    """Everything :func:`run_matrix` produces."""

    results: pd.DataFrame
    """One row per (spec, seed), in canonical order."""

    summary: pd.DataFrame
    """One row per (env, algorithm, perturbation, sigma)."""

    reports: List[EvalReport]
    cells: List[Tuple[ExperimentSpec, int, Optional[CellEvaluation]]]
    """Per-cell detail; the evaluation is None for failed cells."""

    artifacts: Dict[TrainingKey, TrainedArtifacts]
    """Training runs by training key."""


def _default_provider(
    demos: Dict[DemoKey, DemoSet],
) -> ArtifactProvider:
    def _provide(spec: ExperimentSpec, seed: int) -> TrainedArtifacts:
        return train_cell(spec, seed, demos[demo_key(spec, seed)])

    return _provide


def run_matrix(
    specs: Sequence[ExperimentSpec],
    jobs: int = 1,
    provider: Optional[ArtifactProvider] = None,
    on_cell: Optional[CellCallback] = None,
    collect_diagnostics: bool = False,
    planner_workers: int = 1,
) -> MatrixResult:
    """Train and evaluate every (spec, seed) cell.

    Demonstrations are recorded once per (environment, training-side perturbation,
    seed) and shared across algorithms. Training runs are shared by every spec with
    the same training key, so IMPLANT and GAIL-Reward-Only reuse the GAIL run.
    Training always sees train-mode perturbations; evaluation always runs in test
    mode. Cells that diverge become ``failed`` rows and the matrix continues.

    Args:
        specs: The experiments.
        jobs: Worker threads for training runs and evaluation cells.
        provider: Supplies trained artifacts instead of training in-process, for
            example from checkpoints.
        on_cell: Called with every row, in canonical order.
        collect_diagnostics: Keep per-step planner diagnostics.
        planner_workers: Lower bound on each planner's rollout workers.

    Returns:
        Results, summary, reports and per-cell detail.
    """
    cells = [(spec, seed) for spec in specs for seed in spec.seeds]

    references: Dict[Tuple[str, int, int], ReferenceReturns] = {}
    for spec, seed in cells:
        key = (spec.env, seed, spec.episodes)
        if key not in references:
            references[key] = measure_references(spec.env, seed, spec.episodes)

    demos: Dict[DemoKey, DemoSet] = {}
    if provider is None:
        for spec, seed in cells:
            key = demo_key(spec, seed)
            if key not in demos:
                demos[key] = collect_cell_demos(spec, seed)
        provider = _default_provider(demos)

    runs: Dict[TrainingKey, Tuple[ExperimentSpec, int]] = {}
    for spec, seed in cells:
        runs.setdefault(training_key(spec, seed), (spec, seed))

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        training: Dict[TrainingKey, "Future[TrainedArtifacts]"] = {
            key: pool.submit(provider, spec, seed) for key, (spec, seed) in runs.items()
        }
        artifacts: Dict[TrainingKey, TrainedArtifacts] = {}
        failures: Dict[TrainingKey, str] = {}
        for key, future in training.items():
            try:
                artifacts[key] = future.result()
            except TrainingDivergedError as e:
                _logger.warning(
                    "%s training for %s seed %d failed: %s", key[3], key[0], key[2], e
                )
                failures[key] = str(e)

        evaluations: List[Optional["Future[CellEvaluation]"]] = []
        for spec, seed in cells:
            key = training_key(spec, seed)
            if key in failures:
                evaluations.append(None)
                continue
            evaluations.append(
                pool.submit(
                    evaluate_cell,
                    spec,
                    seed,
                    artifacts[key],
                    references[(spec.env, seed, spec.episodes)],
                    None,
                    collect_diagnostics,
                    planner_workers,
                )
            )

        rows: List[ResultRow] = []
        details: List[Tuple[ExperimentSpec, int, Optional[CellEvaluation]]] = []
        for (spec, seed), future in zip(cells, evaluations):
            evaluation: Optional[CellEvaluation] = None
            if future is None:
                row = failed_row(spec, seed, failures[training_key(spec, seed)])
            else:
                try:
                    evaluation = future.result()
                    row = evaluation.row
                except _CELL_FAILURES as e:
                    _logger.warning("%s seed %d failed: %s", spec.label(), seed, e)
                    row = failed_row(spec, seed, str(e))
            rows.append(row)
            details.append((spec, seed, evaluation))
            if on_cell is not None:
                on_cell(row)

    results = convert_rows_to_dataframe(rows)
    summary = summarize_results(results)
    reports = []
    for env in results[ResultColumns.ENV].drop_duplicates():
        env_refs = [ref for (name, _, _), ref in references.items() if name == env]
        reports.extend(
            reports_from_results(
                results[results[ResultColumns.ENV] == env],
                sum(r.expert for r in env_refs) / len(env_refs),
                sum(r.random for r in env_refs) / len(env_refs),
            )
        )
    return MatrixResult(results, summary, reports, details, artifacts)


def trajectories_of(result: MatrixResult) -> List[Tuple[str, int, int, Trajectory]]:
    """``(spec label, seed, episode index, trajectory)`` of every evaluated episode."""
    return [
        (spec.label(), seed, k, trajectory)
        for spec, seed, evaluation in result.cells
        if evaluation is not None
        for k, trajectory in enumerate(evaluation.trajectories)
    ]
