# -*- coding: utf-8 -*-

"""The pipeline stages behind the ``implant`` subcommands.

Every stage writes into a fresh directory under the output root and reads the most
recent directory of the stages before it, so reruns never touch earlier artifacts.
"""

import logging
import pathlib
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

import pandas as pd

from implantlab.core import (
    EmptyResultsError,
    MissingArtifactError,
    named_seed,
    PathConstants,
)
from implantlab.envs import DemoSet
from implantlab.harness import (
    Algorithm,
    collect_cell_demos,
    episode_seeds,
    ExperimentSpec,
    horizon_sweep,
    make_return_monitor,
    MatrixResult,
    measure_references,
    reward_histograms,
    run_matrix,
    train_cell,
    TrainedArtifacts,
    training_env,
    training_key,
    TrainingKey,
)
from implantlab.harness.utilities import (
    convert_bc_log_to_dataframe,
    convert_irl_log_to_dataframe,
    convert_trajectory_to_dataframe,
    read_table,
    ResultColumns,
    write_table,
)
from implantlab.planner import diagnostics_to_dataframe

from ._config_loader import freeze_run_config
from ._plotting import plot_curve, plot_histogram, plot_noise_sweep, swept_groups
from .models import RunConfig

_logger = logging.getLogger(__name__)

IRL_LOG_FILE = "irl_log.csv"
BC_LOG_FILE = "bc_log.csv"
RESULTS_FILE = "results.csv"
SUMMARY_FILE = "summary.csv"
HISTOGRAM_FILE = "histogram.csv"
DIAGNOSTICS_FILE = "diagnostics.csv"
TRAJECTORY_DIRECTORY = "trajectories"


def demos_file_name(seed: int) -> str:
    """Demo file of one experiment seed."""
    return f"demos-seed-{seed}.csv"


def curve_file_name(env_name: str) -> str:
    """Horizon-sweep curve of one environment."""
    return f"curve-{env_name}.csv"


def checkpoint_directory(
    train_directory: pathlib.Path, family: Algorithm, seed: int
) -> pathlib.Path:
    """Where a training run's checkpoints and log live."""
    return train_directory / family.value / f"seed-{seed}"


def _output_root(config: RunConfig) -> pathlib.Path:
    return PathConstants.output_root(config.io.out)


def _latest_stage(root: pathlib.Path, stage: str) -> pathlib.Path:
    directory = PathConstants.latest_stage_directory(root, stage)
    if directory is None:
        raise MissingArtifactError.for_path(str(root / stage), f"{stage} output")
    return directory


def _fresh_stage(config: RunConfig, stage: str) -> pathlib.Path:
    directory = PathConstants.fresh_stage_directory(_output_root(config), stage)
    freeze_run_config(config, directory)
    _logger.info("writing %s into %s", stage, directory)
    return directory


def _read_demos(directory: pathlib.Path, seeds: List[int]) -> Dict[int, DemoSet]:
    return {seed: DemoSet.read(directory / demos_file_name(seed)) for seed in seeds}


def cmd_demos(config: RunConfig, jobs: int = 1) -> pathlib.Path:
    """Record expert demonstrations for every experiment seed.

    Args:
        config: The run configuration.
        jobs: Unused; recording is sequential.

    Returns:
        The demos directory.

    Raises:
        DegenerateExpertError: if the expert misses the environment's threshold.
    """
    spec = config.training_specs()[0]
    stage = _fresh_stage(config, PathConstants.DEMOS_STAGE)
    for seed in config.experiment_seeds:
        demos = collect_cell_demos(spec, seed)
        demos.write(stage / demos_file_name(seed))
        print(
            f"seed {seed}: {demos.pairs} pairs, "
            f"expert mean return {demos.expert_mean_return:.4f}"
        )
    return stage


def _train_one(spec: ExperimentSpec, seed: int, demos: DemoSet) -> TrainedArtifacts:
    monitor = None
    if not spec.algorithm.is_bc:
        monitor = make_return_monitor(training_env(spec), named_seed(seed, "monitor"))
    return train_cell(spec, seed, demos, monitor)


def cmd_train(config: RunConfig, jobs: int = 1) -> pathlib.Path:
    """Train every training family the configured algorithms need.

    Planner algorithms reuse the GAIL run, so they add no training of their own.

    Args:
        config: The run configuration.
        jobs: Training runs executed concurrently.

    Returns:
        The train directory, holding ``<family>/seed-<n>/`` per run.

    Raises:
        MissingArtifactError: if a demo file is absent.
        TrainingDivergedError: if a run diverges.
    """
    root = _output_root(config)
    demos = _read_demos(
        _latest_stage(root, PathConstants.DEMOS_STAGE), config.experiment_seeds
    )
    runs = [
        (spec, seed)
        for spec in config.training_specs()
        for seed in config.experiment_seeds
    ]
    stage = _fresh_stage(config, PathConstants.TRAIN_STAGE)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        futures = [
            pool.submit(_train_one, spec, seed, demos[seed]) for spec, seed in runs
        ]
        for (spec, seed), future in zip(runs, futures):
            artifacts = future.result()
            directory = checkpoint_directory(stage, artifacts.family, seed)
            artifacts.save(directory)
            if artifacts.irl_log is not None:
                write_table(
                    convert_irl_log_to_dataframe(artifacts.irl_log),
                    directory / IRL_LOG_FILE,
                )
            if artifacts.bc_losses is not None:
                write_table(
                    convert_bc_log_to_dataframe(artifacts.bc_losses),
                    directory / BC_LOG_FILE,
                )
            print(f"trained {artifacts.family.value} seed {seed} -> {directory}")
    return stage


def _load_artifacts(
    train_directory: pathlib.Path, spec: ExperimentSpec, seed: int
) -> TrainedArtifacts:
    family = spec.algorithm.training_family
    return TrainedArtifacts.load(
        checkpoint_directory(train_directory, family, seed), family, training_env(spec)
    )


def _write_diagnostics(result: MatrixResult, path: pathlib.Path) -> None:
    frames = []
    for spec, seed, evaluation in result.cells:
        if evaluation is None:
            continue
        for episode, steps in enumerate(evaluation.diagnostics):
            frame = diagnostics_to_dataframe(steps)
            frame.insert(0, "episode", episode)
            frame.insert(0, ResultColumns.SEED, seed)
            frame.insert(0, ResultColumns.SIGMA, spec.perturbation.sigma)
            frame.insert(0, ResultColumns.PERTURBATION, spec.perturbation.label())
            frame.insert(0, ResultColumns.ALGORITHM, spec.algorithm.value)
            frames.append(frame)
    if frames:
        write_table(pd.concat(frames, ignore_index=True), path)


def _write_trajectories(result: MatrixResult, directory: pathlib.Path) -> None:
    directory.mkdir()
    for spec, seed, evaluation in result.cells:
        if evaluation is None:
            continue
        prefix = (
            f"{spec.algorithm.value}-{spec.perturbation.label()}-"
            f"{spec.perturbation.sigma:g}-seed-{seed}"
        )
        for episode, trajectory in enumerate(evaluation.trajectories):
            write_table(
                convert_trajectory_to_dataframe(trajectory),
                directory / f"{prefix}-episode-{episode}.csv",
            )


def cmd_eval(config: RunConfig, jobs: int = 1) -> pathlib.Path:
    """Evaluate the trained checkpoints zero-shot and write the result tables.

    Writes ``results.csv`` and ``summary.csv``; ``histogram.csv`` when an IRL run is
    present; ``curve-<env>.csv`` for a horizon sweep; ``diagnostics.csv`` when the
    planner collects diagnostics; and per-episode trajectories on request.

    Args:
        config: The run configuration.
        jobs: Matrix cells evaluated concurrently, and the least number of rollout
            workers every planner uses.

    Returns:
        The eval directory.

    Raises:
        MissingArtifactError: naming the first absent checkpoint or demo file.
    """
    root = _output_root(config)
    train_directory = _latest_stage(root, PathConstants.TRAIN_STAGE)
    specs = config.experiment_specs()
    seeds = config.experiment_seeds

    cache: Dict[TrainingKey, TrainedArtifacts] = {}
    for spec in specs:
        for seed in seeds:
            key = training_key(spec, seed)
            if key not in cache:
                cache[key] = _load_artifacts(train_directory, spec, seed)

    sweep_runs: Dict[int, TrainedArtifacts] = {}
    if config.eval.horizon_sweep:
        gail = config.experiment_spec(
            Algorithm.GAIL, config.evaluation_perturbations()[0]
        )
        sweep_runs = {
            seed: _load_artifacts(train_directory, gail, seed) for seed in seeds
        }

    histogram_run: Optional[Tuple[ExperimentSpec, TrainedArtifacts]] = None
    for spec in specs:
        artifacts = cache[training_key(spec, seeds[0])]
        if artifacts.discriminator is not None:
            histogram_run = (spec, artifacts)
            break
    histogram_demos: Optional[DemoSet] = None
    if histogram_run is not None:
        histogram_demos = _read_demos(
            _latest_stage(root, PathConstants.DEMOS_STAGE), seeds[:1]
        )[seeds[0]]

    stage = _fresh_stage(config, PathConstants.EVAL_STAGE)
    result = run_matrix(
        specs,
        jobs,
        provider=lambda spec, seed: cache[training_key(spec, seed)],
        collect_diagnostics=any(
            spec.planner is not None and spec.planner.diagnostics for spec in specs
        ),
        planner_workers=jobs,
    )
    write_table(result.results, stage / RESULTS_FILE)
    write_table(result.summary, stage / SUMMARY_FILE)
    _write_diagnostics(result, stage / DIAGNOSTICS_FILE)
    if config.eval.dump_trajectories:
        _write_trajectories(result, stage / TRAJECTORY_DIRECTORY)

    if histogram_run is not None and histogram_demos is not None:
        spec, artifacts = histogram_run
        assert artifacts.discriminator is not None
        write_table(
            reward_histograms(
                artifacts.discriminator,
                artifacts.policy,
                histogram_demos,
                training_env(spec),
                bins=config.eval.histogram_bins,
                seeds=episode_seeds(seeds[0], config.eval.episodes),
            ),
            stage / HISTOGRAM_FILE,
        )

    if sweep_runs:
        references = {
            seed: measure_references(config.env.name, seed, config.eval.episodes)
            for seed in seeds
        }
        curve = horizon_sweep(
            sweep_runs,
            config.env.name,
            references,
            horizons=config.eval.horizons,
            budget=config.eval.sweep_budget,
            episodes=config.eval.episodes,
            perturbation=config.perturbation,
            planner=config.planner,
        )
        write_table(curve, stage / curve_file_name(config.env.name))

    print(result.summary.to_string(index=False))
    return stage


def cmd_plot(config: RunConfig, jobs: int = 1) -> pathlib.Path:
    """Render SVG figures from the most recent eval directory's tables.

    Args:
        config: The run configuration; only the output root is used.
        jobs: Unused.

    Returns:
        The plots directory.

    Raises:
        MissingArtifactError: if no eval output exists.
        EmptyResultsError: if the results hold no successful row.
    """
    eval_directory = _latest_stage(_output_root(config), PathConstants.EVAL_STAGE)
    results = read_table(eval_directory / RESULTS_FILE)
    if results.empty or not (
        results[ResultColumns.STATUS] == ResultColumns.STATUS_OK
    ).any():
        raise EmptyResultsError(
            f"{eval_directory / RESULTS_FILE} holds no successful rows"
        )

    stage = _fresh_stage(config, PathConstants.PLOT_STAGE)
    for path in sorted(eval_directory.glob("curve-*.csv")):
        env_name = path.stem[len("curve-") :]
        plot_curve(read_table(path), env_name, stage / f"{path.stem}.svg")
    histogram = eval_directory / HISTOGRAM_FILE
    if histogram.is_file():
        plot_histogram(read_table(histogram), stage / "histogram.svg")
    for env_name, perturbation in swept_groups(results):
        plot_noise_sweep(
            results,
            env_name,
            perturbation,
            stage / f"sweep-{env_name}-{perturbation}.svg",
        )
    print(f"figures written to {stage}")
    return stage


def cmd_all(config: RunConfig, jobs: int = 1) -> pathlib.Path:
    """Run demos, train, eval and plot in sequence.

    Returns:
        The plots directory.
    """
    cmd_demos(config, jobs)
    cmd_train(config, jobs)
    cmd_eval(config, jobs)
    return cmd_plot(config, jobs)
