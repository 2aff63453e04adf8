# -*- coding: utf-8 -*-

"""Zero-shot evaluation of one (spec, seed) cell."""

import logging
from concurrent.futures import Executor
from typing import List, NamedTuple, Optional

import numpy as np

from implantlab.core import substream, ZeroShotGuard
from implantlab.envs import make_env, Mdp, Trajectory
from implantlab.perturb import apply_perturbation, model_env, PerturbationMode
from implantlab.planner import (
    discriminator_reward_fn,
    PlanDiagnostics,
    run_episode_with_planning,
    run_policy_episode,
)

from ._confusion import cell_copy_score
from ._references import episode_seeds, ReferenceReturns
from ._training import TrainedArtifacts
from .models import ExperimentSpec, ResultRow
from .utilities import ResultColumns

_logger = logging.getLogger(__name__)


class CellEvaluation(NamedTuple):
    """Result row of a cell plus optional per-episode detail."""

    row: ResultRow
    trajectories: List[Trajectory]
    diagnostics: List[List[PlanDiagnostics]]


def build_test_env(spec: ExperimentSpec, seed: int) -> Mdp:
    """The test-mode environment of a cell.

    Noise streams are keyed by seed and perturbation kind only, so every algorithm
    and every sigma of a sweep meets the same normalized noise draws.
    """
    perturbation = spec.perturbation.for_mode(PerturbationMode.TEST)
    return apply_perturbation(
        make_env(spec.env),
        perturbation,
        substream(seed, "test-noise", perturbation.kind.value),
    )


def failed_row(spec: ExperimentSpec, seed: int, reason: str) -> ResultRow:
    """A row for a cell that could not be evaluated."""
    return ResultRow(
        env=spec.env,
        algorithm=spec.algorithm.value,
        perturbation=spec.perturbation.label(),
        sigma=spec.perturbation.sigma,
        seed=seed,
        mean_return=float("nan"),
        std_return=float("nan"),
        normalized=float("nan"),
        n_episodes=0,
        status=f"{ResultColumns.FAILED_PREFIX}{reason}",
    )


def evaluate_cell(
    spec: ExperimentSpec,
    seed: int,
    artifacts: TrainedArtifacts,
    references: ReferenceReturns,
    executor: Optional[Executor] = None,
    collect_diagnostics: bool = False,
    planner_workers: int = 1,
) -> CellEvaluation:
    """Evaluate trained artifacts zero-shot in the test environment.

    Runs inside an evaluation phase, so any gradient update raises. BC and GAIL
    variants execute the policy mean; planner algorithms plan with the train-mode
    model of the environment. Policies executed directly under the action nuisance
    also get a copy-score.

    Args:
        spec: The experiment.
        seed: The experiment seed.
        artifacts: The trained policy, and for planners the reward and value nets.
        references: Expert and random returns of this seed.
        executor: Thread pool for planner rollouts.
        collect_diagnostics: Keep per-step planner diagnostics.
        planner_workers: Lower bound on the planner's rollout workers; results do
            not depend on it.

    Returns:
        The result row, the episode trajectories and any diagnostics.

    Raises:
        PlanningAbortedError: if planning fails.
        SimulationDivergedError: if the test environment diverges.
    """
    planner = spec.planner
    if planner is not None and planner_workers > planner.workers:
        planner = planner.model_copy(update={"workers": planner_workers})
    with ZeroShotGuard.evaluation_phase():
        env = build_test_env(spec, seed)
        model = model_env(make_env(spec.env), spec.perturbation)
        trajectories: List[Trajectory] = []
        diagnostics: List[List[PlanDiagnostics]] = []
        for episode_seed in episode_seeds(seed, spec.episodes):
            if spec.algorithm.uses_planner:
                assert planner is not None
                assert artifacts.discriminator is not None
                assert artifacts.value_fn is not None
                steps: List[PlanDiagnostics] = []
                trajectory = run_episode_with_planning(
                    env,
                    model,
                    artifacts.policy,
                    discriminator_reward_fn(artifacts.discriminator),
                    artifacts.value_fn,
                    planner,
                    episode_seed,
                    executor,
                    steps if collect_diagnostics else None,
                )
                if collect_diagnostics:
                    diagnostics.append(steps)
            else:
                trajectory = run_policy_episode(env, artifacts.policy, episode_seed)
            trajectories.append(trajectory)
        copy_score = cell_copy_score(spec, seed, artifacts.policy)

    returns = np.array([t.total_return() for t in trajectories])
    mean = float(np.mean(returns))
    row = ResultRow(
        env=spec.env,
        algorithm=spec.algorithm.value,
        perturbation=spec.perturbation.label(),
        sigma=spec.perturbation.sigma,
        seed=seed,
        mean_return=mean,
        std_return=float(np.std(returns)),
        normalized=references.normalize(mean),
        n_episodes=len(trajectories),
        status=ResultColumns.STATUS_OK,
        copy_score=copy_score,
    )
    _logger.info(
        "%s seed %d: mean return %.4f, normalized %.4f",
        spec.label(),
        seed,
        row.mean_return,
        row.normalized,
    )
    return CellEvaluation(row, trajectories, diagnostics)
