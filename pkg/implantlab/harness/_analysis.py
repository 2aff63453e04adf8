# -*- coding: utf-8 -*-

"""Horizon sweep and inferred-reward distributions."""

import logging
from typing import Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from implantlab.core import ZeroShotGuard
from implantlab.envs import DemoSet, make_env, Mdp
from implantlab.imitation import Discriminator, GaussianPolicy, reward
from implantlab.perturb import apply_perturbation, PerturbationSpec
from implantlab.planner import (
    discriminator_reward_fn,
    PlannerConfig,
    run_episode_with_planning,
    run_policy_episode,
)

from ._evaluation import build_test_env
from ._references import episode_seeds, ReferenceReturns
from ._training import TrainedArtifacts
from .models import Algorithm, ExperimentSpec
from .utilities import CurveColumns, HistogramColumns

_logger = logging.getLogger(__name__)

HORIZON_GRID: Tuple[int, ...] = (0, 10, 50, 100)
"""Planning horizons of the horizon sweep."""

SWEEP_BUDGET = 10
"""Rollout budget of the horizon sweep."""


def horizon_sweep(
    trained: Mapping[int, TrainedArtifacts],
    env_name: str,
    references: Mapping[int, ReferenceReturns],
    horizons: Sequence[int] = HORIZON_GRID,
    budget: int = SWEEP_BUDGET,
    episodes: int = 20,
    perturbation: Optional[PerturbationSpec] = None,
    planner: Optional[PlannerConfig] = None,
) -> pd.DataFrame:
    """Normalized planner performance as a function of the horizon.

    With ``H = 0`` candidates are scored by the terminal value function alone.

    Args:
        trained: IRL artifacts per seed.
        env_name: The environment.
        references: Reference returns per seed.
        horizons: Horizons to evaluate.
        budget: Rollout budget B.
        episodes: Episodes per seed and horizon.
        perturbation: Test perturbation; none by default.
        planner: Base planner settings; budget and horizon are overridden.

    Returns:
        One row per horizon: ``H, mean_normalized, stderr`` across seeds.
    """
    base = planner or PlannerConfig()
    rows = []
    for horizon in horizons:
        config = base.model_copy(update={"budget": budget, "horizon": horizon})
        spec = ExperimentSpec(
            env=env_name,
            algorithm=Algorithm.IMPLANT,
            perturbation=perturbation or PerturbationSpec(),
            planner=config,
            seeds=sorted(trained),
            episodes=episodes,
        )
        scores = []
        for seed in sorted(trained):
            artifacts = trained[seed]
            assert artifacts.discriminator is not None
            assert artifacts.value_fn is not None
            with ZeroShotGuard.evaluation_phase():
                test = build_test_env(spec, seed)
                model = apply_perturbation(
                    make_env(env_name), spec.perturbation.training_view()
                )
                returns = [
                    run_episode_with_planning(
                        test,
                        model,
                        artifacts.policy,
                        discriminator_reward_fn(artifacts.discriminator),
                        artifacts.value_fn,
                        config,
                        episode_seed,
                    ).total_return()
                    for episode_seed in episode_seeds(seed, episodes)
                ]
            scores.append(references[seed].normalize(float(np.mean(returns))))
        stderr = (
            float(np.std(scores, ddof=1) / np.sqrt(len(scores)))
            if len(scores) > 1
            else 0.0
        )
        _logger.info("horizon %d: normalized %.4f", horizon, np.mean(scores))
        rows.append([horizon, float(np.mean(scores)), stderr])
    return pd.DataFrame(rows, columns=CurveColumns.CURVE_COLUMNS)


def reward_histogram_table(
    policy_rewards: np.ndarray, expert_rewards: np.ndarray, bins: int = 30
) -> pd.DataFrame:
    """Density histograms of two reward samples over shared bin edges.

    Returns:
        ``bin_left, bin_right, density_policy, density_expert``; each density
        integrates to 1 over the bins.

    Raises:
        ValueError: if a sample is empty or ``bins`` is below 1.
    """
    policy_rewards = np.asarray(policy_rewards, dtype=np.float64)
    expert_rewards = np.asarray(expert_rewards, dtype=np.float64)
    if policy_rewards.size == 0 or expert_rewards.size == 0:
        raise ValueError("both reward samples must be non-empty")
    if bins < 1:
        raise ValueError("bins must be at least 1")
    edges = np.histogram_bin_edges(
        np.concatenate([policy_rewards, expert_rewards]), bins=bins
    )
    density_policy, _ = np.histogram(policy_rewards, bins=edges, density=True)
    density_expert, _ = np.histogram(expert_rewards, bins=edges, density=True)
    return pd.DataFrame(
        {
            HistogramColumns.BIN_LEFT: edges[:-1],
            HistogramColumns.BIN_RIGHT: edges[1:],
            HistogramColumns.DENSITY_POLICY: density_policy,
            HistogramColumns.DENSITY_EXPERT: density_expert,
        },
        columns=HistogramColumns.HISTOGRAM_COLUMNS,
    )


def reward_histograms(
    discriminator: Discriminator,
    policy: GaussianPolicy,
    demos: DemoSet,
    env: Mdp,
    bins: int = 30,
    seeds: Sequence[int] = (0,),
) -> pd.DataFrame:
    """Inferred-reward distributions of policy pairs versus expert pairs.

    Policy pairs come from full deterministic evaluation episodes on ``env``, one
    per entry of ``seeds``.
    """
    observations, actions = [], []
    with ZeroShotGuard.evaluation_phase():
        for seed in seeds:
            trajectory = run_policy_episode(env, policy, seed)
            observations.append(trajectory.observation_matrix())
            actions.append(trajectory.action_matrix())
    policy_rewards = np.asarray(
        reward(discriminator, np.vstack(observations), np.vstack(actions))
    )
    expert_rewards = np.asarray(
        reward(discriminator, demos.observations, demos.actions)
    )
    _logger.info(
        "mean inferred reward: policy %.4f, expert %.4f",
        policy_rewards.mean(),
        expert_rewards.mean(),
    )
    return reward_histogram_table(policy_rewards, expert_rewards, bins)
