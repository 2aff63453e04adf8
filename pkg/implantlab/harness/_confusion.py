# -*- coding: utf-8 -*-

"""Copy-score of policies trained under the action nuisance."""

from typing import Optional, Sequence

import numpy as np

from implantlab.envs import make_env, Mdp
from implantlab.imitation import GaussianPolicy
from implantlab.perturb import (
    apply_perturbation,
    PerturbationKind,
    PerturbationMode,
    PerturbationSpec,
)
from implantlab.planner import run_policy_episode

from ._references import episode_seeds
from .models import ExperimentSpec


def confounded_env(env_name: str) -> Mdp:
    """The train-mode action-nuisance environment, where the nuisance is informative."""
    return apply_perturbation(
        make_env(env_name),
        PerturbationSpec(
            kind=PerturbationKind.ACTION_NUISANCE, mode=PerturbationMode.TRAIN
        ),
    )


def collect_confounded_observations(
    env: Mdp, policy: GaussianPolicy, seeds: Sequence[int]
) -> np.ndarray:
    """Observations visited by ``policy`` in ``env``, one episode per seed."""
    return np.vstack(
        [run_policy_episode(env, policy, seed).observation_matrix() for seed in seeds]
    )


def causal_confusion_probe(
    policy: GaussianPolicy, observations: np.ndarray, nuisance_dims: int
) -> float:
    """Mean cosine similarity between policy outputs and the nuisance dims.

    The nuisance occupies the last ``nuisance_dims`` entries of every observation, as
    the action nuisance appends the previous action. A policy that copies its
    previous action scores close to 1. Rows where either vector is zero are skipped;
    with no row left the score is 0.

    Raises:
        ValueError: if the nuisance width differs from the action width.
    """
    if nuisance_dims != policy.action_dim:
        raise ValueError("the nuisance must have the action's width")
    observations = np.atleast_2d(observations)
    outputs = np.atleast_2d(policy.mean(observations))
    nuisance = observations[:, -nuisance_dims:]
    norms = np.linalg.norm(outputs, axis=1) * np.linalg.norm(nuisance, axis=1)
    valid = norms > 1e-12
    if not np.any(valid):
        return 0.0
    cosine = np.sum(outputs * nuisance, axis=1)[valid] / norms[valid]
    return float(np.mean(cosine))


def cell_copy_score(
    spec: ExperimentSpec, seed: int, policy: GaussianPolicy
) -> Optional[float]:
    """Copy-score of a cell's policy, or None where it does not apply.

    Only policies executed directly under the action nuisance are scored. The states
    come from the cell's evaluation episode seeds, replayed in the train-mode env.
    """
    if (
        spec.perturbation.kind is not PerturbationKind.ACTION_NUISANCE
        or spec.algorithm.uses_planner
    ):
        return None
    env = confounded_env(spec.env)
    observations = collect_confounded_observations(
        env, policy, episode_seeds(seed, spec.episodes)
    )
    return causal_confusion_probe(policy, observations, env.action_dim)
