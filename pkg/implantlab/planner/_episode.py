# -*- coding: utf-8 -*-

"""Closed-loop episodes: planned, or plain policy execution on the same streams."""

import logging
from concurrent.futures import Executor, ThreadPoolExecutor
from typing import List, Optional

import numpy as np

from implantlab.core import RejectedInputError, substream
from implantlab.envs import Mdp, Trajectory
from implantlab.imitation import GaussianPolicy, ValueFn

from ._planner import plan_action, RewardFn
from .models import PlanDiagnostics, PlannerConfig

_logger = logging.getLogger(__name__)


def episode_reset_rng(episode_seed: int) -> np.random.Generator:
    """Generator for the initial state of an evaluation episode."""
    return substream(episode_seed, "reset")


def run_episode_with_planning(
    test_env: Mdp,
    model_env: Mdp,
    policy: GaussianPolicy,
    reward_fn: RewardFn,
    value_fn: ValueFn,
    config: PlannerConfig,
    episode_seed: int,
    executor: Optional[Executor] = None,
    diagnostics: Optional[List[PlanDiagnostics]] = None,
) -> Trajectory:
    """Run one episode choosing every action with the planner.

    The model environment adopts the true state at every step. Ground-truth rewards
    are recorded for evaluation only.

    Args:
        test_env: The environment being evaluated, perturbations included.
        model_env: The train-mode simulator used for rollouts.
        policy: The imitation policy.
        reward_fn: Batched inferred reward.
        value_fn: Terminal value function.
        config: Planner settings.
        episode_seed: Seed of the episode's initial state and candidate streams.
        executor: Thread pool for rollouts; one is created when ``config.workers``
            exceeds 1 and none is given.
        diagnostics: If given, every step's diagnostics are appended to it.

    Returns:
        The executed trajectory.

    Raises:
        RejectedInputError: if the two environments disagree on dimensions.
        PlanningAbortedError: if planning fails at some step.
    """
    if test_env.action_dim != model_env.action_dim or (
        policy.obs_dim != test_env.obs_dim or policy.obs_dim != model_env.obs_dim
    ):
        raise RejectedInputError(
            "the test env, the model env and the policy must share dimensions"
        )
    if executor is None and config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            return run_episode_with_planning(
                test_env,
                model_env,
                policy,
                reward_fn,
                value_fn,
                config,
                episode_seed,
                pool,
                diagnostics,
            )

    state, obs = test_env.reset(episode_reset_rng(episode_seed))
    states, actions, rewards = [obs], [], []
    done = False
    for t in range(test_env.max_episode_steps):
        action, step_diagnostics = plan_action(
            state,
            obs,
            policy,
            reward_fn,
            value_fn,
            model_env,
            config,
            episode_seed,
            t,
            executor,
        )
        if diagnostics is not None:
            diagnostics.append(step_diagnostics)
        action = test_env.clip_action(action)
        result = test_env.step(state, action)
        actions.append(action)
        rewards.append(result.reward)
        states.append(result.observation)
        state, obs = result.state, result.observation
        if result.done:
            done = True
            break
    _logger.debug(
        "planned episode %d finished after %d steps", episode_seed, len(actions)
    )
    return Trajectory(states, actions, rewards, done)


def run_policy_episode(
    env: Mdp,
    policy: GaussianPolicy,
    episode_seed: int,
    stochastic: bool = False,
) -> Trajectory:
    """Run one episode executing the policy directly.

    Streams match :func:`run_episode_with_planning`: the initial state comes from the
    episode's reset stream, and a stochastic action at step ``t`` uses the stream of
    candidate 0 at that step.

    Args:
        env: The environment being evaluated.
        policy: The policy.
        episode_seed: Seed of the episode.
        stochastic: Sample actions instead of taking the mean.

    Returns:
        The executed trajectory.
    """
    state, obs = env.reset(episode_reset_rng(episode_seed))
    states, actions, rewards = [obs], [], []
    done = False
    for t in range(env.max_episode_steps):
        if stochastic:
            z = substream(episode_seed, t, 0).standard_normal(policy.action_dim)
            action = policy.clip(policy.mean(obs) + policy.std * z)
        else:
            action = policy.mean_action(obs)
        action = env.clip_action(action)
        result = env.step(state, action)
        actions.append(action)
        rewards.append(result.reward)
        states.append(result.observation)
        state, obs = result.state, result.observation
        if result.done:
            done = True
            break
    return Trajectory(states, actions, rewards, done)
