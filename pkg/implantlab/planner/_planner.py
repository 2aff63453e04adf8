# -*- coding: utf-8 -*-

"""Random-shooting planning over policy-seeded candidates."""

import logging
from concurrent.futures import Executor
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from implantlab.core import (
    ImplantError,
    PlanningAbortedError,
    SimulationDivergedError,
    substream,
)
from implantlab.envs import EnvState, Mdp, StepResult
from implantlab.imitation import Discriminator, GaussianPolicy, reward, ValueFn

from ._returns import discounted_return
from .models import (
    CandidateRollout,
    CandidateSource,
    PlanDiagnostics,
    PlannerConfig,
    RolloutPolicy,
)

_logger = logging.getLogger(__name__)

_StepOutcome = Tuple[Optional[StepResult], bool]


class _Candidate:
    """Mutable bookkeeping of one rollout while the batch advances in lockstep."""

    __slots__ = (
        "index",
        "rng",
        "state",
        "observation",
        "first_action",
        "observations",
        "actions",
        "rewards",
        "active",
        "terminated",
        "diverged",
    )

    def __init__(
        self,
        index: int,
        rng: np.random.Generator,
        state: EnvState,
        observation: np.ndarray,
        first_action: np.ndarray,
    ) -> None:
        self.index = index
        self.rng = rng
        self.state = state
        self.observation = observation
        self.first_action = first_action
        self.observations: List[np.ndarray] = []
        self.actions: List[np.ndarray] = []
        self.rewards: List[float] = []
        self.active = True
        self.terminated = False
        self.diverged = False


def _step_chunk(
    env: Mdp, jobs: Sequence[Tuple[EnvState, np.ndarray]]
) -> List[_StepOutcome]:
    outcomes: List[_StepOutcome] = []
    for state, action in jobs:
        try:
            outcomes.append((env.step(state, action), False))
        except SimulationDivergedError:
            outcomes.append((None, True))
    return outcomes


class _Stepper:
    """Steps a batch of model states, serially or across per-worker env clones."""

    def __init__(
        self, model_env: Mdp, workers: int, executor: Optional[Executor]
    ) -> None:
        self._executor = executor if workers > 1 else None
        self._envs = (
            [model_env.clone() for _ in range(workers)]
            if self._executor is not None
            else [model_env]
        )

    def step(self, jobs: List[Tuple[EnvState, np.ndarray]]) -> List[_StepOutcome]:
        if self._executor is None or len(jobs) < 2:
            return _step_chunk(self._envs[0], jobs)
        n_chunks = min(len(self._envs), len(jobs))
        bounds = np.linspace(0, len(jobs), n_chunks + 1).astype(int)
        futures = [
            self._executor.submit(_step_chunk, env, jobs[lo:hi])
            for env, lo, hi in zip(self._envs, bounds[:-1], bounds[1:])
        ]
        outcomes: List[_StepOutcome] = []
        for future in futures:
            outcomes.extend(future.result())
        return outcomes


def _first_actions(
    observation: np.ndarray,
    policy: GaussianPolicy,
    model_env: Mdp,
    config: PlannerConfig,
    rngs: List[np.random.Generator],
) -> List[np.ndarray]:
    if config.candidate_source is CandidateSource.UNIFORM_RANDOM:
        return [model_env.sample_uniform_action(rng) for rng in rngs]
    mean = policy.mean(observation)
    actions = []
    for i, rng in enumerate(rngs):
        if i == 0 and config.anchor_mean:
            actions.append(policy.clip(mean))
        else:
            actions.append(
                policy.clip(mean + policy.std * rng.standard_normal(policy.action_dim))
            )
    return actions


def _continuation_actions(
    candidates: List[_Candidate],
    policy: GaussianPolicy,
    model_env: Mdp,
    config: PlannerConfig,
) -> List[np.ndarray]:
    mode = config.rollout_policy
    if mode is RolloutPolicy.UNIFORM_RANDOM:
        return [model_env.sample_uniform_action(c.rng) for c in candidates]
    means = policy.mean(np.vstack([c.observation for c in candidates]))
    actions = []
    for c, mean in zip(candidates, means):
        if mode is RolloutPolicy.POLICY_MEAN:
            actions.append(policy.clip(mean))
        elif mode is RolloutPolicy.POLICY_SAMPLE:
            z = c.rng.standard_normal(policy.action_dim)
            actions.append(policy.clip(mean + policy.std * z))
        elif c.rng.random() < config.mixture_weight:
            z = c.rng.standard_normal(policy.action_dim)
            actions.append(policy.clip(mean + policy.std * z))
        else:
            actions.append(model_env.sample_uniform_action(c.rng))
    return actions


RewardFn = Callable[[np.ndarray, np.ndarray], np.ndarray]
"""Batched inferred reward of ``(observations, actions)`` rows."""


def discriminator_reward_fn(discriminator: Discriminator) -> RewardFn:
    """Batched ``-log(1 - D(s, a))`` of a discriminator."""

    def _reward(observations: np.ndarray, actions: np.ndarray) -> np.ndarray:
        return np.asarray(reward(discriminator, observations, actions))

    return _reward


def simulate_candidates(
    state: EnvState,
    observation: np.ndarray,
    policy: GaussianPolicy,
    reward_fn: RewardFn,
    value_fn: ValueFn,
    model_env: Mdp,
    config: PlannerConfig,
    episode_seed: int,
    step: int,
    executor: Optional[Executor] = None,
) -> List[CandidateRollout]:
    """Simulate and score every candidate of one decision step.

    Candidate ``i`` draws all its randomness from ``substream(episode_seed, step, i)``.
    Network evaluations are batched over candidates on the calling thread and only
    environment steps are spread over workers, so the rollouts are bit-identical for
    any worker count.

    Args:
        state: True environment state.
        observation: True observation; first actions are drawn from the policy here.
        policy: The imitation policy.
        reward_fn: Batched inferred reward.
        value_fn: Terminal value function.
        model_env: The train-mode simulator; it adopts ``state`` before rolling out.
        config: Planner settings.
        episode_seed: Seed identifying the episode.
        step: Index of the decision step within the episode.
        executor: Thread pool used when ``config.workers`` exceeds 1.

    Returns:
        One scored rollout per candidate, in index order.

    Raises:
        PlanningAbortedError: if a non-finite reward or value is met.
    """
    start = model_env.adopt(state)
    start_observation = model_env.observe(start)
    rngs = [substream(episode_seed, step, i) for i in range(config.budget)]
    firsts = _first_actions(observation, policy, model_env, config, rngs)
    candidates = [
        _Candidate(i, rngs[i], start, start_observation, firsts[i])
        for i in range(config.budget)
    ]
    stepper = _Stepper(model_env, config.workers, executor)

    for k in range(config.horizon):
        active = [c for c in candidates if c.active]
        if not active:
            break
        if k == 0:
            actions = [model_env.clip_action(c.first_action) for c in active]
        else:
            actions = _continuation_actions(active, policy, model_env, config)
        rewards = reward_fn(
            np.vstack([c.observation for c in active]), np.vstack(actions)
        )
        outcomes = stepper.step([(c.state, a) for c, a in zip(active, actions)])
        for c, action, r, (result, diverged) in zip(active, actions, rewards, outcomes):
            if diverged or result is None:
                c.diverged = True
                c.active = False
                continue
            c.observations.append(c.observation)
            c.actions.append(action)
            c.rewards.append(float(r))
            c.state, c.observation = result.state, result.observation
            if result.done:
                c.terminated = result.terminated
                c.active = False

    alive = [c for c in candidates if not c.diverged and not c.terminated]
    values = np.zeros(len(candidates))
    if alive:
        values[[c.index for c in alive]] = np.atleast_1d(
            value_fn.value(np.vstack([c.observation for c in alive]))
        )

    rollouts = []
    for c in candidates:
        score = (
            -np.inf
            if c.diverged
            else discounted_return(
                c.rewards, values[c.index], config.gamma, c.terminated, c.index
            )
        )
        rollouts.append(
            CandidateRollout(
                index=c.index,
                first_action=c.first_action,
                observations=c.observations,
                actions=c.actions,
                rewards=c.rewards,
                terminal_observation=c.observation,
                terminated=c.terminated,
                diverged=c.diverged,
                estimated_return=float(score),
            )
        )
    return rollouts


def plan_action(
    state: EnvState,
    observation: np.ndarray,
    policy: GaussianPolicy,
    reward_fn: RewardFn,
    value_fn: ValueFn,
    model_env: Mdp,
    config: PlannerConfig,
    episode_seed: int,
    step: int,
    executor: Optional[Executor] = None,
) -> Tuple[np.ndarray, PlanDiagnostics]:
    """Choose an action by random shooting.

    Returns the first action of the highest-scoring candidate; ties go to the lowest
    index. Arguments are those of :func:`simulate_candidates`.

    Returns:
        The chosen action and the step's diagnostics.

    Raises:
        PlanningAbortedError: if every candidate diverged, or a non-finite reward or
            value is met.
    """
    rollouts = simulate_candidates(
        state,
        observation,
        policy,
        reward_fn,
        value_fn,
        model_env,
        config,
        episode_seed,
        step,
        executor,
    )
    scores = np.array([r.estimated_return for r in rollouts])
    diverged = [r.index for r in rollouts if r.diverged]
    if len(diverged) == len(rollouts):
        raise PlanningAbortedError(
            f"all {len(rollouts)} candidates diverged at step {step}",
            ImplantError(name="PlanningAborted"),
        )
    if diverged:
        _logger.debug("step %d: candidates %s diverged", step, diverged)
    chosen = int(np.argmax(scores))
    diagnostics = PlanDiagnostics(step, chosen, scores, diverged)
    return rollouts[chosen].first_action, diagnostics
