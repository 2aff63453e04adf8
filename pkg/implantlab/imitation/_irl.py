# -*- coding: utf-8 -*-

"""Implementation of adversarial IRL training."""

import logging
from typing import Any, Callable, List, NamedTuple, Optional, Tuple

import events
import numpy as np

from implantlab.core import (
    ConfigurationError,
    named_seed,
    substream,
    TrainingDivergedError,
)
from implantlab.envs import DemoSet, Mdp
from implantlab.net import OptimizerState

from ._discriminator import Discriminator, discriminator_update, reward
from ._gae import gae_advantages, normalize_advantages
from ._gaussian_policy import GaussianPolicy
from ._policy_update import policy_update, PolicyBatch
from ._value_fn import ValueFn
from .models import IrlConfig, TrainingRecord

_logger = logging.getLogger(__name__)

Monitor = Callable[[GaussianPolicy], float]
"""Measures the ground-truth return of a policy on an unmasked environment."""


class IrlResult(NamedTuple):
    """The trained triple and its training log."""

    policy: GaussianPolicy
    discriminator: Discriminator
    value_fn: ValueFn
    log: List[TrainingRecord]


class _Segment(NamedTuple):
    start: int
    end: int
    terminated: bool
    final_observation: np.ndarray


class _Batch(NamedTuple):
    observations: np.ndarray
    raw_actions: np.ndarray
    executed_actions: np.ndarray
    log_probs: np.ndarray
    segments: List[_Segment]


class IrlTrainer(events.Events):
    """Alternates on-policy collection, policy updates and discriminator updates.

    The environment handle must have its reward channel disabled; the only reward the
    policy ever sees is ``-log(1 - D(s, a))``.

    Attributes:
        iteration_completed: An event triggered after every iteration with its
            :class:`TrainingRecord`.

            Example::

                trainer.iteration_completed += lambda record: print(record.disc_loss)
    """

    __events__ = ["iteration_completed"]
    # Declared for mypy, then deleted so Events.__getattr__ can create the slot.
    iteration_completed = None  # type: events._EventSlot
    del iteration_completed

    def __init__(self, config: IrlConfig, monitor: Optional[Monitor] = None) -> None:
        """Initialize a trainer.

        Args:
            config: IRL hyperparameters.
            monitor: Optional evaluation channel reporting the deterministic policy's
                ground-truth return each iteration.
        """
        super().__init__()
        self._config = config
        self._monitor = monitor

    # Work around https://github.com/pyeve/events/issues/17
    def __getattr__(self, name: str) -> Any:
        if name in self.__events__:
            return super().__getattr__(name)
        else:
            return object.__getattribute__(self, name)

    def train(self, env: Mdp, demos: DemoSet, rng: np.random.Generator) -> IrlResult:
        """Run the configured number of iterations.

        Args:
            env: A reward-free environment handle.
            demos: Expert pairs.
            rng: Root generator; all other streams derive from one draw of it.

        Returns:
            The policy, discriminator, value function and per-iteration log.

        Raises:
            ConfigurationError: if the handle exposes rewards, or the demos are empty
                or do not match the environment's dimensions.
            TrainingDivergedError: carrying the iteration index, if an update diverges.
        """
        config = self._config
        if "reward_free" not in env.kinds:
            raise ConfigurationError("IRL training requires a reward-free env handle")
        if demos.pairs == 0:
            raise ConfigurationError("IRL training needs at least one demo pair")
        if demos.obs_dim != env.obs_dim or demos.act_dim != env.action_dim:
            raise ConfigurationError(
                f"demos are {demos.obs_dim}x{demos.act_dim} but the environment is "
                f"{env.obs_dim}x{env.action_dim}"
            )

        root = named_seed(int(rng.integers(0, 2**63 - 1)), "irl")
        init_rng = substream(root, "init")
        policy = GaussianPolicy.create(
            env.obs_dim,
            env.action_low,
            env.action_high,
            init_rng,
            hidden_dims=config.hidden_dims,
            init_log_std=config.init_log_std,
            min_log_std=config.min_log_std,
        )
        discriminator = Discriminator.create(
            env.obs_dim, env.action_dim, init_rng, config.hidden_dims
        )
        value_fn = ValueFn.create(env.obs_dim, init_rng, config.hidden_dims)
        policy_optimizer = OptimizerState(policy.parameters(), config.policy_lr)
        value_optimizer = OptimizerState(value_fn.net.parameters(), config.value_lr)
        disc_optimizer = OptimizerState(discriminator.net.parameters(), config.disc_lr)
        expert_pairs = np.hstack([demos.observations, demos.actions])

        log: List[TrainingRecord] = []
        for iteration in range(config.iterations):
            try:
                record = self._iteration(
                    iteration,
                    root,
                    env,
                    demos,
                    expert_pairs,
                    policy,
                    discriminator,
                    value_fn,
                    policy_optimizer,
                    value_optimizer,
                    disc_optimizer,
                )
            except TrainingDivergedError as e:
                _logger.error("IRL training diverged at iteration %d: %s", iteration, e)
                raise e.with_iteration(iteration) from e
            log.append(record)
            self.iteration_completed(record)

        return IrlResult(policy, discriminator, value_fn, log)

    def _iteration(
        self,
        iteration: int,
        root: int,
        env: Mdp,
        demos: DemoSet,
        expert_pairs: np.ndarray,
        policy: GaussianPolicy,
        discriminator: Discriminator,
        value_fn: ValueFn,
        policy_optimizer: OptimizerState,
        value_optimizer: OptimizerState,
        disc_optimizer: OptimizerState,
    ) -> TrainingRecord:
        config = self._config
        batch = collect_batch(
            env, policy, config.batch_steps, substream(root, "collect", iteration)
        )

        if iteration < config.norm_warmup_iterations:
            discriminator.normalizer.update(
                np.vstack(
                    [
                        expert_pairs,
                        np.hstack([batch.observations, batch.executed_actions]),
                    ]
                )
            )
        else:
            discriminator.normalizer.freeze()

        rewards = np.asarray(
            reward(discriminator, batch.observations, batch.executed_actions)
        )
        values = np.asarray(value_fn.value(batch.observations))
        advantages, targets = _segment_advantages(
            batch, rewards, values, value_fn, config
        )

        stats = policy_update(
            policy,
            value_fn,
            PolicyBatch(
                batch.observations,
                batch.raw_actions,
                normalize_advantages(advantages),
                batch.log_probs,
                targets,
            ),
            config,
            policy_optimizer,
            value_optimizer,
            substream(root, "update", iteration),
        )

        expert_obs, expert_actions = demos.observations, demos.actions
        if config.expert_noise_sigma > 0.0:
            noise_rng = substream(root, "expert_noise", iteration)
            expert_obs = expert_obs + config.expert_noise_sigma * (
                noise_rng.standard_normal(expert_obs.shape)
            )
            expert_actions = expert_actions + config.expert_noise_sigma * (
                noise_rng.standard_normal(expert_actions.shape)
            )
        update = discriminator_update(
            discriminator,
            expert_obs,
            expert_actions,
            batch.observations,
            batch.executed_actions,
            config.disc_entropy_coeff,
            config.discriminator_steps,
            disc_optimizer,
            substream(root, "discriminator", iteration),
            config.disc_minibatch_size,
        )

        mean_return = float("nan") if self._monitor is None else self._monitor(policy)
        record = TrainingRecord(
            iteration=iteration,
            mean_return=mean_return,
            disc_loss=update.loss,
            mean_inferred_reward=float(np.mean(rewards)),
            policy_kl=stats.policy_kl,
            value_loss=stats.value_loss,
        )
        _logger.info(
            "iteration %d: disc_loss=%.4f mean_inferred_reward=%.4f kl=%.4g "
            "value_loss=%.4g mean_return=%.4g",
            iteration,
            record.disc_loss,
            record.mean_inferred_reward,
            record.policy_kl,
            record.value_loss,
            record.mean_return,
        )
        return record

    # Fake method to tell mypy the type of our events
    def __type_hinting__(self) -> None:
        slot = type(self).iteration_completed  # type: events._EventSlot
        self.iteration_completed = slot


def _segment_advantages(
    batch: _Batch,
    rewards: np.ndarray,
    values: np.ndarray,
    value_fn: ValueFn,
    config: IrlConfig,
) -> Tuple[np.ndarray, np.ndarray]:
    advantages: List[np.ndarray] = []
    targets: List[np.ndarray] = []
    for segment in batch.segments:
        bootstrap = (
            0.0
            if segment.terminated
            else float(value_fn.value(segment.final_observation))
        )
        seg_values = np.append(values[segment.start : segment.end], bootstrap)
        adv, tgt = gae_advantages(
            rewards[segment.start : segment.end],
            seg_values,
            config.gamma,
            config.lam,
            normalize=False,
        )
        advantages.append(adv)
        targets.append(tgt)
    return np.concatenate(advantages), np.concatenate(targets)


def collect_batch(
    env: Mdp, policy: GaussianPolicy, steps: int, rng: np.random.Generator
) -> _Batch:
    """Run the stochastic policy for ``steps`` steps, resetting on episode end.

    Episodes start fresh at the beginning of every batch; the last segment is cut at
    the batch boundary and later bootstrapped from the value function.
    """
    observations, raw_actions, executed, log_probs = [], [], [], []
    segments: List[_Segment] = []
    state, obs = env.reset(rng)
    start = 0
    for t in range(steps):
        raw = policy.sample_raw(obs, rng)
        action = policy.clip(raw)
        result = env.step(state, action)
        observations.append(obs)
        raw_actions.append(raw)
        executed.append(action)
        log_probs.append(float(policy.log_prob(obs, raw)))
        state, obs = result.state, result.observation
        if result.done or t == steps - 1:
            segments.append(_Segment(start, t + 1, result.terminated, obs))
            start = t + 1
            if result.done and t < steps - 1:
                state, obs = env.reset(rng)
    return _Batch(
        np.asarray(observations),
        np.asarray(raw_actions),
        np.asarray(executed),
        np.asarray(log_probs),
        segments,
    )


def irl_train(
    env: Mdp,
    demos: DemoSet,
    config: IrlConfig,
    rng: np.random.Generator,
    monitor: Optional[Monitor] = None,
) -> IrlResult:
    """Learn a policy, a discriminator reward and a value function from demos.

    Raises:
        ConfigurationError: if ``env`` exposes rewards or the demos do not fit it.
        TrainingDivergedError: carrying the iteration index, if an update diverges.
    """
    return IrlTrainer(config, monitor).train(env, demos, rng)
