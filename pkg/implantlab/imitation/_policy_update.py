# -*- coding: utf-8 -*-

"""Clipped-surrogate policy update with value regression."""

from typing import NamedTuple, Optional

import numpy as np

from implantlab.core import TrainingDivergedError
from implantlab.net import optimizer_step, OptimizerState

from ._gaussian_policy import GaussianPolicy
from ._value_fn import ValueFn
from .models import IrlConfig


class PolicyBatch(NamedTuple):
    """On-policy samples for one update."""

    observations: np.ndarray
    """Observations at which actions were sampled."""

    actions: np.ndarray
    """Pre-clip sampled actions."""

    advantages: np.ndarray
    """Normalized advantages."""

    old_log_probs: np.ndarray
    """Log-densities of the actions under the sampling policy."""

    value_targets: np.ndarray
    """Regression targets of the value function."""


class PolicyUpdateStats(NamedTuple):
    """Summary of :func:`policy_update`."""

    policy_kl: float
    """Estimated KL between the sampling policy and the updated policy."""

    value_loss: float
    """Mean squared error of the value function after fitting."""

    epochs: int
    """Surrogate epochs run before finishing or stopping early."""


def policy_update(
    policy: GaussianPolicy,
    value_fn: ValueFn,
    batch: PolicyBatch,
    config: IrlConfig,
    policy_optimizer: Optional[OptimizerState] = None,
    value_optimizer: Optional[OptimizerState] = None,
    rng: Optional[np.random.Generator] = None,
) -> PolicyUpdateStats:
    """Maximize the clipped importance-ratio surrogate, then fit the value function.

    The surrogate is ``mean(min(r A, clip(r, 1 - eps, 1 + eps) A))`` plus
    ``policy_entropy_coeff`` times the policy entropy. Epochs stop early once the
    estimated ``KL(old || new)`` exceeds ``config.target_kl``.

    Args:
        policy: Updated in place; its log-std floor is enforced after every step.
        value_fn: Updated in place.
        batch: Samples collected with the pre-update policy.
        config: Epoch counts, clip ratio, step sizes and minibatch size.
        policy_optimizer: State over ``policy.parameters()``; a fresh Adam state with
            ``config.policy_lr`` by default.
        value_optimizer: State over ``value_fn.net.parameters()``; a fresh Adam state
            with ``config.value_lr`` by default.
        rng: Generator for minibatch shuffling; without it, full batches are used.

    Returns:
        The KL estimate, the value loss and the number of epochs run.

    Raises:
        TrainingDivergedError: if an importance ratio is not finite.
    """
    if policy_optimizer is None:
        policy_optimizer = OptimizerState(policy.parameters(), config.policy_lr)
    if value_optimizer is None:
        value_optimizer = OptimizerState(value_fn.net.parameters(), config.value_lr)

    obs = np.atleast_2d(batch.observations)
    actions = np.atleast_2d(batch.actions)
    advantages = np.asarray(batch.advantages, dtype=np.float64)
    old_log_probs = np.asarray(batch.old_log_probs, dtype=np.float64)
    n = obs.shape[0]
    minibatch = n if rng is None else min(config.minibatch_size, n)

    kl = 0.0
    epochs = 0
    for _ in range(config.generator_steps):
        order = rng.permutation(n) if rng is not None else np.arange(n)
        for start in range(0, n, minibatch):
            idx = order[start : start + minibatch]
            _surrogate_step(
                policy,
                obs[idx],
                actions[idx],
                advantages[idx],
                old_log_probs[idx],
                config,
                policy_optimizer,
            )
        epochs += 1
        kl = float(np.mean(old_log_probs - policy.log_prob(obs, actions)))
        if kl > config.target_kl:
            break

    value_loss = value_fn.fit(
        obs,
        batch.value_targets,
        config.value_fn_steps,
        value_optimizer,
        rng,
        None if rng is None else config.minibatch_size,
    )
    return PolicyUpdateStats(kl, value_loss, epochs)


def _surrogate_step(
    policy: GaussianPolicy,
    obs: np.ndarray,
    actions: np.ndarray,
    advantages: np.ndarray,
    old_log_probs: np.ndarray,
    config: IrlConfig,
    optimizer: OptimizerState,
) -> None:
    m = obs.shape[0]
    net = policy.mean_net
    means = net.forward(obs, record=True)
    log_probs = policy.log_prob_given_mean(means, actions)
    ratio = np.exp(log_probs - old_log_probs)
    if not np.all(np.isfinite(ratio)):
        raise TrainingDivergedError("importance ratio is not finite")

    eps = config.clip_ratio
    active = np.where(advantages >= 0.0, ratio <= 1.0 + eps, ratio >= 1.0 - eps)
    coef = -advantages * ratio * active / m

    var = policy.std**2
    diff = actions - means
    grad_mean = coef[:, np.newaxis] * diff / var
    grad_log_std = np.sum(
        coef[:, np.newaxis] * (diff * diff / var - 1.0), axis=0
    ) - config.policy_entropy_coeff

    grads = net.backward(obs, grad_mean)
    grads.append(grad_log_std)
    optimizer_step(policy.parameters(), grads, optimizer)
    policy.enforce_log_std_floor()
