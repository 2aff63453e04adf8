# -*- coding: utf-8 -*-

"""Discriminator, its inferred reward and its update step."""

import pathlib
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from implantlab.core import (
    ConfigurationError,
    RejectedInputError,
    TrainingDivergedError,
)
from implantlab.net import (
    Checkpoint,
    CheckpointHead,
    DEFAULT_HIDDEN_DIMS,
    load_checkpoint,
    Mlp,
    optimizer_step,
    OptimizerState,
    save_checkpoint,
)

D_MIN = 1e-7
D_MAX = 1.0 - 1e-7
_NORMALIZED_CLIP = 10.0
_STD_FLOOR = 1e-2


class RunningNormalizer:
    """Per-dimension running mean and std, frozen after a warm-up."""

    def __init__(self, dim: int) -> None:
        self.count = 0
        self.mean = np.zeros(dim)
        self._m2 = np.zeros(dim)
        self.frozen = False

    @classmethod
    def from_stats(cls, mean: np.ndarray, std: np.ndarray) -> "RunningNormalizer":
        """A frozen normalizer with fixed statistics."""
        normalizer = cls(int(mean.shape[0]))
        normalizer.count = 1
        normalizer.mean = np.array(mean, dtype=np.float64)
        normalizer._m2 = np.array(std, dtype=np.float64) ** 2
        normalizer.frozen = True
        return normalizer

    @property
    def std(self) -> np.ndarray:  # noqa: D401
        """Per-dimension std, floored; ones before any data was seen."""
        if self.count == 0:
            return np.ones_like(self.mean)
        return np.maximum(np.sqrt(self._m2 / self.count), _STD_FLOOR)

    def update(self, batch: np.ndarray) -> None:
        """Fold a batch into the statistics unless frozen."""
        if self.frozen or batch.shape[0] == 0:
            return
        n = batch.shape[0]
        batch_mean = batch.mean(axis=0)
        batch_m2 = ((batch - batch_mean) ** 2).sum(axis=0)
        total = self.count + n
        delta = batch_mean - self.mean
        self.mean = self.mean + delta * n / total
        self._m2 = self._m2 + batch_m2 + delta**2 * self.count * n / total
        self.count = total

    def freeze(self) -> None:
        """Stop updating."""
        self.frozen = True

    def normalize(self, x: np.ndarray) -> np.ndarray:
        """Standardize and clip."""
        return np.clip((x - self.mean) / self.std, -_NORMALIZED_CLIP, _NORMALIZED_CLIP)


class Discriminator:
    """Scores ``(s, a)`` pairs; outputs near 1 look expert-like."""

    def __init__(
        self, net: Mlp, normalizer: Optional[RunningNormalizer] = None
    ) -> None:
        """Initialize a discriminator.

        Raises:
            ValueError: if the network does not have a single output.
        """
        if net.output_dim != 1:
            raise ValueError("a discriminator network has exactly one output")
        self.net = net
        self.normalizer = normalizer or RunningNormalizer(net.input_dim)

    @classmethod
    def create(
        cls,
        obs_dim: int,
        action_dim: int,
        rng: np.random.Generator,
        hidden_dims: Sequence[int] = DEFAULT_HIDDEN_DIMS,
    ) -> "Discriminator":
        """Create a discriminator whose initial output is close to 0.5 everywhere."""
        net = Mlp.initialized(
            [obs_dim + action_dim, *hidden_dims, 1], rng, output_scale=0.1
        )
        return cls(net)

    def inputs(self, observations: np.ndarray, actions: np.ndarray) -> np.ndarray:
        """Normalized ``[s, a]`` rows."""
        obs = np.atleast_2d(np.asarray(observations, dtype=np.float64))
        act = np.atleast_2d(np.asarray(actions, dtype=np.float64))
        if obs.shape[0] != act.shape[0]:
            raise RejectedInputError("observations and actions need the same row count")
        return self.normalizer.normalize(np.hstack([obs, act]))

    def logits(self, observations: np.ndarray, actions: np.ndarray) -> np.ndarray:
        """Raw scores, one per row."""
        return self.net.forward(self.inputs(observations, actions))[:, 0]

    def probability(self, observations: np.ndarray, actions: np.ndarray) -> np.ndarray:
        """``D(s, a)`` clamped to ``[1e-7, 1 - 1e-7]``, one per row."""
        return np.clip(_sigmoid(self.logits(observations, actions)), D_MIN, D_MAX)

    def copy(self) -> "Discriminator":
        """Return an independent copy."""
        normalizer = RunningNormalizer(self.net.input_dim)
        normalizer.count = self.normalizer.count
        normalizer.mean = self.normalizer.mean.copy()
        normalizer._m2 = self.normalizer._m2.copy()
        normalizer.frozen = self.normalizer.frozen
        return Discriminator(self.net.copy(), normalizer)

    def to_checkpoint(self) -> Checkpoint:
        """Discriminator-head checkpoint."""
        return Checkpoint(
            self.net,
            CheckpointHead.DISCRIMINATOR,
            input_mean=self.normalizer.mean,
            input_std=self.normalizer.std,
        )

    def save(self, path: Union[str, pathlib.Path]) -> None:
        """Write a discriminator checkpoint."""
        save_checkpoint(path, self.to_checkpoint())

    @classmethod
    def load(cls, path: Union[str, pathlib.Path]) -> "Discriminator":
        """Read a discriminator checkpoint.

        Raises:
            MissingArtifactError: if the file does not exist.
            ConfigurationError: if the file is not a discriminator checkpoint.
        """
        checkpoint = load_checkpoint(path)
        if (
            checkpoint.head is not CheckpointHead.DISCRIMINATOR
            or checkpoint.input_mean is None
            or checkpoint.input_std is None
        ):
            raise ConfigurationError(f"{path} is not a discriminator checkpoint")
        return cls(
            checkpoint.net,
            RunningNormalizer.from_stats(checkpoint.input_mean, checkpoint.input_std),
        )


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def reward_from_probability(d: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """The inferred reward ``-log(1 - D)`` of a discriminator output."""
    clamped = np.clip(d, D_MIN, D_MAX)
    value = -np.log1p(-clamped)
    return float(value) if np.ndim(value) == 0 else value


def reward(
    discriminator: Discriminator, observations: np.ndarray, actions: np.ndarray
) -> Union[float, np.ndarray]:
    """Inferred reward ``r(s, a) = -log(1 - D(s, a))``.

    A single ``(s, a)`` pair gives a float; a batch gives one reward per row.
    """
    single = np.ndim(observations) == 1
    values = reward_from_probability(discriminator.probability(observations, actions))
    return float(values[0]) if single else values


class DiscriminatorUpdate(NamedTuple):
    """Result of :func:`discriminator_update`."""

    loss: float
    """Cross-entropy of the final step, evaluated before that step's update."""

    entropy: float
    """Mean binary entropy of the outputs at the final step."""

    accuracy: float
    """Fraction of rows classified correctly at the final step."""


def _binary_entropy(d: np.ndarray) -> np.ndarray:
    return -(d * np.log(d) + (1.0 - d) * np.log1p(-d))


def discriminator_update(
    discriminator: Discriminator,
    expert_obs: np.ndarray,
    expert_actions: np.ndarray,
    agent_obs: np.ndarray,
    agent_actions: np.ndarray,
    entropy_coeff: float,
    steps: int,
    optimizer: OptimizerState,
    rng: Optional[np.random.Generator] = None,
    minibatch_size: Optional[int] = None,
) -> DiscriminatorUpdate:
    """Minimize the cross-entropy minus an entropy bonus.

    The loss is ``-mean log D(expert) - mean log(1 - D(agent)) - c * H`` where ``H`` is
    the mean binary entropy of ``D`` over both batches. Each step is one pass over the
    agent batch; with ``minibatch_size`` set, every agent minibatch is paired with an
    equally sized expert minibatch drawn with replacement, otherwise both full
    batches are used.

    Args:
        discriminator: Updated in place.
        expert_obs: Expert observations.
        expert_actions: Expert actions.
        agent_obs: Agent observations.
        agent_actions: Agent actions.
        entropy_coeff: Weight ``c`` of the entropy bonus.
        steps: Number of passes.
        optimizer: Optimizer state of ``discriminator.net``.
        rng: Generator for shuffling and expert draws; required with minibatches.
        minibatch_size: Agent rows per gradient step.

    Returns:
        Loss, entropy and accuracy of the final gradient step.

    Raises:
        ValueError: if a batch is empty or ``steps`` is below 1.
        TrainingDivergedError: if the loss is not finite.
    """
    n_expert, n_agent = len(expert_obs), len(agent_obs)
    if n_expert == 0 or n_agent == 0:
        raise ValueError("expert and agent batches must be non-empty")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if minibatch_size is not None and rng is None:
        raise ValueError("a generator is required for minibatch updates")

    result = DiscriminatorUpdate(float("nan"), float("nan"), float("nan"))
    for _ in range(steps):
        if minibatch_size is None:
            batches = [(np.arange(n_expert), np.arange(n_agent))]
        else:
            assert rng is not None
            order = rng.permutation(n_agent)
            batches = []
            for start in range(0, n_agent, minibatch_size):
                agent_idx = order[start : start + minibatch_size]
                expert_idx = rng.integers(0, n_expert, size=len(agent_idx))
                batches.append((expert_idx, agent_idx))
        for expert_idx, agent_idx in batches:
            result = _gradient_step(
                discriminator,
                expert_obs[expert_idx],
                expert_actions[expert_idx],
                agent_obs[agent_idx],
                agent_actions[agent_idx],
                entropy_coeff,
                optimizer,
            )
    return result


def _gradient_step(
    discriminator: Discriminator,
    expert_obs: np.ndarray,
    expert_actions: np.ndarray,
    agent_obs: np.ndarray,
    agent_actions: np.ndarray,
    entropy_coeff: float,
    optimizer: OptimizerState,
) -> DiscriminatorUpdate:
    n_expert, n_agent = len(expert_obs), len(agent_obs)
    x = np.vstack(
        [
            discriminator.inputs(expert_obs, expert_actions),
            discriminator.inputs(agent_obs, agent_actions),
        ]
    )
    z = discriminator.net.forward(x, record=True)[:, 0]
    d = _sigmoid(z)
    d_clamped = np.clip(d, D_MIN, D_MAX)
    is_expert = np.arange(n_expert + n_agent) < n_expert

    loss = -np.mean(np.log(d_clamped[is_expert])) - np.mean(
        np.log1p(-d_clamped[~is_expert])
    )
    entropy = float(np.mean(_binary_entropy(d_clamped)))
    if not np.isfinite(loss):
        raise TrainingDivergedError("discriminator loss is not finite")
    accuracy = float(
        np.mean(np.where(is_expert, d_clamped > 0.5, d_clamped < 0.5))
    )

    grad_z = np.where(is_expert, (d - 1.0) / n_expert, d / n_agent)
    grad_z = grad_z + entropy_coeff * z * d * (1.0 - d) / (n_expert + n_agent)
    grads = discriminator.net.backward(x, grad_z[:, np.newaxis])
    optimizer_step(discriminator.net.parameters(), grads, optimizer)
    return DiscriminatorUpdate(float(loss), entropy, accuracy)
