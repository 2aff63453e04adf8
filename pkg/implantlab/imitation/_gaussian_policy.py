# -*- coding: utf-8 -*-

"""Implementation of GaussianPolicy."""

import math
import pathlib
from typing import List, Optional, Sequence, Union

import numpy as np

from implantlab.net import (
    Checkpoint,
    CheckpointHead,
    DEFAULT_HIDDEN_DIMS,
    load_checkpoint,
    Mlp,
    save_checkpoint,
)
from implantlab.core import ConfigurationError

_LOG_2PI = math.log(2.0 * math.pi)


class GaussianPolicy:
    """A diagonal Gaussian policy with a state-independent learnable log-std.

    Samples are ``mean(s) + exp(log_std) * z`` with ``z`` standard normal, then clipped
    to the action bounds. Log-densities are taken of the pre-clip sample.
    """

    def __init__(
        self,
        mean_net: Mlp,
        log_std: np.ndarray,
        action_low: np.ndarray,
        action_high: np.ndarray,
        min_log_std: float = math.log(0.05),
    ) -> None:
        """Initialize a policy.

        Raises:
            ValueError: if the log-std or bounds do not match the network output.
        """
        log_std = np.array(log_std, dtype=np.float64)
        if log_std.shape != (mean_net.output_dim,):
            raise ValueError("log_std needs one entry per action dimension")
        self.mean_net = mean_net
        self.log_std = log_std
        self.action_low = np.broadcast_to(
            np.asarray(action_low, dtype=np.float64), log_std.shape
        ).copy()
        self.action_high = np.broadcast_to(
            np.asarray(action_high, dtype=np.float64), log_std.shape
        ).copy()
        self.min_log_std = float(min_log_std)

    @classmethod
    def create(
        cls,
        obs_dim: int,
        action_low: np.ndarray,
        action_high: np.ndarray,
        rng: np.random.Generator,
        hidden_dims: Sequence[int] = DEFAULT_HIDDEN_DIMS,
        init_log_std: float = math.log(0.5),
        min_log_std: float = math.log(0.05),
        dropout_rate: float = 0.0,
        output_scale: float = 0.01,
    ) -> "GaussianPolicy":
        """Create a freshly initialized policy.

        The mean network's last layer is scaled by ``output_scale`` so the initial
        mean is close to zero everywhere.
        """
        action_low = np.asarray(action_low, dtype=np.float64)
        action_dim = int(action_low.shape[0])
        net = Mlp.initialized(
            [obs_dim, *hidden_dims, action_dim],
            rng,
            dropout_rate=dropout_rate,
            output_scale=output_scale,
        )
        return cls(
            net,
            np.full(action_dim, init_log_std),
            action_low,
            action_high,
            min_log_std,
        )

    @property
    def obs_dim(self) -> int:  # noqa: D401
        """Observation width."""
        return self.mean_net.input_dim

    @property
    def action_dim(self) -> int:  # noqa: D401
        """Action width."""
        return self.mean_net.output_dim

    @property
    def std(self) -> np.ndarray:  # noqa: D401
        """Per-dimension standard deviation."""
        return np.exp(self.log_std)

    def parameters(self) -> List[np.ndarray]:
        """Mean-network parameters followed by the log-std vector."""
        return self.mean_net.parameters() + [self.log_std]

    def mean(self, observations: np.ndarray) -> np.ndarray:
        """Deterministic mean; accepts one observation or a batch."""
        return self.mean_net.forward(observations)

    def mean_action(self, observation: np.ndarray) -> np.ndarray:
        """Mean action clipped to the bounds."""
        return self.clip(self.mean(observation))

    def sample_raw(
        self, observation: np.ndarray, rng: np.random.Generator
    ) -> np.ndarray:
        """Pre-clip sample for one observation."""
        return self.mean(observation) + self.std * rng.standard_normal(self.action_dim)

    def sample(self, observation: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """Clipped sample for one observation."""
        return self.clip(self.sample_raw(observation, rng))

    def clip(self, actions: np.ndarray) -> np.ndarray:
        """Clip actions to the bounds."""
        return np.clip(actions, self.action_low, self.action_high)

    def log_prob(self, observations: np.ndarray, actions: np.ndarray) -> np.ndarray:
        """Log-density of pre-clip actions; one value per row (or a scalar)."""
        return self.log_prob_given_mean(self.mean(observations), actions)

    def log_prob_given_mean(self, means: np.ndarray, actions: np.ndarray) -> np.ndarray:
        """Log-density of ``actions`` under means already computed."""
        z = (np.asarray(actions, dtype=np.float64) - means) / self.std
        return -0.5 * np.sum(z * z, axis=-1) - np.sum(self.log_std) - (
            0.5 * self.action_dim * _LOG_2PI
        )

    def entropy(self) -> float:
        """Differential entropy of the Gaussian."""
        return float(np.sum(self.log_std) + 0.5 * self.action_dim * (1.0 + _LOG_2PI))

    def enforce_log_std_floor(self) -> None:
        """Raise every log-std entry to at least the floor, in place."""
        np.maximum(self.log_std, self.min_log_std, out=self.log_std)

    def copy(self) -> "GaussianPolicy":
        """Return an independent copy."""
        return GaussianPolicy(
            self.mean_net.copy(),
            self.log_std.copy(),
            self.action_low,
            self.action_high,
            self.min_log_std,
        )

    def to_checkpoint(self) -> Checkpoint:
        """Policy-head checkpoint."""
        return Checkpoint(self.mean_net, CheckpointHead.POLICY, log_std=self.log_std)

    def save(self, path: Union[str, pathlib.Path]) -> None:
        """Write a policy checkpoint."""
        save_checkpoint(path, self.to_checkpoint())

    @classmethod
    def load(
        cls,
        path: Union[str, pathlib.Path],
        action_low: np.ndarray,
        action_high: np.ndarray,
        min_log_std: Optional[float] = None,
    ) -> "GaussianPolicy":
        """Read a policy checkpoint.

        Raises:
            MissingArtifactError: if the file does not exist.
            ConfigurationError: if the file is not a policy checkpoint.
        """
        checkpoint = load_checkpoint(path)
        if checkpoint.head is not CheckpointHead.POLICY or checkpoint.log_std is None:
            raise ConfigurationError(f"{path} is not a policy checkpoint")
        return cls(
            checkpoint.net,
            checkpoint.log_std,
            action_low,
            action_high,
            math.log(0.05) if min_log_std is None else min_log_std,
        )
