# -*- coding: utf-8 -*-

"""Implementation of ValueFn."""

import pathlib
from typing import Optional, Sequence, Union

import numpy as np

from implantlab.core import ConfigurationError, TrainingDivergedError
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


class ValueFn:
    """State-value estimate on the inferred-reward scale."""

    def __init__(self, net: Mlp) -> None:
        """Initialize a value function.

        Raises:
            ValueError: if the network does not have a single output.
        """
        if net.output_dim != 1:
            raise ValueError("a value network has exactly one output")
        self.net = net

    @classmethod
    def create(
        cls,
        obs_dim: int,
        rng: np.random.Generator,
        hidden_dims: Sequence[int] = DEFAULT_HIDDEN_DIMS,
    ) -> "ValueFn":
        """Create a freshly initialized value function."""
        return cls(Mlp.initialized([obs_dim, *hidden_dims, 1], rng))

    @property
    def obs_dim(self) -> int:  # noqa: D401
        """Observation width."""
        return self.net.input_dim

    def value(self, observations: np.ndarray) -> Union[float, np.ndarray]:
        """``V(s)``: a float for one observation, one value per row for a batch."""
        out = self.net.forward(observations)
        if np.ndim(observations) == 1:
            return float(out[0])
        return out[:, 0]

    def fit(
        self,
        observations: np.ndarray,
        targets: np.ndarray,
        epochs: int,
        optimizer: OptimizerState,
        rng: Optional[np.random.Generator] = None,
        minibatch_size: Optional[int] = None,
    ) -> float:
        """Regress onto ``targets`` by mean squared error.

        Args:
            observations: Rows of observations.
            targets: One target per row.
            epochs: Passes over the data.
            optimizer: Optimizer state of :attr:`net`.
            rng: Shuffling generator; required with minibatches.
            minibatch_size: Rows per gradient step, or None for full-batch steps.

        Returns:
            The mean squared error after fitting.

        Raises:
            TrainingDivergedError: if the loss becomes non-finite.
        """
        observations = np.atleast_2d(observations)
        targets = np.asarray(targets, dtype=np.float64)
        n = observations.shape[0]
        if minibatch_size is not None and rng is None:
            raise ValueError("a generator is required for minibatch updates")
        for _ in range(epochs):
            if minibatch_size is None:
                batches = [np.arange(n)]
            else:
                assert rng is not None
                order = rng.permutation(n)
                batches = [
                    order[i : i + minibatch_size] for i in range(0, n, minibatch_size)
                ]
            for idx in batches:
                x = observations[idx]
                error = self.net.forward(x, record=True)[:, 0] - targets[idx]
                grads = self.net.backward(x, (2.0 * error / len(idx))[:, np.newaxis])
                optimizer_step(self.net.parameters(), grads, optimizer)
        loss = float(np.mean((self.net.forward(observations)[:, 0] - targets) ** 2))
        if not np.isfinite(loss):
            raise TrainingDivergedError("value loss is not finite")
        return loss

    def copy(self) -> "ValueFn":
        """Return an independent copy."""
        return ValueFn(self.net.copy())

    def save(self, path: Union[str, pathlib.Path]) -> None:
        """Write a plain checkpoint."""
        save_checkpoint(path, Checkpoint(self.net, CheckpointHead.PLAIN))

    @classmethod
    def load(cls, path: Union[str, pathlib.Path]) -> "ValueFn":
        """Read a value checkpoint.

        Raises:
            MissingArtifactError: if the file does not exist.
            ConfigurationError: if the file is not a plain single-output checkpoint.
        """
        checkpoint = load_checkpoint(path)
        if (
            checkpoint.head is not CheckpointHead.PLAIN
            or checkpoint.net.output_dim != 1
        ):
            raise ConfigurationError(f"{path} is not a value checkpoint")
        return cls(checkpoint.net)
