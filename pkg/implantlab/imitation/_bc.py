# -*- coding: utf-8 -*-

"""Implementation of behavioral cloning."""

import logging
from typing import Any, List, Optional

import events
import numpy as np

from implantlab.core import ConfigurationError, TrainingDivergedError
from implantlab.envs import DemoSet
from implantlab.net import OptimizerState, optimizer_step

from ._gaussian_policy import GaussianPolicy
from .models import BcConfig

_logger = logging.getLogger(__name__)


class BcTrainer(events.Events):
    """Regresses a policy mean onto demonstrated actions.

    Attributes:
        epoch_completed: An event triggered after every epoch with the epoch index and
            its mean minibatch loss.

            Example::

                trainer.epoch_completed += lambda epoch, loss: print(epoch, loss)
    """

    __events__ = ["epoch_completed"]
    # Declared for mypy, then deleted so Events.__getattr__ can create the slot.
    epoch_completed = None  # type: events._EventSlot
    del epoch_completed

    def __init__(
        self,
        config: BcConfig,
        action_low: Optional[np.ndarray] = None,
        action_high: Optional[np.ndarray] = None,
    ) -> None:
        """Initialize a trainer.

        Args:
            config: BC hyperparameters.
            action_low: Action bounds of the returned policy; unbounded by default.
            action_high: Action bounds of the returned policy; unbounded by default.
        """
        super().__init__()
        self._config = config
        self._action_low = action_low
        self._action_high = action_high
        self.losses: List[float] = []

    # Work around https://github.com/pyeve/events/issues/17
    def __getattr__(self, name: str) -> Any:
        if name in self.__events__:
            return super().__getattr__(name)
        else:
            return object.__getattribute__(self, name)

    def train(self, demos: DemoSet, rng: np.random.Generator) -> GaussianPolicy:
        """Fit a policy to ``demos``.

        The loss is the mean over rows of ``|a - mean(s)|^2``; the log-std stays fixed.

        Args:
            demos: Expert pairs.
            rng: Generator for initialization, shuffling and dropout masks.

        Returns:
            The trained policy.

        Raises:
            ConfigurationError: if ``demos`` is empty.
            TrainingDivergedError: if the loss becomes non-finite.
        """
        if demos.pairs == 0:
            raise ConfigurationError("behavioral cloning needs at least one demo pair")
        config = self._config
        act_dim = demos.act_dim
        low = (
            np.full(act_dim, -np.inf) if self._action_low is None else self._action_low
        )
        high = (
            np.full(act_dim, np.inf) if self._action_high is None else self._action_high
        )
        policy = GaussianPolicy.create(
            demos.obs_dim,
            low,
            high,
            rng,
            hidden_dims=config.hidden_dims,
            init_log_std=config.log_std,
            min_log_std=config.log_std,
            dropout_rate=config.dropout_rate,
            output_scale=1.0,
        )
        net = policy.mean_net
        optimizer = OptimizerState(
            net.parameters(), config.learning_rate, config.optimizer
        )
        n = demos.pairs
        batch_size = n if config.batch_size is None else min(config.batch_size, n)
        self.losses = []
        for epoch in range(config.epochs):
            order = rng.permutation(n) if batch_size < n else np.arange(n)
            batch_losses = []
            for start in range(0, n, batch_size):
                idx = order[start : start + batch_size]
                x, target = demos.observations[idx], demos.actions[idx]
                error = net.forward(x, train_mode=True, rng=rng, record=True) - target
                loss = float(np.mean(np.sum(error * error, axis=1)))
                if not np.isfinite(loss):
                    raise TrainingDivergedError(
                        "behavioral cloning loss is not finite"
                    ).with_iteration(epoch)
                grads = net.backward(x, 2.0 * error / len(idx))
                optimizer_step(net.parameters(), grads, optimizer)
                batch_losses.append(loss)
            epoch_loss = float(np.mean(batch_losses))
            self.losses.append(epoch_loss)
            self.epoch_completed(epoch, epoch_loss)
            if epoch % 100 == 0 or epoch == config.epochs - 1:
                _logger.debug("bc epoch %d loss %.6g", epoch, epoch_loss)
        net.clear_cache()
        _logger.info(
            "behavioral cloning finished after %d epochs, loss %.6g",
            config.epochs,
            self.losses[-1],
        )
        return policy

    # Fake method to tell mypy the type of our events
    def __type_hinting__(self) -> None:
        self.epoch_completed = type(self).epoch_completed  # type: events._EventSlot


def bc_train(
    demos: DemoSet,
    config: BcConfig,
    rng: np.random.Generator,
    action_low: Optional[np.ndarray] = None,
    action_high: Optional[np.ndarray] = None,
) -> GaussianPolicy:
    """Train a policy by behavioral cloning.

    ``config.dropout_rate`` of 0.2 gives the BC-Dropout baseline.

    Raises:
        ConfigurationError: if ``demos`` is empty.
        TrainingDivergedError: if the loss becomes non-finite.
    """
    return BcTrainer(config, action_low, action_high).train(demos, rng)
