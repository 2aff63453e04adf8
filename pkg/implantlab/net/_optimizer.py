# -*- coding: utf-8 -*-

"""Implementation of the first-order optimizer."""

from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np

from implantlab.core import RejectedInputError, TrainingDivergedError, ZeroShotGuard


class OptimizerKind(Enum):
    """The update rule applied by :func:`optimizer_step`."""

    ADAM = "adam"
    """Adaptive moments with bias correction."""

    SGD = "sgd"
    """Plain gradient descent."""


class OptimizerState:
    """Learning rate, moment accumulators and step counter for one parameter set."""

    def __init__(
        self,
        params: Sequence[np.ndarray],
        learning_rate: float,
        kind: OptimizerKind = OptimizerKind.ADAM,
        betas: Tuple[float, float] = (0.9, 0.999),
        epsilon: float = 1e-8,
    ) -> None:
        """Initialize the state for ``params``.

        Args:
            params: The arrays that will be updated.
            learning_rate: Step size.
            kind: Update rule.
            betas: Decay rates of the first and second moments.
            epsilon: Denominator offset.

        Raises:
            ValueError: if the learning rate is not positive.
        """
        if learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        self.learning_rate = float(learning_rate)
        self.kind = kind
        self.betas = betas
        self.epsilon = epsilon
        self.first_moments = [np.zeros_like(p) for p in params]
        self.second_moments = [np.zeros_like(p) for p in params]
        self.step_count = 0


def optimizer_step(
    params: List[np.ndarray], grads: Sequence[np.ndarray], state: OptimizerState
) -> Tuple[List[np.ndarray], OptimizerState]:
    """Move ``params`` against ``grads`` in place.

    Parameters are laid out as ``[W0, b0, W1, b1, ...]``, so array ``k`` belongs to
    layer ``k // 2``.

    Args:
        params: Live parameter arrays.
        grads: Gradients with matching shapes.
        state: Optimizer state for ``params``; updated in place.

    Returns:
        The same parameter list and state.

    Raises:
        RejectedInputError: if shapes disagree.
        TrainingDivergedError: if a gradient component is not finite.
        ZeroShotViolationError: if called during an evaluation phase.
    """
    ZeroShotGuard.check_update_allowed()
    if len(params) != len(grads) or len(params) != len(state.first_moments):
        raise RejectedInputError("parameter, gradient and state counts differ")
    for k, (p, g, m) in enumerate(zip(params, grads, state.first_moments)):
        if p.shape != g.shape or p.shape != m.shape:
            raise RejectedInputError(f"shape mismatch for parameter array {k}")
        if not np.all(np.isfinite(g)):
            raise TrainingDivergedError.at_layer(k // 2)

    state.step_count += 1
    lr = state.learning_rate
    if state.kind is OptimizerKind.SGD:
        for p, g in zip(params, grads):
            p -= lr * g
        return params, state

    beta1, beta2 = state.betas
    correction1 = 1.0 - beta1**state.step_count
    correction2 = 1.0 - beta2**state.step_count
    for p, g, m, v in zip(params, grads, state.first_moments, state.second_moments):
        m *= beta1
        m += (1.0 - beta1) * g
        v *= beta2
        v += (1.0 - beta2) * g * g
        p -= lr * (m / correction1) / (np.sqrt(v / correction2) + state.epsilon)
    return params, state
