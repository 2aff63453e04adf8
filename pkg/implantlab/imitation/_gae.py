# -*- coding: utf-8 -*-

"""Generalized advantage estimation."""

from typing import Tuple

import numpy as np

from implantlab.core import RejectedInputError

_EPS = 1e-8


def normalize_advantages(advantages: np.ndarray) -> np.ndarray:
    """Shift to zero mean and scale to unit std; a single entry becomes 0."""
    advantages = np.asarray(advantages, dtype=np.float64)
    if advantages.size == 0:
        return advantages.copy()
    centered = advantages - advantages.mean()
    return centered / (centered.std() + _EPS)


def gae_advantages(
    rewards: np.ndarray,
    values: np.ndarray,
    gamma: float,
    lam: float,
    normalize: bool = True,
) -> Tuple[np.ndarray, np.ndarray]:
    """Compute GAE advantages and value targets for one segment.

    ``values`` carries one more entry than ``rewards``: the last one is the bootstrap
    value of the state reached after the segment, 0 on true termination.

    Args:
        rewards: ``r_0 .. r_{T-1}``.
        values: ``V(s_0) .. V(s_T)``.
        gamma: Discount.
        lam: GAE parameter.
        normalize: Normalize the returned advantages.

    Returns:
        The advantages, and the targets ``V(s_t) + A_t`` built from the unnormalized
        advantages.

    Raises:
        RejectedInputError: if ``len(values) != len(rewards) + 1``.
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if rewards.ndim != 1 or values.shape != (rewards.shape[0] + 1,):
        raise RejectedInputError(
            f"expected {rewards.shape[0] + 1} values for {rewards.shape[0]} rewards"
        )
    deltas = rewards + gamma * values[1:] - values[:-1]
    advantages = np.zeros_like(rewards)
    running = 0.0
    for t in range(rewards.shape[0] - 1, -1, -1):
        running = deltas[t] + gamma * lam * running
        advantages[t] = running
    targets = values[:-1] + advantages
    if normalize:
        advantages = normalize_advantages(advantages)
    return advantages, targets
