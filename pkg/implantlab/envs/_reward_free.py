# -*- coding: utf-8 -*-

"""Implementation of RewardFreeEnv."""

import numpy as np

from ._mdp import EnvState, EnvWrapper, StepResult


class RewardFreeEnv(EnvWrapper):
    """An environment handle whose step results hide the ground-truth reward.

    Imitation learners only ever step through this handle; reading
    :attr:`StepResult.reward` raises :class:`~implantlab.core.RewardChannelError`.
    """

    kind = "reward_free"

    def step(self, state: EnvState, action: np.ndarray) -> StepResult:
        """Step the inner environment and drop its reward."""
        return self.inner.step(state, action).without_reward()
