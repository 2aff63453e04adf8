# -*- coding: utf-8 -*-

"""Implementation of LinearQuadratic."""

from typing import Optional, Tuple

import numpy as np
from scipy import linalg

from ._mdp import BaseEnv, EnvState


def riccati_gain(
    a: np.ndarray, b: np.ndarray, q: np.ndarray, r: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Solve the discrete algebraic Riccati equation.

    Args:
        a: State matrix.
        b: Input matrix.
        q: State cost.
        r: Input cost.

    Returns:
        The feedback gain ``K`` (control is ``-K s``) and the cost-to-go matrix ``P``.

    Raises:
        ValueError: if the pair ``(A, B)`` admits no stabilizing solution.
    """
    try:
        p = linalg.solve_discrete_are(a, b, q, r)
    except (linalg.LinAlgError, ValueError) as e:
        raise ValueError(f"no stabilizing Riccati solution: {e}") from e
    p = 0.5 * (p + p.T)
    k = np.linalg.solve(r + b.T @ p @ b, b.T @ p @ a)
    return k, p


class LinearQuadratic(BaseEnv):
    """Linear dynamics ``s' = A s + B a`` with quadratic cost.

    ``A`` is a fixed random matrix rescaled to spectral radius ``spectral_radius`` and
    ``B`` a fixed random ``4x2`` matrix, both drawn from ``matrix_seed``. Reward is
    ``-(s'Qs + a'Ra)`` with ``Q = I`` and ``R = 0.1 I``. p0 is uniform on ``[-1, 1]^4``.
    The expert is the infinite-horizon LQR controller ``-K s``.
    """

    def __init__(
        self,
        matrix_seed: int = 7,
        spectral_radius: float = 0.95,
        action_bound: float = 2.0,
        max_episode_steps: int = 100,
        gamma: float = 0.99,
        a: Optional[np.ndarray] = None,
        b: Optional[np.ndarray] = None,
    ) -> None:
        super().__init__(
            action_low=-action_bound * np.ones(2),
            action_high=action_bound * np.ones(2),
            gamma=gamma,
            max_episode_steps=max_episode_steps,
        )
        rng = np.random.default_rng(matrix_seed)
        if a is None:
            m = rng.normal(size=(4, 4))
            a = spectral_radius * m / np.max(np.abs(np.linalg.eigvals(m)))
        if b is None:
            b = 0.5 * rng.normal(size=(4, 2))
        self.a = np.asarray(a, dtype=np.float64)
        self.b = np.asarray(b, dtype=np.float64)
        self.q = np.eye(4)
        self.r = 0.1 * np.eye(2)
        self.gain, self.cost_to_go = riccati_gain(self.a, self.b, self.q, self.r)

    @property
    def name(self) -> str:  # noqa: D401
        """Registry name."""
        return "LinearQuadratic"

    @property
    def obs_dim(self) -> int:  # noqa: D401
        """The full linear state."""
        return 4

    @property
    def expert_threshold(self) -> float:  # noqa: D401
        """Minimum mean per-step reward of the expert."""
        return -1.0

    def _sample_physical(self, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(-1.0, 1.0, size=4)

    def _dynamics(
        self, physical: np.ndarray, action: np.ndarray
    ) -> Tuple[np.ndarray, float]:
        reward = -float(physical @ self.q @ physical + action @ self.r @ action)
        return self.a @ physical + self.b @ action, reward

    def speed(self, state: EnvState) -> float:
        """Norm of the last two state components."""
        return float(np.linalg.norm(state.physical[2:4]))

    def expert_action(self, observation: np.ndarray) -> np.ndarray:
        """LQR feedback, clipped to the bounds."""
        return self.clip_action(-self.gain @ np.asarray(observation, dtype=np.float64))
