# -*- coding: utf-8 -*-

"""Implementation of PointMass2D."""

from typing import Sequence, Tuple

import numpy as np

from ._mdp import BaseEnv, EnvState


class PointMass2D(BaseEnv):
    """A unit mass pushed around the plane towards a goal.

    State ``(px, py, vx, vy)``; action is a force in ``[-1, 1]^2``. The update is
    semi-implicit Euler::

        v' = v + dt * (a - drag * v)
        p' = p + dt * v'

    Reward of ``(s, a)`` is ``-|p - goal|^2 - 0.01 |a|^2``. p0 places the mass at
    ``start`` plus a uniform offset of half-width ``init_spread`` per position
    coordinate, moving with a uniform velocity of half-width ``init_velocity_spread``
    per coordinate. With both widths zero every episode starts at rest on ``start``.

    The expert is a saturated PD controller ``clip(kp * (goal - p) - kd * v)``. Over a
    200-step episode from the default p0 its mean per-step reward is a few units
    below zero, and most of that is paid while crossing the plane; uniformly random
    forces drift away and pay an order of magnitude more.
    """

    def __init__(
        self,
        dt: float = 0.05,
        drag: float = 0.1,
        goal: Sequence[float] = (1.0, 1.0),
        start: Sequence[float] = (-1.0, -1.0),
        init_spread: float = 1.5,
        init_velocity_spread: float = 1.0,
        max_episode_steps: int = 200,
        gamma: float = 0.99,
        kp: float = 4.0,
        kd: float = 2.0,
    ) -> None:
        super().__init__(
            action_low=-np.ones(2),
            action_high=np.ones(2),
            gamma=gamma,
            max_episode_steps=max_episode_steps,
        )
        if dt <= 0:
            raise ValueError("dt must be positive")
        if init_spread < 0 or init_velocity_spread < 0:
            raise ValueError("p0 widths cannot be negative")
        self.dt = float(dt)
        self.drag = float(drag)
        self.goal = np.asarray(goal, dtype=np.float64)
        self.start = np.asarray(start, dtype=np.float64)
        self.init_spread = float(init_spread)
        self.init_velocity_spread = float(init_velocity_spread)
        self.kp = float(kp)
        self.kd = float(kd)

    @property
    def name(self) -> str:  # noqa: D401
        """Registry name."""
        return "PointMass2D"

    @property
    def obs_dim(self) -> int:  # noqa: D401
        """Position and velocity."""
        return 4

    @property
    def expert_threshold(self) -> float:  # noqa: D401
        """Minimum mean per-step reward of the expert."""
        return -10.0

    def _sample_physical(self, rng: np.random.Generator) -> np.ndarray:
        offset = rng.uniform(-self.init_spread, self.init_spread, size=2)
        velocity = rng.uniform(
            -self.init_velocity_spread, self.init_velocity_spread, size=2
        )
        return np.concatenate([self.start + offset, velocity])

    def _dynamics(
        self, physical: np.ndarray, action: np.ndarray
    ) -> Tuple[np.ndarray, float]:
        pos, vel = physical[:2], physical[2:]
        error = pos - self.goal
        reward = -float(error @ error) - 0.01 * float(action @ action)
        new_vel = vel + self.dt * (action - self.drag * vel)
        new_pos = pos + self.dt * new_vel
        return np.concatenate([new_pos, new_vel]), reward

    def speed(self, state: EnvState) -> float:
        """Norm of the velocity."""
        return float(np.linalg.norm(state.physical[2:4]))

    def expert_action(self, observation: np.ndarray) -> np.ndarray:
        """Saturated PD control towards the goal."""
        obs = np.asarray(observation, dtype=np.float64)
        raw = self.kp * (self.goal - obs[:2]) - self.kd * obs[2:4]
        return self.clip_action(raw)
