# -*- coding: utf-8 -*-

"""Implementation of Pendulum."""

from typing import Tuple

import numpy as np

from ._mdp import BaseEnv, EnvState


def angle_normalize(x: float) -> float:
    """Wrap an angle into ``[-pi, pi)``."""
    return float(((x + np.pi) % (2 * np.pi)) - np.pi)


class Pendulum(BaseEnv):
    """Torque-limited pendulum swing-up; angle 0 is upright.

    Dynamics for a uniform rod of mass ``m`` and length ``l``::

        w' = clip(w + dt * (3g / (2l) * sin(theta) + 3 / (m l^2) * u), -8, 8)
        theta' = theta + dt * w'

    Reward is ``-(theta^2 + 0.1 w^2 + 0.001 u^2)`` with ``theta`` wrapped to
    ``[-pi, pi)``. p0 draws the angle uniformly from ``[-init_angle, init_angle]``
    around upright (``pi`` covers the full circle) with zero angular velocity.

    The expert pumps energy with bang-bang torque in the direction of motion until the
    rod's energy reaches the upright level, then switches to PD capture once the rod is
    within ``capture_angle`` of upright.
    """

    def __init__(
        self,
        g: float = 10.0,
        m: float = 1.0,
        length: float = 1.0,
        dt: float = 0.05,
        max_torque: float = 2.0,
        max_speed: float = 8.0,
        init_angle: float = np.pi,
        max_episode_steps: int = 200,
        gamma: float = 0.99,
        energy_gain: float = 10.0,
        capture_angle: float = 0.45,
        kp: float = 10.0,
        kd: float = 2.5,
    ) -> None:
        super().__init__(
            action_low=np.array([-max_torque]),
            action_high=np.array([max_torque]),
            gamma=gamma,
            max_episode_steps=max_episode_steps,
        )
        self.g = float(g)
        self.m = float(m)
        self.length = float(length)
        self.dt = float(dt)
        self.max_speed = float(max_speed)
        self.init_angle = float(init_angle)
        self.energy_gain = float(energy_gain)
        self.capture_angle = float(capture_angle)
        self.kp = float(kp)
        self.kd = float(kd)

    @property
    def name(self) -> str:  # noqa: D401
        """Registry name."""
        return "Pendulum"

    @property
    def obs_dim(self) -> int:  # noqa: D401
        """Angle and angular velocity."""
        return 2

    @property
    def expert_threshold(self) -> float:  # noqa: D401
        """Minimum mean per-step reward of the expert."""
        return -5.0

    def _sample_physical(self, rng: np.random.Generator) -> np.ndarray:
        theta = rng.uniform(-self.init_angle, self.init_angle)
        return np.array([angle_normalize(theta), 0.0])

    def _dynamics(
        self, physical: np.ndarray, action: np.ndarray
    ) -> Tuple[np.ndarray, float]:
        theta, omega = float(physical[0]), float(physical[1])
        u = float(action[0])
        theta_n = angle_normalize(theta)
        reward = -(theta_n**2 + 0.1 * omega**2 + 0.001 * u**2)
        accel = 3.0 * self.g / (2.0 * self.length) * np.sin(theta) + 3.0 / (
            self.m * self.length**2
        ) * u
        new_omega = float(
            np.clip(omega + accel * self.dt, -self.max_speed, self.max_speed)
        )
        new_theta = angle_normalize(theta + new_omega * self.dt)
        return np.array([new_theta, new_omega]), reward

    def speed(self, state: EnvState) -> float:
        """Absolute angular velocity."""
        return abs(float(state.physical[1]))

    def energy(self, theta: float, omega: float) -> float:
        """Mechanical energy relative to resting upright."""
        inertia = self.m * self.length**2 / 3.0
        return 0.5 * inertia * omega**2 + self.m * self.g * self.length / 2.0 * (
            np.cos(theta) - 1.0
        )

    def expert_action(self, observation: np.ndarray) -> np.ndarray:
        """Energy shaping far from upright, PD capture near it."""
        theta = angle_normalize(float(observation[0]))
        omega = float(observation[1])
        if abs(theta) < self.capture_angle:
            u = -(self.kp * theta + self.kd * omega)
        else:
            direction = 1.0 if omega >= 0.0 else -1.0
            u = self.energy_gain * (0.0 - self.energy(theta, omega)) * direction
        return self.clip_action(np.array([u]))
