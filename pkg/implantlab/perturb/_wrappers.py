# -*- coding: utf-8 -*-

"""The four test-time perturbations as environment wrappers.

Noise wrappers keep their generator state inside :class:`~implantlab.envs.EnvState`,
so stepping stays a pure function of ``(state, action)`` and a restored state replays
the exact same noise. Each reset seeds a fresh stream from the wrapper's own
generator.
"""

import copy
from typing import Any, Dict, Optional, Tuple

import numpy as np

from implantlab.core import SimulationDivergedError
from implantlab.envs import EnvState, EnvWrapper, Mdp, StepResult

from .models import PerturbationMode

StreamState = Dict[str, Any]


def _new_stream(seed: int) -> StreamState:
    return np.random.PCG64(seed).state


def _draw_normal(stream: StreamState, size: int) -> Tuple[np.ndarray, StreamState]:
    bit_generator = np.random.PCG64()
    bit_generator.state = copy.deepcopy(stream)
    values = np.random.Generator(bit_generator).standard_normal(size)
    return values, bit_generator.state


class _StreamWrapper(EnvWrapper):
    """A wrapper that owns a seeded noise stream."""

    def __init__(self, inner: Mdp, rng: Optional[np.random.Generator]) -> None:
        super().__init__(inner)
        self._rng = rng if rng is not None else np.random.default_rng(0)

    def _fresh_stream(self) -> StreamState:
        return _new_stream(int(self._rng.integers(0, 2**63 - 1)))

    def _on_adopt(self, state: EnvState) -> EnvState:
        return state.with_extra(self.kind, _new_stream(0))


class ActionNuisanceEnv(_StreamWrapper):
    """Appends the previous executed action, or standard-normal noise at test time."""

    kind = "action_nuisance"

    def __init__(
        self,
        inner: Mdp,
        mode: PerturbationMode,
        rng: Optional[np.random.Generator] = None,
    ) -> None:
        super().__init__(inner, rng)
        self.mode = PerturbationMode(mode)

    @property
    def extra_obs_dim(self) -> int:  # type: ignore[override]  # noqa: D401
        """One appended entry per action dimension."""
        return self.inner.action_dim

    def _refresh(self, state: EnvState, stream: StreamState) -> EnvState:
        noise, stream = _draw_normal(stream, self.action_dim)
        return state.with_extra(self.kind, (stream, noise))

    def _on_reset(self, state: EnvState) -> EnvState:
        if self.mode is PerturbationMode.TRAIN:
            return state
        return self._refresh(state, self._fresh_stream())

    def _on_step(self, state: EnvState) -> EnvState:
        if self.mode is PerturbationMode.TRAIN:
            return state
        stream, _ = state.extras[self.kind]
        return self._refresh(state, stream)

    def _on_adopt(self, state: EnvState) -> EnvState:
        if self.mode is PerturbationMode.TRAIN:
            return state
        return self._refresh(state, _new_stream(0))

    def _extra_observation(self, state: EnvState) -> np.ndarray:
        if self.mode is PerturbationMode.TRAIN:
            return np.asarray(state.last_action, dtype=np.float64).copy()
        _, noise = state.extras[self.kind]
        return np.asarray(noise).copy()


class StateNuisanceEnv(EnvWrapper):
    """Appends a speed indicator in training and a constant zero at test time."""

    kind = "state_nuisance"
    extra_obs_dim = 1

    def __init__(self, inner: Mdp, v_th: float, mode: PerturbationMode) -> None:
        super().__init__(inner)
        self.v_th = float(v_th)
        self.mode = PerturbationMode(mode)

    def _extra_observation(self, state: EnvState) -> np.ndarray:
        if self.mode is PerturbationMode.TEST:
            return np.zeros(1)
        return np.array([1.0 if self.inner.speed(state) >= self.v_th else 0.0])


class MotorNoiseEnv(_StreamWrapper):
    """Executes ``clip(a + eps)`` with ``eps ~ N(0, sigma^2 I)`` drawn every step."""

    kind = "motor_noise"

    def __init__(
        self, inner: Mdp, sigma: float, rng: Optional[np.random.Generator] = None
    ) -> None:
        if sigma < 0:
            raise ValueError("sigma cannot be negative")
        super().__init__(inner, rng)
        self.sigma = float(sigma)

    def _on_reset(self, state: EnvState) -> EnvState:
        return state.with_extra(self.kind, self._fresh_stream())

    def perturb_action(
        self, state: EnvState, action: np.ndarray
    ) -> Tuple[np.ndarray, EnvState]:
        """Add this step's noise to an action, before clipping.

        Args:
            state: Current state, holding the noise stream.
            action: The commanded action.

        Returns:
            The noisy pre-clip action and the state with the advanced stream.
        """
        action = np.asarray(action, dtype=np.float64)
        if self.sigma == 0.0:
            return action, state
        noise, stream = _draw_normal(state.extras[self.kind], self.action_dim)
        return action + self.sigma * noise, state.with_extra(self.kind, stream)

    def step(self, state: EnvState, action: np.ndarray) -> StepResult:
        """Step the inner environment with the noisy action."""
        noisy, state = self.perturb_action(state, action)
        return super().step(state, self.clip_action(noisy))


class TransitionNoiseEnv(_StreamWrapper):
    """Adds ``eps ~ N(0, sigma^2 I)`` to the next physical state."""

    kind = "transition_noise"

    def __init__(
        self, inner: Mdp, sigma: float, rng: Optional[np.random.Generator] = None
    ) -> None:
        if sigma < 0:
            raise ValueError("sigma cannot be negative")
        super().__init__(inner, rng)
        self.sigma = float(sigma)

    def _on_reset(self, state: EnvState) -> EnvState:
        return state.with_extra(self.kind, self._fresh_stream())

    def _on_step(self, state: EnvState) -> EnvState:
        if self.sigma == 0.0:
            return state
        noise, stream = _draw_normal(state.extras[self.kind], state.physical.shape[0])
        physical = state.physical + self.sigma * noise
        if not np.all(np.isfinite(physical)):
            raise SimulationDivergedError(
                f"transition noise produced a non-finite state at step {state.t}"
            )
        return state.replace(physical=physical).with_extra(self.kind, stream)


def wrap_action_nuisance(
    env: Mdp, mode: PerturbationMode, rng: Optional[np.random.Generator] = None
) -> ActionNuisanceEnv:
    """Append the previous action (train) or standard-normal noise (test).

    Raises:
        ConfigurationError: if ``env`` already carries an action nuisance.
    """
    return ActionNuisanceEnv(env, mode, rng)


def wrap_state_nuisance(
    env: Mdp, v_th: float, mode: PerturbationMode
) -> StateNuisanceEnv:
    """Append ``1[speed >= v_th]`` (train) or a constant 0 (test)."""
    return StateNuisanceEnv(env, v_th, mode)


def wrap_motor_noise(
    env: Mdp, sigma: float, rng: Optional[np.random.Generator] = None
) -> MotorNoiseEnv:
    """Perturb executed actions with Gaussian noise."""
    return MotorNoiseEnv(env, sigma, rng)


def wrap_transition_noise(
    env: Mdp, sigma: float, rng: Optional[np.random.Generator] = None
) -> TransitionNoiseEnv:
    """Perturb next states with Gaussian noise."""
    return TransitionNoiseEnv(env, sigma, rng)
