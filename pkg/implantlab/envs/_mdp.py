# -*- coding: utf-8 -*-

"""Environment interface: state, step result and the Mdp base classes."""

import abc
import copy
import dataclasses
from typing import Any, FrozenSet, Mapping, Optional, Tuple

import numpy as np

from implantlab.core import (
    ConfigurationError,
    RewardChannelError,
    SimulationDivergedError,
)


@dataclasses.dataclass(frozen=True, eq=False)
class EnvState:
    """Everything needed to resume an episode.

    Stepping is a pure function of ``(EnvState, action)``: wrapper state such as a
    noise stream's generator state travels in :attr:`extras`, keyed by wrapper kind.
    """

    physical: np.ndarray
    """Full simulator state vector."""

    t: int
    """Number of steps taken since reset."""

    last_action: np.ndarray
    """Last executed (clipped) action; zeros right after reset."""

    extras: Mapping[str, Any] = dataclasses.field(default_factory=dict)
    """Per-wrapper state."""

    def replace(self, **changes: Any) -> "EnvState":
        """Return a copy with some fields replaced."""
        return dataclasses.replace(self, **changes)

    def with_extra(self, key: str, value: Any) -> "EnvState":
        """Return a copy with one wrapper entry set."""
        extras = dict(self.extras)
        extras[key] = value
        return dataclasses.replace(self, extras=extras)


class StepResult:
    """Outcome of one environment step."""

    __slots__ = ("state", "observation", "_reward", "done", "truncated")

    def __init__(
        self,
        state: EnvState,
        observation: np.ndarray,
        reward: Optional[float],
        done: bool,
        truncated: bool = False,
    ) -> None:
        self.state = state
        self.observation = observation
        self._reward = reward
        self.done = done
        self.truncated = truncated

    @property
    def reward(self) -> float:  # noqa: D401
        """The ground-truth reward.

        Raises:
            RewardChannelError: if the step came through a reward-free handle.
        """
        if self._reward is None:
            raise RewardChannelError()
        return self._reward

    @property
    def has_reward(self) -> bool:  # noqa: D401
        """Whether the ground-truth reward is visible."""
        return self._reward is not None

    @property
    def terminated(self) -> bool:  # noqa: D401
        """True on a real terminal state, as opposed to hitting the time limit."""
        return self.done and not self.truncated

    def without_reward(self) -> "StepResult":
        """Return a copy with the reward channel hidden."""
        return StepResult(
            self.state, self.observation, None, self.done, self.truncated
        )


class Mdp(abc.ABC):
    """A continuous-control environment with explicit state."""

    kind = "base"
    """Identifies a wrapper layer; base environments use ``"base"``."""

    @property
    @abc.abstractmethod
    def name(self) -> str:  # noqa: D401
        """Registry name of the underlying environment."""

    @property
    @abc.abstractmethod
    def obs_dim(self) -> int:  # noqa: D401
        """Length of an observation."""

    @property
    @abc.abstractmethod
    def action_dim(self) -> int:  # noqa: D401
        """Length of an action."""

    @property
    @abc.abstractmethod
    def action_low(self) -> np.ndarray:  # noqa: D401
        """Per-dimension lower action bound."""

    @property
    @abc.abstractmethod
    def action_high(self) -> np.ndarray:  # noqa: D401
        """Per-dimension upper action bound."""

    @property
    @abc.abstractmethod
    def gamma(self) -> float:  # noqa: D401
        """Discount factor."""

    @property
    @abc.abstractmethod
    def max_episode_steps(self) -> int:  # noqa: D401
        """Steps after which an episode is truncated."""

    @property
    @abc.abstractmethod
    def expert_threshold(self) -> float:  # noqa: D401
        """Minimum mean per-step reward an expert must reach on demo episodes."""

    @property
    def kinds(self) -> FrozenSet[str]:  # noqa: D401
        """Kinds of every layer in this environment stack."""
        return frozenset({self.kind})

    @abc.abstractmethod
    def reset(self, rng: np.random.Generator) -> Tuple[EnvState, np.ndarray]:
        """Draw an initial state from p0.

        Args:
            rng: Seeded generator.

        Returns:
            The state and its observation.
        """

    @abc.abstractmethod
    def step(self, state: EnvState, action: np.ndarray) -> StepResult:
        """Advance one step; the action is clipped to the bounds first."""

    @abc.abstractmethod
    def observe(self, state: EnvState) -> np.ndarray:
        """Extract the observation of a state."""

    @abc.abstractmethod
    def expert_action(self, observation: np.ndarray) -> np.ndarray:
        """Return the analytic expert's action for an observation."""

    @abc.abstractmethod
    def speed(self, state: EnvState) -> float:
        """Return the scalar speed (norm of the velocity components)."""

    @abc.abstractmethod
    def adopt(self, state: EnvState) -> EnvState:
        """Re-synchronize from another environment's state.

        Keeps the physical state, step index and last action, and rebuilds this
        stack's own wrapper state.
        """

    def clip_action(self, action: np.ndarray) -> np.ndarray:
        """Clip an action to the bounds."""
        return np.clip(
            np.asarray(action, dtype=np.float64), self.action_low, self.action_high
        )

    def sample_uniform_action(self, rng: np.random.Generator) -> np.ndarray:
        """Draw an action uniformly from the bounds."""
        return rng.uniform(self.action_low, self.action_high)

    def clone(self) -> "Mdp":
        """Return an independent copy for use on another thread."""
        return copy.deepcopy(self)


class BaseEnv(Mdp):
    """Common machinery of the self-contained simulators.

    Subclasses provide the initial-state draw, the dynamics and the reward; this class
    handles clipping, truncation and divergence checks.
    """

    def __init__(
        self,
        action_low: np.ndarray,
        action_high: np.ndarray,
        gamma: float,
        max_episode_steps: int,
    ) -> None:
        if not 0.0 <= gamma < 1.0:
            raise ValueError("gamma must be in [0, 1)")
        if max_episode_steps <= 0:
            raise ValueError("max_episode_steps must be positive")
        self._action_low = np.asarray(action_low, dtype=np.float64)
        self._action_high = np.asarray(action_high, dtype=np.float64)
        self._gamma = float(gamma)
        self._max_episode_steps = int(max_episode_steps)

    @property
    def action_dim(self) -> int:  # noqa: D401
        """Length of an action."""
        return int(self._action_low.shape[0])

    @property
    def action_low(self) -> np.ndarray:  # noqa: D401
        """Per-dimension lower action bound."""
        return self._action_low

    @property
    def action_high(self) -> np.ndarray:  # noqa: D401
        """Per-dimension upper action bound."""
        return self._action_high

    @property
    def gamma(self) -> float:  # noqa: D401
        """Discount factor."""
        return self._gamma

    @property
    def max_episode_steps(self) -> int:  # noqa: D401
        """Steps after which an episode is truncated."""
        return self._max_episode_steps

    @abc.abstractmethod
    def _sample_physical(self, rng: np.random.Generator) -> np.ndarray:
        """Draw a physical state from p0."""

    @abc.abstractmethod
    def _dynamics(
        self, physical: np.ndarray, action: np.ndarray
    ) -> Tuple[np.ndarray, float]:
        """Return the next physical state and the reward of ``(physical, action)``."""

    def _is_terminal(self, physical: np.ndarray) -> bool:
        return False

    def reset(self, rng: np.random.Generator) -> Tuple[EnvState, np.ndarray]:
        """Draw an initial state from p0."""
        state = EnvState(
            physical=self._sample_physical(rng),
            t=0,
            last_action=np.zeros(self.action_dim),
        )
        return state, self.observe(state)

    def step(self, state: EnvState, action: np.ndarray) -> StepResult:
        """Advance one step.

        Raises:
            SimulationDivergedError: if the next state is not finite.
        """
        action = self.clip_action(action)
        physical, reward = self._dynamics(state.physical, action)
        if not np.all(np.isfinite(physical)) or not np.isfinite(reward):
            raise SimulationDivergedError(
                f"{self.name} produced a non-finite state at step {state.t}"
            )
        t = state.t + 1
        truncated = t >= self._max_episode_steps
        done = truncated or self._is_terminal(physical)
        next_state = state.replace(physical=physical, t=t, last_action=action)
        return StepResult(
            next_state, self.observe(next_state), float(reward), done, truncated
        )

    def observe(self, state: EnvState) -> np.ndarray:
        """Observations are the full physical state."""
        return state.physical.copy()

    def adopt(self, state: EnvState) -> EnvState:
        """Copy the physical part of another stack's state."""
        return EnvState(
            physical=state.physical.copy(),
            t=state.t,
            last_action=np.asarray(state.last_action, dtype=np.float64).copy(),
        )


class EnvWrapper(Mdp):
    """Delegates to an inner environment; subclasses override what they change."""

    extra_obs_dim = 0

    def __init__(self, inner: Mdp) -> None:
        if self.kind in inner.kinds:
            raise ConfigurationError(
                f"environment is already wrapped with '{self.kind}'"
            )
        self._inner = inner

    @property
    def inner(self) -> Mdp:  # noqa: D401
        """The wrapped environment."""
        return self._inner

    @property
    def name(self) -> str:  # noqa: D401
        """Registry name of the underlying environment."""
        return self._inner.name

    @property
    def obs_dim(self) -> int:  # noqa: D401
        """Length of an observation."""
        return self._inner.obs_dim + self.extra_obs_dim

    @property
    def action_dim(self) -> int:  # noqa: D401
        """Length of an action."""
        return self._inner.action_dim

    @property
    def action_low(self) -> np.ndarray:  # noqa: D401
        """Per-dimension lower action bound."""
        return self._inner.action_low

    @property
    def action_high(self) -> np.ndarray:  # noqa: D401
        """Per-dimension upper action bound."""
        return self._inner.action_high

    @property
    def gamma(self) -> float:  # noqa: D401
        """Discount factor."""
        return self._inner.gamma

    @property
    def max_episode_steps(self) -> int:  # noqa: D401
        """Steps after which an episode is truncated."""
        return self._inner.max_episode_steps

    @property
    def expert_threshold(self) -> float:  # noqa: D401
        """Minimum mean per-step reward an expert must reach on demo episodes."""
        return self._inner.expert_threshold

    @property
    def kinds(self) -> FrozenSet[str]:  # noqa: D401
        """Kinds of every layer in this environment stack."""
        return self._inner.kinds | {self.kind}

    def _on_reset(self, state: EnvState) -> EnvState:
        return state

    def _on_step(self, state: EnvState) -> EnvState:
        return state

    def _on_adopt(self, state: EnvState) -> EnvState:
        return state

    def _extra_observation(self, state: EnvState) -> Optional[np.ndarray]:
        return None

    def reset(self, rng: np.random.Generator) -> Tuple[EnvState, np.ndarray]:
        """Reset the inner environment, then this layer."""
        state, _ = self._inner.reset(rng)
        state = self._on_reset(state)
        return state, self.observe(state)

    def step(self, state: EnvState, action: np.ndarray) -> StepResult:
        """Step the inner environment, then update this layer."""
        result = self._inner.step(state, action)
        next_state = self._on_step(result.state)
        return StepResult(
            next_state,
            self.observe(next_state),
            result._reward,
            result.done,
            result.truncated,
        )

    def observe(self, state: EnvState) -> np.ndarray:
        """Inner observation, with this layer's dims appended."""
        obs = self._inner.observe(state)
        extra = self._extra_observation(state)
        if extra is None:
            return obs
        return np.concatenate([obs, extra])

    def expert_action(self, observation: np.ndarray) -> np.ndarray:
        """The expert only sees the inner observation."""
        return self._inner.expert_action(
            np.asarray(observation)[: self._inner.obs_dim]
        )

    def speed(self, state: EnvState) -> float:
        """Speed of the underlying simulator."""
        return self._inner.speed(state)

    def adopt(self, state: EnvState) -> EnvState:
        """Adopt the physical state, then rebuild this layer's state."""
        return self._on_adopt(self._inner.adopt(state))
