# -*- coding: utf-8 -*-

"""Environment registry and per-environment defaults."""

from typing import Any, Callable, Dict, NamedTuple

from implantlab.core import ConfigurationError

from ._linear_quadratic import LinearQuadratic
from ._mdp import BaseEnv
from ._pendulum import Pendulum
from ._point_mass import PointMass2D


class EnvDefaults(NamedTuple):
    """Planner and perturbation defaults tuned per environment."""

    budget: int
    horizon: int
    velocity_threshold: float


_FACTORIES: Dict[str, Callable[..., BaseEnv]] = {
    "PointMass2D": PointMass2D,
    "Pendulum": Pendulum,
    "LinearQuadratic": LinearQuadratic,
}

_DEFAULTS: Dict[str, EnvDefaults] = {
    "PointMass2D": EnvDefaults(budget=20, horizon=50, velocity_threshold=0.3),
    "Pendulum": EnvDefaults(budget=20, horizon=30, velocity_threshold=1.0),
    "LinearQuadratic": EnvDefaults(budget=20, horizon=50, velocity_threshold=0.3),
}

ENV_NAMES = tuple(_FACTORIES)


def make_env(name: str, **overrides: Any) -> BaseEnv:
    """Build a base environment by name.

    Args:
        name: One of :data:`ENV_NAMES`.
        overrides: Constructor keyword arguments, e.g. ``max_episode_steps``.

    Returns:
        The environment.

    Raises:
        ConfigurationError: if the name or an override is unknown.
    """
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown environment '{name}'; expected one of {', '.join(ENV_NAMES)}"
        )
    try:
        return factory(**overrides)
    except TypeError as e:
        raise ConfigurationError(f"invalid options for {name}", inner=e)


def env_defaults(name: str) -> EnvDefaults:
    """Return the tuned defaults for an environment.

    Raises:
        ConfigurationError: if the name is unknown.
    """
    try:
        return _DEFAULTS[name]
    except KeyError:
        raise ConfigurationError(f"unknown environment '{name}'")
