# -*- coding: utf-8 -*-

"""Implementation of DemoSet and demonstration collection."""

import io
import logging
import pathlib
import re
from typing import Callable, Optional, Union

import numpy as np
import pandas as pd

from implantlab.core import (
    ConfigurationError,
    DegenerateExpertError,
    ImplantError,
    MissingArtifactError,
)

from ._mdp import Mdp
from ._trajectory import rollout

_logger = logging.getLogger(__name__)

_HEADER = re.compile(
    r"^implant-demos v1, env=(?P<env>[^,]+), obs_dim=(?P<obs>\d+), "
    r"act_dim=(?P<act>\d+), pairs=(?P<pairs>\d+)$"
)

Expert = Callable[[np.ndarray], np.ndarray]


class DemoSet:
    """Expert ``(observation, action)`` pairs."""

    def __init__(
        self,
        env_name: str,
        observations: np.ndarray,
        actions: np.ndarray,
        n_traj: int = 0,
        expert_mean_return: float = float("nan"),
    ) -> None:
        """Initialize a demo set.

        Raises:
            ValueError: if observations and actions have different row counts.
        """
        observations = np.atleast_2d(np.asarray(observations, dtype=np.float64))
        actions = np.atleast_2d(np.asarray(actions, dtype=np.float64))
        if observations.shape[0] != actions.shape[0]:
            raise ValueError("observations and actions need the same row count")
        self.env_name = env_name
        self.observations = observations
        self.actions = actions
        self.n_traj = n_traj
        self.expert_mean_return = expert_mean_return

    @property
    def pairs(self) -> int:  # noqa: D401
        """Number of ``(observation, action)`` pairs."""
        return int(self.observations.shape[0])

    @property
    def obs_dim(self) -> int:  # noqa: D401
        """Observation width."""
        return int(self.observations.shape[1])

    @property
    def act_dim(self) -> int:  # noqa: D401
        """Action width."""
        return int(self.actions.shape[1])

    def to_dataframe(self) -> pd.DataFrame:
        """Pairs as a DataFrame with ``s_*`` then ``a_*`` columns."""
        columns = [f"s_{i}" for i in range(self.obs_dim)] + [
            f"a_{i}" for i in range(self.act_dim)
        ]
        return pd.DataFrame(
            np.hstack([self.observations, self.actions]), columns=columns
        )

    def to_text(self) -> str:
        """Encode in the demo file format."""
        header = (
            f"implant-demos v1, env={self.env_name}, obs_dim={self.obs_dim}, "
            f"act_dim={self.act_dim}, pairs={self.pairs}\n"
        )
        body = self.to_dataframe().to_csv(
            index=False, float_format="%.17g", lineterminator="\n"
        )
        return header + body

    def write(self, path: Union[str, pathlib.Path]) -> None:
        """Write the demo file."""
        pathlib.Path(path).write_text(self.to_text(), encoding="utf-8")

    @classmethod
    def from_text(cls, text: str) -> "DemoSet":
        """Decode the demo file format.

        Raises:
            ConfigurationError: if the header or body is malformed.
        """
        first, _, body = text.partition("\n")
        match = _HEADER.match(first.strip())
        if match is None:
            raise ConfigurationError(f"malformed demo header: {first!r}")
        obs_dim, act_dim = int(match["obs"]), int(match["act"])
        frame = pd.read_csv(io.StringIO(body), float_precision="round_trip")
        if frame.shape != (int(match["pairs"]), obs_dim + act_dim):
            raise ConfigurationError(
                "demo body does not match its header",
                ImplantError(name="MalformedDemos", args=[first]),
            )
        values = frame.to_numpy(dtype=np.float64)
        return cls(match["env"], values[:, :obs_dim], values[:, obs_dim:])

    @classmethod
    def read(cls, path: Union[str, pathlib.Path]) -> "DemoSet":
        """Read a demo file.

        Raises:
            MissingArtifactError: if the file does not exist.
            ConfigurationError: if the file is malformed.
        """
        path = pathlib.Path(path)
        if not path.is_file():
            raise MissingArtifactError.for_path(str(path), "demo file")
        return cls.from_text(path.read_text(encoding="utf-8"))


def collect_demos(
    env: Mdp,
    n_traj: int,
    subsample: int,
    rng: np.random.Generator,
    expert: Optional[Expert] = None,
    episode_length: Optional[int] = None,
) -> DemoSet:
    """Roll out the expert and keep every ``subsample``-th pair.

    Each episode keeps the steps ``k, k + subsample, k + 2 * subsample, ...`` from an
    offset ``k`` drawn uniformly in ``[0, subsample)``, so the kept pairs are not
    anchored to the first step of every episode.

    Args:
        env: Environment with a visible reward channel; wrapped environments record
            wrapped observations.
        n_traj: Number of expert episodes.
        subsample: Spacing of the kept pairs.
        rng: Generator for the initial states and the offsets.
        expert: Observation-to-action map; defaults to ``env.expert_action``.
        episode_length: Steps per episode; defaults to the environment's time limit.

    Returns:
        The demo set.

    Raises:
        ValueError: if ``n_traj`` or ``subsample`` is below 1.
        DegenerateExpertError: if the expert's mean per-step reward is below the
            environment's threshold.
    """
    if n_traj < 1:
        raise ValueError("n_traj must be at least 1")
    if subsample < 1:
        raise ValueError("subsample must be at least 1")
    policy = expert or env.expert_action

    observations, actions, returns = [], [], []
    total_reward, total_steps = 0.0, 0
    for _ in range(n_traj):
        trajectory = rollout(
            env, lambda state, obs, t: policy(obs), rng, max_steps=episode_length
        )
        offset = int(rng.integers(0, subsample))
        observations.append(trajectory.observation_matrix()[offset::subsample])
        actions.append(trajectory.action_matrix()[offset::subsample])
        returns.append(trajectory.total_return())
        total_reward += trajectory.total_return()
        total_steps += trajectory.length

    rate = total_reward / max(total_steps, 1)
    if rate < env.expert_threshold:
        raise DegenerateExpertError(
            f"expert mean per-step reward {rate:.4f} is below the "
            f"{env.name} threshold {env.expert_threshold}"
        )
    demos = DemoSet(
        env.name,
        np.vstack(observations),
        np.vstack(actions),
        n_traj=n_traj,
        expert_mean_return=float(np.mean(returns)),
    )
    _logger.info(
        "Collected %d pairs from %d %s expert episodes (mean return %.3f)",
        demos.pairs,
        n_traj,
        env.name,
        demos.expert_mean_return,
    )
    return demos
