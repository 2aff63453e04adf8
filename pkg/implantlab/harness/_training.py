# -*- coding: utf-8 -*-

"""Training one (spec, seed) cell, and reading and writing its artifacts."""

import logging
import pathlib
from typing import Callable, List, NamedTuple, Optional, Tuple, Union

from implantlab.core import substream
from implantlab.envs import collect_demos, DemoSet, make_env, Mdp, RewardFreeEnv
from implantlab.imitation import (
    BcTrainer,
    Discriminator,
    GaussianPolicy,
    irl_train,
    Monitor,
    TrainingRecord,
    ValueFn,
)
from implantlab.perturb import apply_perturbation
from implantlab.planner import run_policy_episode

from .models import Algorithm, ExperimentSpec

_logger = logging.getLogger(__name__)

POLICY_FILE = "policy.implnt"
DISCRIMINATOR_FILE = "discriminator.implnt"
VALUE_FILE = "value.implnt"

DemoKey = Tuple[str, str, int]
"""Environment, training-side perturbation and demo protocol, seed."""

TrainingKey = Tuple[str, str, int, str, str]
"""Demo key parts, then training family and its configuration."""


class TrainedArtifacts(NamedTuple):
    """What a training run produces; IRL fields are None for BC."""

    family: Algorithm
    policy: GaussianPolicy
    discriminator: Optional[Discriminator] = None
    value_fn: Optional[ValueFn] = None
    irl_log: Optional[List[TrainingRecord]] = None
    bc_losses: Optional[List[float]] = None

    def save(self, directory: Union[str, pathlib.Path]) -> None:
        """Write the checkpoints present into ``directory``."""
        directory = pathlib.Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        self.policy.save(directory / POLICY_FILE)
        if self.discriminator is not None:
            self.discriminator.save(directory / DISCRIMINATOR_FILE)
        if self.value_fn is not None:
            self.value_fn.save(directory / VALUE_FILE)

    @classmethod
    def load(
        cls,
        directory: Union[str, pathlib.Path],
        family: Algorithm,
        env: Mdp,
    ) -> "TrainedArtifacts":
        """Read the checkpoints a training family needs.

        Raises:
            MissingArtifactError: naming the first checkpoint that is absent.
        """
        directory = pathlib.Path(directory)
        policy = GaussianPolicy.load(
            directory / POLICY_FILE, env.action_low, env.action_high
        )
        if family.is_bc:
            return cls(family, policy)
        return cls(
            family,
            policy,
            Discriminator.load(directory / DISCRIMINATOR_FILE),
            ValueFn.load(directory / VALUE_FILE),
        )


def training_env(spec: ExperimentSpec) -> Mdp:
    """The environment training sees: train-mode nuisances, no noise."""
    return apply_perturbation(make_env(spec.env), spec.perturbation.training_view())


def demo_key(spec: ExperimentSpec, seed: int) -> DemoKey:
    """Specs sharing this key share demonstrations."""
    view = spec.perturbation.training_view()
    return (spec.env, view.model_dump_json() + spec.demos.model_dump_json(), seed)


def training_key(spec: ExperimentSpec, seed: int) -> TrainingKey:
    """Specs sharing this key share a training run."""
    family = spec.algorithm.training_family
    config = (
        spec.bc_config.model_dump_json()
        if family.is_bc
        else spec.irl_config.model_dump_json()
    )
    env, demo_part, _ = demo_key(spec, seed)
    return (env, demo_part, seed, family.value, config)


def collect_cell_demos(spec: ExperimentSpec, seed: int) -> DemoSet:
    """Record the expert on the training environment of ``spec``.

    Raises:
        DegenerateExpertError: if the expert misses the environment's threshold.
    """
    return collect_demos(
        training_env(spec),
        spec.demos.n_traj,
        spec.demos.subsample,
        substream(seed, "demos", spec.env),
        episode_length=spec.demos.episode_length,
    )


def make_return_monitor(env: Mdp, episode_seed: int) -> Monitor:
    """A monitor measuring the deterministic policy's return on one fixed episode."""

    def _monitor(policy: GaussianPolicy) -> float:
        return run_policy_episode(env, policy, episode_seed).total_return()

    return _monitor


def train_cell(
    spec: ExperimentSpec,
    seed: int,
    demos: DemoSet,
    monitor: Optional[Monitor] = None,
    on_epoch: Optional[Callable[[int, float], None]] = None,
) -> TrainedArtifacts:
    """Train the family of ``spec.algorithm`` for one seed.

    Args:
        spec: The experiment.
        seed: The experiment seed.
        demos: Demonstrations recorded on the training environment.
        monitor: Optional ground-truth evaluation channel for IRL logs.
        on_epoch: Optional BC progress hook.

    Returns:
        The trained artifacts.

    Raises:
        TrainingDivergedError: if training diverges.
    """
    family = spec.algorithm.training_family
    env = training_env(spec)
    rng = substream(seed, "train", family.value)
    _logger.info("training %s for %s seed %d", family.value, spec.env, seed)
    if family.is_bc:
        trainer = BcTrainer(spec.bc_config, env.action_low, env.action_high)
        if on_epoch is not None:
            trainer.epoch_completed += on_epoch
        policy = trainer.train(demos, rng)
        return TrainedArtifacts(family, policy, bc_losses=list(trainer.losses))
    result = irl_train(RewardFreeEnv(env), demos, spec.irl_config, rng, monitor)
    return TrainedArtifacts(
        family, result.policy, result.discriminator, result.value_fn, result.log
    )

