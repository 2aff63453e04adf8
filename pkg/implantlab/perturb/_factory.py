# -*- coding: utf-8 -*-

"""Build perturbed environment stacks from a PerturbationSpec."""

from typing import Optional

import numpy as np

from implantlab.envs import Mdp, env_defaults

from ._wrappers import (
    wrap_action_nuisance,
    wrap_motor_noise,
    wrap_state_nuisance,
    wrap_transition_noise,
)
from .models import PerturbationKind, PerturbationMode, PerturbationSpec


def apply_perturbation(
    env: Mdp, spec: PerturbationSpec, rng: Optional[np.random.Generator] = None
) -> Mdp:
    """Wrap ``env`` as ``spec`` describes.

    Noise kinds only wrap in test mode; in train mode the environment is returned
    unchanged, since training always sees the clean dynamics.

    Args:
        env: The environment to wrap.
        spec: The perturbation.
        rng: The wrapper's own generator, for kinds that draw noise.

    Returns:
        The wrapped environment.
    """
    kind = spec.kind
    if kind is PerturbationKind.NONE:
        return env
    if kind is PerturbationKind.ACTION_NUISANCE:
        return wrap_action_nuisance(env, spec.mode, rng)
    if kind is PerturbationKind.STATE_NUISANCE:
        v_th = spec.v_th
        if v_th is None:
            v_th = env_defaults(env.name).velocity_threshold
        return wrap_state_nuisance(env, v_th, spec.mode)
    if spec.mode is PerturbationMode.TRAIN:
        return env
    if kind is PerturbationKind.MOTOR_NOISE:
        return wrap_motor_noise(env, spec.sigma, rng)
    return wrap_transition_noise(env, spec.sigma, rng)


def model_env(env: Mdp, spec: PerturbationSpec) -> Mdp:
    """Build the planner's internal model: the train-mode, zero-noise stack."""
    return apply_perturbation(env, spec.training_view())
