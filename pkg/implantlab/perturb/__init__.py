# -*- coding: utf-8 -*-

from .models import (
    MOTOR_NOISE_GRID,
    PerturbationKind,
    PerturbationMode,
    PerturbationSpec,
    TRANSITION_NOISE_GRID,
)
from ._wrappers import (
    ActionNuisanceEnv,
    MotorNoiseEnv,
    StateNuisanceEnv,
    TransitionNoiseEnv,
    wrap_action_nuisance,
    wrap_motor_noise,
    wrap_state_nuisance,
    wrap_transition_noise,
)
from ._factory import apply_perturbation, model_env

# flake8: noqa
