# -*- coding: utf-8 -*-

from ._perturbation_spec import (
    MOTOR_NOISE_GRID,
    PerturbationKind,
    PerturbationMode,
    PerturbationSpec,
    TRANSITION_NOISE_GRID,
)

# flake8: noqa
