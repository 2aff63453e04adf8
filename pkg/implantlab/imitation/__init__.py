# -*- coding: utf-8 -*-

from .models import BcConfig, IrlConfig, TrainingRecord
from ._gaussian_policy import GaussianPolicy
from ._discriminator import (
    D_MAX,
    D_MIN,
    Discriminator,
    discriminator_update,
    DiscriminatorUpdate,
    reward,
    reward_from_probability,
    RunningNormalizer,
)
from ._value_fn import ValueFn
from ._gae import gae_advantages, normalize_advantages
from ._bc import bc_train, BcTrainer
from ._policy_update import policy_update, PolicyBatch, PolicyUpdateStats
from ._irl import collect_batch, irl_train, IrlResult, IrlTrainer, Monitor

# flake8: noqa
