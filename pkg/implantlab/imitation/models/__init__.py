# -*- coding: utf-8 -*-

from ._irl_config import BcConfig, IrlConfig
from ._training_record import TrainingRecord

# flake8: noqa
