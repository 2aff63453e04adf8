# -*- coding: utf-8 -*-

from ._implant_error import ImplantError
from ._implant_exception import ImplantException
from ._exceptions import (
    ConfigurationError,
    DegenerateExpertError,
    EmptyResultsError,
    MissingArtifactError,
    NetStateError,
    PlanningAbortedError,
    RejectedInputError,
    RewardChannelError,
    SimulationDivergedError,
    TrainingDivergedError,
    ZeroShotViolationError,
)
from ._config_model import ConfigModel
from ._random_streams import named_seed, substream
from ._zero_shot_guard import ZeroShotGuard
from ._path_constants import PathConstants

# flake8: noqa
