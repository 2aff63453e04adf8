# -*- coding: utf-8 -*-

from ._mlp import DEFAULT_HIDDEN_DIMS, Mlp
from ._optimizer import OptimizerKind, OptimizerState, optimizer_step
from ._checkpoint import (
    Checkpoint,
    CheckpointHead,
    checkpoint_from_bytes,
    checkpoint_to_bytes,
    load_checkpoint,
    save_checkpoint,
)

# flake8: noqa
