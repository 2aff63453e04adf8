# -*- coding: utf-8 -*-

"""Implementation of ImplantError."""

from typing import List, Optional

from ._config_model import ConfigModel


class ImplantError(ConfigModel):
    """Structured detail attached to an :class:`ImplantException`."""

    name: Optional[str] = None
    """Short error code, e.g. ``"TrainingDiverged"``."""

    message: Optional[str] = None
    """Complete error message."""

    layer_index: Optional[int] = None
    """Index of the network layer that produced a non-finite value."""

    iteration: Optional[int] = None
    """Training iteration at which the failure happened."""

    candidate_index: Optional[int] = None
    """Planner candidate that failed, if the failure is tied to one."""

    path: Optional[str] = None
    """File system path associated with the error."""

    args: List[str] = []
    """Positional arguments for the error code."""
