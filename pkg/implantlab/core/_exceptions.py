# -*- coding: utf-8 -*-

"""Concrete exception types."""

from typing import Optional

from ._implant_error import ImplantError
from ._implant_exception import ImplantException


class RejectedInputError(ImplantException):
    """An input had the wrong dimension or length."""

    default_message = "rejected input"


class NetStateError(ImplantException):
    """A network operation was called in the wrong state."""

    default_message = "network is not in the required state"


class TrainingDivergedError(ImplantException):
    """A gradient, loss or importance ratio became non-finite."""

    default_message = "training diverged"

    @classmethod
    def at_layer(
        cls, layer_index: int, what: str = "gradient"
    ) -> "TrainingDivergedError":
        """Create an error naming the offending network layer.

        Args:
            layer_index: Index of the layer whose values are non-finite.
            what: The quantity that diverged.

        Returns:
            The error.
        """
        return cls(
            f"non-finite {what} in layer {layer_index}",
            ImplantError(name="TrainingDiverged", layer_index=layer_index),
        )


class SimulationDivergedError(ImplantException):
    """An environment state became non-finite."""

    default_message = "simulation diverged"


class DegenerateExpertError(ImplantException):
    """Expert demonstrations fell below the environment's documented threshold."""

    default_message = "expert is degenerate"


class PlanningAbortedError(ImplantException):
    """The planner could not score any candidate."""

    default_message = "planning aborted"


class ConfigurationError(ImplantException):
    """A configuration, data file or wrapper composition is invalid."""

    default_message = "invalid configuration"


class RewardChannelError(ImplantException):
    """A ground-truth reward was read through a reward-free environment handle."""

    default_message = "the reward channel of this environment handle is disabled"


class ZeroShotViolationError(ImplantException):
    """A gradient update was attempted after evaluation began."""

    default_message = "gradient update attempted during evaluation"


class MissingArtifactError(ImplantException):
    """A file a pipeline stage depends on does not exist."""

    default_message = "missing artifact"

    @classmethod
    def for_path(cls, path: str, what: Optional[str] = None) -> "MissingArtifactError":
        """Create an error naming the missing file.

        Args:
            path: The path that was expected to exist.
            what: Optional description of the artifact.

        Returns:
            The error.
        """
        label = what or "artifact"
        return cls(
            f"missing {label}: {path}",
            ImplantError(name="MissingArtifact", path=path),
        )


class EmptyResultsError(ImplantException):
    """A result table holds no successful rows to report on."""

    default_message = "no results to report"
