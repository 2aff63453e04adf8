# -*- coding: utf-8 -*-

"""Implementation of PathConstants."""

import os
import pathlib
from typing import Optional, Union

from typing_extensions import final


@final
class PathConstants:
    """Provides file and directory names for run artifacts."""

    OUTPUT_ENVIRONMENT_VARIABLE = "IMPLANT_OUT"

    DEFAULT_OUTPUT_DIRECTORY = "implant-runs"

    CONFIG_FILE_NAME = "config.yaml"

    DEMOS_STAGE = "demos"

    TRAIN_STAGE = "train"

    EVAL_STAGE = "eval"

    PLOT_STAGE = "plots"

    def __init_subclass__(cls) -> None:
        raise TypeError("type 'PathConstants' is not an acceptable base type")

    def __init__(self) -> None:
        raise TypeError("Can't instantiate static class 'PathConstants'")

    @classmethod
    def output_root(
        cls, override: Optional[Union[str, pathlib.Path]] = None
    ) -> pathlib.Path:
        """Resolve the directory that run artifacts are written under.

        Args:
            override: Explicit directory, typically from ``--out``.

        Returns:
            ``override`` if given, else ``$IMPLANT_OUT`` if set, else
            ``./implant-runs``.
        """
        if override:
            return pathlib.Path(override)
        env_dir = os.getenv(cls.OUTPUT_ENVIRONMENT_VARIABLE)
        if env_dir:
            return pathlib.Path(env_dir)
        return pathlib.Path(cls.DEFAULT_OUTPUT_DIRECTORY)

    @classmethod
    def fresh_stage_directory(cls, root: pathlib.Path, stage: str) -> pathlib.Path:
        """Create and return a stage directory that did not exist before.

        The first run of a stage writes into ``root/stage``; later runs write into
        ``root/stage-1``, ``root/stage-2`` and so on, so earlier artifacts are never
        touched.

        Args:
            root: The run directory.
            stage: The stage name.

        Returns:
            The newly created directory.
        """
        root.mkdir(parents=True, exist_ok=True)
        candidate = root / stage
        suffix = 0
        while True:
            try:
                candidate.mkdir()
                return candidate
            except FileExistsError:
                suffix += 1
                candidate = root / f"{stage}-{suffix}"

    @classmethod
    def latest_stage_directory(
        cls, root: pathlib.Path, stage: str
    ) -> Optional[pathlib.Path]:
        """Find the most recent directory written by a stage.

        Args:
            root: The run directory.
            stage: The stage name.

        Returns:
            The directory with the highest suffix, or None if the stage never ran.
        """
        best: Optional[pathlib.Path] = None
        best_suffix = -1
        if not root.is_dir():
            return None
        for child in root.iterdir():
            if not child.is_dir():
                continue
            if child.name == stage:
                suffix = 0
            elif child.name.startswith(stage + "-") and child.name[
                len(stage) + 1 :
            ].isdigit():
                suffix = int(child.name[len(stage) + 1 :])
            else:
                continue
            if suffix > best_suffix:
                best, best_suffix = child, suffix
        return best
