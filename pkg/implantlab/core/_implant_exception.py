# -*- coding: utf-8 -*-

"""Implementation of ImplantException."""

import typing
from typing import Optional

from ._implant_error import ImplantError


class ImplantException(Exception):
    """Base class of every failure raised by the laboratory."""

    default_message = "implantlab failure"

    def __init__(
        self,
        message: Optional[str] = None,
        error: Optional[ImplantError] = None,
        inner: Optional[Exception] = None,
    ) -> None:
        """Initialize an exception.

        Args:
            message: The message describing the error.
            error: Structured detail about the error.
            inner: The inner exception that caused the error.
        """
        super().__init__(message)
        self._message = message
        self._error = error
        self._inner = inner

    @property
    def message(self) -> Optional[str]:  # noqa: D401
        """The error message."""
        return self._message

    @property
    def error(self) -> Optional[ImplantError]:  # noqa: D401
        """A copy of the structured error detail, or None if none was attached."""
        if self._error is None:
            return None
        return self._error.model_copy()

    @property
    def inner_exception(self) -> Optional[Exception]:  # noqa: D401
        """The exception that caused this failure, if any."""
        return self._inner

    @property
    def iteration(self) -> Optional[int]:  # noqa: D401
        """The training iteration tied to this failure, if any."""
        return self._error.iteration if self._error else None

    @property
    def layer_index(self) -> Optional[int]:  # noqa: D401
        """The network layer tied to this failure, if any."""
        return self._error.layer_index if self._error else None

    @property
    def path(self) -> Optional[str]:  # noqa: D401
        """The file system path tied to this failure, if any."""
        return self._error.path if self._error else None

    def with_iteration(self, iteration: int) -> "ImplantException":
        """Return a copy of this exception tagged with a training iteration.

        Args:
            iteration: The iteration index at which the failure surfaced.

        Returns:
            A new exception of the same type carrying ``iteration``.
        """
        error = self._error.model_copy() if self._error else ImplantError()
        error.iteration = iteration
        message = self._message or self.default_message
        if "iteration" not in message:
            message = f"{message} (iteration {iteration})"
        return type(self)(message, error, self._inner)

    def __str__(self) -> str:
        txt = self._message or self.default_message
        if self._inner is not None:
            txt += f" (caused by {self._inner!r})"
        return txt

    def __eq__(self, other: object) -> bool:
        other_ = typing.cast(ImplantException, other)
        return all(
            (
                isinstance(other, ImplantException),
                type(self) is type(other),
                self._message == other_._message,
                self._error == other_._error,
                self._inner == other_._inner,
            )
        )

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._message, self._inner))
