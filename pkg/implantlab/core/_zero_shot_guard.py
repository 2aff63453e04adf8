# -*- coding: utf-8 -*-

"""Implementation of ZeroShotGuard."""

import contextlib
import contextvars
from typing import Iterator

from typing_extensions import final

from ._exceptions import ZeroShotViolationError

_evaluating: contextvars.ContextVar[bool] = contextvars.ContextVar(
    "implantlab_evaluating", default=False
)


@final
class ZeroShotGuard:
    """Forbids gradient updates once an evaluation phase has begun.

    The flag is held in a context variable, so a matrix cell that is evaluating on one
    thread does not block another cell that is still training on a different thread.

    Example::

        with ZeroShotGuard.evaluation_phase():
            evaluate(policy)  # any optimizer_step in here raises
    """

    def __init_subclass__(cls) -> None:
        raise TypeError("type 'ZeroShotGuard' is not an acceptable base type")

    def __init__(self) -> None:
        raise TypeError("Can't instantiate static class 'ZeroShotGuard'")

    @staticmethod
    def is_evaluating() -> bool:
        """Return True inside an evaluation phase on the current thread."""
        return _evaluating.get()

    @staticmethod
    def check_update_allowed() -> None:
        """Raise if a gradient update would happen inside an evaluation phase.

        Raises:
            ZeroShotViolationError: if called inside :meth:`evaluation_phase`.
        """
        if _evaluating.get():
            raise ZeroShotViolationError(
                "a gradient update was attempted after the evaluation phase began"
            )

    @staticmethod
    @contextlib.contextmanager
    def evaluation_phase() -> Iterator[None]:
        """Mark the enclosed block as evaluation-only."""
        token = _evaluating.set(True)
        try:
            yield
        finally:
            _evaluating.reset(token)
