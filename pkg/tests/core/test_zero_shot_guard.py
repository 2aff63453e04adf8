import threading

import pytest
from implantlab.core import ZeroShotGuard, ZeroShotViolationError


class TestZeroShotGuard:
    def test__outside_evaluation__updates_allowed(self):
        assert not ZeroShotGuard.is_evaluating()
        ZeroShotGuard.check_update_allowed()

    def test__inside_evaluation__update_raises(self):
        with ZeroShotGuard.evaluation_phase():
            assert ZeroShotGuard.is_evaluating()
            with pytest.raises(ZeroShotViolationError):
                ZeroShotGuard.check_update_allowed()

        assert not ZeroShotGuard.is_evaluating()

    def test__exception_in_phase__flag_is_reset(self):
        with pytest.raises(RuntimeError):
            with ZeroShotGuard.evaluation_phase():
                raise RuntimeError()

        assert not ZeroShotGuard.is_evaluating()

    def test__other_thread__is_not_blocked(self):
        seen = []

        def worker():
            seen.append(ZeroShotGuard.is_evaluating())

        with ZeroShotGuard.evaluation_phase():
            thread = threading.Thread(target=worker)
            thread.start()
            thread.join()

        assert seen == [False]

    def test__instantiated__raises(self):
        with pytest.raises(TypeError):
            ZeroShotGuard()
