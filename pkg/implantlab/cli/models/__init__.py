from ._run_config import EnvSection, EvalSection, IoSection, RunConfig

# flake8: noqa
