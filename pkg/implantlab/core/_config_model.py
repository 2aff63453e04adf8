from pydantic import BaseModel, ConfigDict


class ConfigModel(BaseModel):
    """Base class for configuration records read from and written to YAML."""

    model_config = ConfigDict(
        extra="forbid",
        validate_assignment=True,
        use_enum_values=False,
    )
