"""
Resource limits for enumeration, closure and lattice saturation.

Limits are read from TOML. The packaged defaults.toml supplies every
field; a user file only needs the fields it changes.
"""
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import toml


DEFAULTS_PATH = os.path.join(os.path.dirname(__file__), "defaults.toml")


@dataclass(frozen=True)
class EnumerationLimits:
    """
    Caps on the work any single computation may do. Exceeding one
    makes the computation inconclusive rather than wrong.
    """
    max_cosets: int = 65536
    depth_schedule: List[int] = field(default_factory=lambda: [2, 4, 6, 8])
    closure_cap: int = 1_000_000
    max_saturation_rounds: int = 1000

    def serialize(self) -> Dict[str, Any]:
        return {
            "max_cosets": self.max_cosets,
            "depth_schedule": list(self.depth_schedule),
            "closure_cap": self.closure_cap,
            "max_saturation_rounds": self.max_saturation_rounds,
        }

    @classmethod
    def deserialize(cls, data: Dict[str, Any]) -> "EnumerationLimits":
        limits_data = data.copy()
        if "depth_schedule" in limits_data:
            limits_data["depth_schedule"] = list(limits_data["depth_schedule"])
        return cls(**limits_data)

    def with_overrides(self, **overrides) -> "EnumerationLimits":
        """A copy with some fields replaced, validated like parsed data."""
        merged = self.serialize()
        merged.update({k: v for k, v in overrides.items() if v is not None})
        return parse_limits({"limits": merged})


class ConfigParseError(Exception):
    """Exception raised when limits parsing fails."""
    pass


def _positive_int(section: Dict[str, Any], key: str) -> int:
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigParseError(f"'{key}' must be an integer")
    if value <= 0:
        raise ConfigParseError(f"'{key}' must be positive, got {value}")
    return value


def parse_limits(toml_data: Dict[str, Any]) -> EnumerationLimits:
    """
    Parse and validate enumeration limits from raw TOML data.

    Args:
        toml_data: Raw parsed TOML data as a dictionary

    Returns:
        EnumerationLimits: Validated limits

    Raises:
        ConfigParseError: If the [limits] section is missing or invalid
    """
    if "limits" not in toml_data:
        raise ConfigParseError("Missing required [limits] section")
    section = toml_data["limits"]
    if not isinstance(section, dict):
        raise ConfigParseError("[limits] must be a table")

    known = {"max_cosets", "depth_schedule", "closure_cap", "max_saturation_rounds"}
    unknown = set(section) - known
    if unknown:
        raise ConfigParseError(f"Unknown keys in [limits]: {', '.join(sorted(unknown))}")
    for key in known:
        if key not in section:
            raise ConfigParseError(f"Missing required '{key}' in limits")

    max_cosets = _positive_int(section, "max_cosets")
    closure_cap = _positive_int(section, "closure_cap")
    max_saturation_rounds = _positive_int(section, "max_saturation_rounds")

    # Validate depth_schedule
    schedule = section["depth_schedule"]
    if not isinstance(schedule, list):
        raise ConfigParseError("'depth_schedule' must be a list of integers")
    if len(schedule) == 0:
        raise ConfigParseError("'depth_schedule' cannot be empty")
    if not all(isinstance(d, int) and not isinstance(d, bool) for d in schedule):
        raise ConfigParseError("All 'depth_schedule' entries must be integers")
    if any(d < 0 for d in schedule):
        raise ConfigParseError("'depth_schedule' entries must be non-negative")
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ConfigParseError("'depth_schedule' must be strictly increasing")

    return EnumerationLimits(
        max_cosets=max_cosets,
        depth_schedule=list(schedule),
        closure_cap=closure_cap,
        max_saturation_rounds=max_saturation_rounds,
    )


def load_limits(path: Optional[str] = None) -> EnumerationLimits:
    """
    Load limits from the packaged defaults, overlaid with the
    [limits] table of the file at path when one is given.

    Raises:
        ConfigParseError: If a file cannot be read or is invalid
    """
    try:
        data = toml.load(DEFAULTS_PATH)
    except (OSError, toml.TomlDecodeError) as e:
        raise ConfigParseError(f"Cannot read packaged defaults at {DEFAULTS_PATH}") from e
    if path is not None:
        try:
            user = toml.load(path)
        except OSError as e:
            raise ConfigParseError(f"Cannot read config file '{path}'") from e
        except toml.TomlDecodeError as e:
            raise ConfigParseError(f"Config file '{path}' is not valid TOML: {e}") from e
        if "limits" not in user:
            raise ConfigParseError(f"Config file '{path}' has no [limits] section")
        if not isinstance(user["limits"], dict):
            raise ConfigParseError("[limits] must be a table")
        data["limits"].update(user["limits"])
    return parse_limits(data)
