#!/usr/bin/env python3
"""
Configuration for the virial coefficient workbench.

Layering (lowest to highest): config.global.yaml, config.<profile>.yaml,
a ``key=value`` run-config file, ``VLAB_*`` environment variables, CLI flags.
"""
import dataclasses
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from dotenv import load_dotenv

from utils.utils import keyvalue_parser, yaml_parser

CONFIG_DIR = Path(__file__).resolve().parent
ENV_PREFIX = "VLAB_"

globalConfigFilePath = CONFIG_DIR / "config.global.yaml"
globalCONFIG = yaml_parser(globalConfigFilePath)

# Load environment variables from .env file
load_dotenv(globalCONFIG.get("filePathEnv", ".env"))

profile = os.environ.get(f"{ENV_PREFIX}PROFILE", globalCONFIG["profile"])
profileConfigFilePath = CONFIG_DIR / f"config.{profile}.yaml"
profileCONFIG = yaml_parser(profileConfigFilePath) if profileConfigFilePath.is_file() else {}

# --- DEFAULTS ---
# global YAML overlaid by the profile; lowest layer of every RunConfig
DEFAULTS: Dict[str, Any] = {**{k: v for k, v in globalCONFIG.items() if k != "profile"}, **profileCONFIG}

SEED = int(DEFAULTS["seed"])
DATA_DIR = str(DEFAULTS.get("data_dir", "data"))
LOG_LEVEL = str(DEFAULTS.get("log_level", "INFO"))

# --- ENUMERATION CAPS ---
TABLE_MAX_N = int(globalCONFIG.get("table_max_n", 10))
TREE_MAX_N = int(globalCONFIG.get("tree_max_n", 12))
RH_MAX_N = int(globalCONFIG.get("rh_max_n", 7))
MC_MAX_N_B = int(globalCONFIG.get("mc_max_n_b", 8))
MC_MAX_N_VIRIAL = int(globalCONFIG.get("mc_max_n_B", 6))


@dataclass(frozen=True)
class RunConfig:
    """Effective parameters of one command invocation."""

    seed: int = SEED
    samples: int = 200000
    min_class_samples: int = 1000
    shard_size: int = 65536
    workers: int = 1
    data_dir: str = DATA_DIR
    log_level: str = LOG_LEVEL
    output_format: str = "md"
    profile: str = "desk"
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)


_INT_KEYS = {"seed", "samples", "min_class_samples", "shard_size", "workers"}


def _coerce(key: str, value: Any) -> Any:
    if key in _INT_KEYS:
        # accept 1e6-style literals from key=value files and env vars
        return int(float(value)) if isinstance(value, str) else int(value)
    return value


def _env_overrides(environ: Mapping[str, str]) -> Dict[str, str]:
    overrides = {}
    for key, value in environ.items():
        if key.startswith(ENV_PREFIX) and key != f"{ENV_PREFIX}PROFILE":
            overrides[key[len(ENV_PREFIX):].lower()] = value
    return overrides


def load_run_config(
    flags: Optional[Mapping[str, Any]] = None,
    config_path: Optional[Path] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> RunConfig:
    """Build the effective RunConfig; flags win over every other layer.

    Raises:
        ConfigError: When the run-config file is missing or a value does not parse.
    """
    from virlab.errors import ConfigError

    environ = os.environ if environ is None else environ
    merged: Dict[str, Any] = {"profile": profile}
    merged.update(DEFAULTS)
    if config_path is not None:
        if not Path(config_path).is_file():
            raise ConfigError(f"config file not found: {config_path}")
        merged.update(keyvalue_parser(config_path))
    merged.update(_env_overrides(environ))
    merged.update({k: v for k, v in (flags or {}).items() if v is not None})

    known = {f.name for f in dataclasses.fields(RunConfig)} - {"extra"}
    kwargs: Dict[str, Any] = {}
    extra: Dict[str, Any] = {}
    for key, value in merged.items():
        if key in known:
            try:
                kwargs[key] = _coerce(key, value)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"invalid value for {key!r}: {value!r}") from exc
        else:
            extra[key] = value
    return RunConfig(extra=extra, **kwargs)
