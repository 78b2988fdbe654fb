"""Experiment configuration: flat key=value files plus CLI overrides."""

from dataclasses import dataclass, fields, replace

DECODERS = ("greedy", "max-correlation")
MODES = ("analog", "digital")
BETA_MODES = ("simulated", "fixed-2.5")


class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit code 2)."""


@dataclass(frozen=True)
class SystemConfig:
    n: int = 100
    s: int = 1
    k: int = 1
    c: float = 2.0
    q: int = 8
    slot_seconds: float = 1e-9
    coherence_seconds: float = 30e-6
    rtt_seconds: float = 3.3334e-6
    decoder: str = "greedy"
    mode: str = "analog"
    frames: int = 10_000
    master_seed: int = 0x5EED_C0DE
    beta_mode: str = "fixed-2.5"
    threads: int = 1
    # r overrides the c-derived slot budget when set (digital sweeps set it)
    r: int | None = None
    regenerate_matrix_per_frame: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError("need n >= 2")
        if not 1 <= self.s * self.k < self.n:
            raise ConfigError("need 1 <= s*k < n")
        if self.frames < 1:
            raise ConfigError("need frames >= 1")
        if min(self.slot_seconds, self.coherence_seconds, self.rtt_seconds) <= 0:
            raise ConfigError("durations must be positive")
        if self.decoder not in DECODERS:
            raise ConfigError(f"decoder must be one of {DECODERS}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if self.beta_mode not in BETA_MODES:
            raise ConfigError(f"beta_mode must be one of {BETA_MODES}")
        if self.c <= 0:
            raise ConfigError("need c > 0")
        if self.q < 1:
            raise ConfigError("need q >= 1")
        if self.threads < 1:
            raise ConfigError("need threads >= 1")
        if self.r is not None and self.r < 1:
            raise ConfigError("need r >= 1")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError("master_seed must be a 64-bit unsigned integer")

    def updated(self, **kwargs) -> "SystemConfig":
        return replace(self, **kwargs)


def _type_name(tp) -> str:
    if isinstance(tp, str):
        return tp
    return getattr(tp, "__name__", None) or str(tp)


_FIELD_TYPES = {f.name: _type_name(f.type) for f in fields(SystemConfig)}


def _parse_value(name: str, raw: str):
    raw = raw.strip()
    ftype = _FIELD_TYPES[name]
    if ftype == "bool":
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"bad boolean for {name}: {raw!r}")
    if ftype == "int" or ftype == "int | None":
        return int(raw, 0) if raw.lower() != "none" else None
    if ftype == "float":
        return float(raw)
    return raw


def load_config(path: str | None = None, **overrides) -> SystemConfig:
    """Read key=value lines ('#' comments allowed), then apply overrides.

    With no path, start from defaults.  Override values given as strings
    (e.g. from CLI flags) are parsed the same way as file values.
    """
    values = {}
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key=value")
                key, raw = line.split("=", 1)
                key = key.strip()
                if key not in _FIELD_TYPES:
                    raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
                values[key] = _parse_value(key, raw)
    for key, value in overrides.items():
        if value is None:
            continue
        if key not in _FIELD_TYPES:
            raise ConfigError(f"unknown config key {key!r}")
        if isinstance(value, str) and _FIELD_TYPES[key] != "str":
            value = _parse_value(key, value)
        values[key] = value
    try:
        return SystemConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
