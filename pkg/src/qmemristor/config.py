"""Run configuration: one flat record covering every knob of a simulation.

Configs serialize to a plain ``key = value`` text format with ``#`` comments,
chosen so runs can be reproduced from a file that any tool can parse. All
fields are validated by constructing the owning module types before a run
starts, so a bad config fails before any work happens.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

from .dynamics import DecayProfile, InitialState, TimeGrid
from .errors import ConfigError
from .measurement import PhysicalUnits, ShotConfig
from .ops import InteractionSpec

MODES = ("single", "coupled")
NORMALIZATIONS = ("max", "initial")


@dataclass(frozen=True)
class RunConfig:
    name: str = "custom"
    mode: str = "single"
    a1: float = 0.0
    b1: float = 0.0
    gamma0_1: float = 0.1
    a2: float | None = None
    b2: float | None = None
    gamma0_2: float | None = None
    omega: float = 1.0
    periods: int = 4
    steps_per_period: int = 30
    interaction: str = "none"
    axis: str = "y"
    delta: float = 0.1
    control: int = 1
    dagger_convention: str = "paper"
    shots_mode: str = "exact"
    shots: int = 5000
    seed: int = 0
    plot_normalization: str = "max"

    def validate(self) -> "RunComponents":
        """Build and return all owning-module objects, or raise ConfigError."""
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.plot_normalization not in NORMALIZATIONS:
            raise ConfigError(f"plot_normalization must be one of {NORMALIZATIONS}")
        try:
            init1 = InitialState(self.a1, self.b1)
            prof1 = DecayProfile(self.gamma0_1, self.omega)
            grid = TimeGrid(self.periods, self.steps_per_period)
            shots = ShotConfig(self.shots_mode, self.shots, self.seed)
            units = PhysicalUnits(omega=self.omega)
            if self.mode == "coupled":
                if self.a2 is None or self.gamma0_2 is None:
                    raise ValueError("coupled mode needs a2 and gamma0_2")
                init2 = InitialState(self.a2, self.b2 if self.b2 is not None else 0.0)
                prof2 = DecayProfile(self.gamma0_2, self.omega)
                spec = InteractionSpec(self.interaction, self.axis, self.delta,
                                       self.control, self.dagger_convention)
            else:
                init2 = prof2 = None
                spec = InteractionSpec("none")
        except ValueError as exc:
            raise ConfigError(f"invalid configuration {self.name!r}: {exc}") from exc
        return RunComponents(init1, init2, prof1, prof2, grid, spec, shots, units)

    def to_text(self) -> str:
        lines = ["# qmemristor run configuration"]
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            lines.append(f"{f.name} = {value!r}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RunComponents:
    init1: InitialState
    init2: InitialState | None
    profile1: DecayProfile
    profile2: DecayProfile | None
    grid: TimeGrid
    interaction: InteractionSpec
    shots: ShotConfig
    units: PhysicalUnits

    @property
    def profiles(self) -> list[DecayProfile]:
        return [p for p in (self.profile1, self.profile2) if p is not None]


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}
_INT_FIELDS = {"periods", "steps_per_period", "control", "shots", "seed"}
_STR_FIELDS = {"name", "mode", "interaction", "axis", "dagger_convention",
               "shots_mode", "plot_normalization"}


def config_from_text(text: str) -> RunConfig:
    """Parse the key-value config format (inverse of RunConfig.to_text)."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = (part.strip() for part in line.partition("="))
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            if key in _STR_FIELDS:
                values[key] = value.strip("'\"")
            elif key in _INT_FIELDS:
                values[key] = int(value)
            else:
                values[key] = float(value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from exc
    if "mode" not in values:
        raise ConfigError("config is missing the 'mode' key")
    return RunConfig(**values)


def load_config(path) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_text(fh.read())


def apply_overrides(config: RunConfig, **overrides) -> RunConfig:
    """Replace selected fields, dropping overrides whose value is None."""
    cleaned = {k: v for k, v in overrides.items() if v is not None}
    bad = set(cleaned) - set(_FIELD_TYPES)
    if bad:
        raise ConfigError(f"unknown config field(s): {sorted(bad)}")
    return replace(config, **cleaned)
