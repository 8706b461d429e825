"""Experiment configuration files.

Flat INI-style text, one ``[section]`` per module and ``key = value`` lines::

    [circuit]
    v_in = 200
    r_ohm = none

    [episode]
    cpl_choices = 300, 500, 900
    cpl_schedule = 0:300, 0.08:500

    [training]
    episodes = 200

Unknown sections or keys, unparseable values and values outside their range
raise ConfigError naming ``section.key`` and the line it sits on.
"""

import configparser

from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from buckrl.agent import Hyperparams
from buckrl.baseline import PiGains
from buckrl.converter import ConverterParams
from buckrl.environment import (
    ActionSpace,
    BuckConverterEnv,
    CarrierSettings,
    EpisodeConfig,
    InitialStateSpec,
    RewardParams,
)
from buckrl.exceptions import ConfigError
from buckrl.harness.scenarios import Scenario
from buckrl.network import Topology


def parse_float(text: str) -> float:
    return float(text)


def parse_int(text: str) -> int:
    value = float(text)
    if value != int(value):
        raise ValueError("{!r} is not an integer".format(text))
    return int(value)


def parse_optional_float(text: str) -> Optional[float]:
    return None if text.strip().lower() in ("", "none") else float(text)


def parse_optional_int(text: str) -> Optional[int]:
    return None if text.strip().lower() in ("", "none") else parse_int(text)


def parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError("{!r} is not a boolean".format(text))


def parse_float_list(text: str) -> Tuple[float, ...]:
    return tuple(float(item) for item in text.split(",") if item.strip())


def parse_pair(text: str) -> Tuple[float, float]:
    values = parse_float_list(text)
    if len(values) != 2:
        raise ValueError("expected two comma-separated numbers")
    return values


def parse_schedule(text: str) -> Tuple[Tuple[float, float], ...]:
    """``t:watts, t:watts`` pairs."""
    entries = []
    for item in text.split(","):
        if not item.strip():
            continue
        time, watts = item.split(":")
        entries.append((float(time), float(watts)))
    return tuple(entries)


def parse_topologies(text: str) -> Tuple[Tuple[int, int, int], ...]:
    """``MxNxP`` triples, e.g. ``4x8x8, 8x16x16``."""
    cells = []
    for item in text.split(","):
        if not item.strip():
            continue
        widths = tuple(int(width) for width in item.strip().lower().split("x"))
        if len(widths) != 3:
            raise ValueError("expected MxNxP, got {!r}".format(item.strip()))
        cells.append(widths)
    return tuple(cells)


def parse_rewards(text: str) -> Tuple[Tuple[float, float], ...]:
    """``alpha:beta`` pairs."""
    return parse_schedule(text)


Parser = Callable[[str], Any]

PI_GAIN_KEYS = ("kvp", "kvi", "kcp", "kci", "voltage_scale", "current_scale")

SCHEMA: Dict[str, Dict[str, Parser]] = {
    "circuit": {
        "v_in": parse_float,
        "l_henry": parse_float,
        "c_farad": parse_float,
        "r_ohm": parse_optional_float,
        "p_cpl": parse_float,
        "f_sw": parse_float,
        "v_ref": parse_float,
        "v_min": parse_float,
    },
    "reward": {
        "alpha": parse_float,
        "beta": parse_float,
        "omega": parse_float,
        "r_cap": parse_float,
        "eps_floor": parse_float,
    },
    "carrier": {
        "f_tri": parse_float,
        "amp_max": parse_float,
        "d_min": parse_float,
        "d_max": parse_float,
        "initial_amplitude": parse_float,
        "d_level": parse_float,
        "d_amplitude": parse_float,
    },
    "episode": {
        "duration": parse_float,
        "control_period": parse_float,
        "dt": parse_float,
        "initial_v_o_fraction": parse_pair,
        "initial_i_l": parse_float,
        "cpl_schedule": parse_schedule,
        "cpl_choices": parse_float_list,
        "abort_band": parse_float,
        "observation_scale": parse_float_list,
    },
    "network": {
        "m": parse_int,
        "n": parse_int,
        "p": parse_int,
        "merge": parse_int,
    },
    "agent": {
        "lr": parse_float,
        "gamma": parse_float,
        "batch_size": parse_int,
        "epsilon": parse_float,
        "target_sync_period": parse_int,
        "warmup_steps": parse_optional_int,
        "train_steps_per_env_step": parse_int,
        "replay_capacity": parse_int,
    },
    "training": {
        "episodes": parse_int,
        "seed": parse_int,
        "verbosity": parse_int,
    },
    "pi": {
        "kvp": parse_float,
        "kvi": parse_float,
        "kcp": parse_float,
        "kci": parse_float,
        "voltage_scale": parse_float,
        "current_scale": parse_float,
        "dt": parse_float,
        "record_every": parse_int,
    },
    "metrics": {
        "settling_band": parse_float,
        "steady_window": parse_float,
    },
    "sweep": {
        "topologies": parse_topologies,
        "rewards": parse_rewards,
        "seeds": parse_int,
        "master_seed": parse_int,
        "workers": parse_int,
        "scenario": str,
    },
    "scenario": {
        "name": str,
        "duration": parse_float,
        "schedule": parse_schedule,
    },
}


@dataclass(frozen=True)
class TrainingSettings:
    episodes: Optional[int] = None
    seed: int = 0
    verbosity: int = 1


@dataclass(frozen=True)
class PiSettings:
    gains: PiGains = field(default_factory=PiGains)
    dt: float = 1e-6
    record_every: int = 10


@dataclass(frozen=True)
class MetricsSettings:
    settling_band: float = 1.0
    steady_window: float = 0.01


@dataclass(frozen=True)
class SweepSpec:
    topologies: Tuple[Tuple[int, int, int], ...] = ((4, 8, 8),)
    rewards: Tuple[Tuple[float, float], ...] = ((1e-2, 1e-3),)
    seeds: int = 1
    master_seed: int = 0
    workers: int = 1
    scenario: str = "A"

    def cells(self) -> List[Tuple[Tuple[int, int, int], Tuple[float, float]]]:
        """Cartesian product of the axes, topology varying slowest."""
        return [(topology, rewards) for topology in self.topologies for rewards in self.rewards]


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one run needs, defaults for whatever the file leaves out."""

    circuit: ConverterParams = field(default_factory=ConverterParams)
    reward: RewardParams = field(default_factory=RewardParams)
    carrier: CarrierSettings = field(default_factory=CarrierSettings)
    action_space: ActionSpace = field(default_factory=ActionSpace.grid)
    episode: EpisodeConfig = field(default_factory=EpisodeConfig)
    topology: Topology = field(default_factory=Topology)
    agent: Hyperparams = field(default_factory=Hyperparams)
    training: TrainingSettings = field(default_factory=TrainingSettings)
    pi: PiSettings = field(default_factory=PiSettings)
    metrics: MetricsSettings = field(default_factory=MetricsSettings)
    sweep: SweepSpec = field(default_factory=SweepSpec)
    source: str = ""

    def make_env(self, record_trace: bool = False) -> BuckConverterEnv:
        """Training environment."""
        return BuckConverterEnv(
            circuit=self.circuit,
            episode=self.episode,
            reward_params=self.reward,
            action_space=self.action_space,
            carrier=self.carrier,
            record_trace=record_trace,
        )

    def make_eval_env(self, scenario: Scenario) -> BuckConverterEnv:
        """Recording environment that plays the scenario from its operating point."""
        episode = replace(
            self.episode,
            duration=scenario.duration,
            cpl_schedule=scenario.cpl_schedule,
            initial_state=InitialStateSpec(at_operating_point=True),
        )
        return BuckConverterEnv(
            circuit=scenario.circuit,
            episode=episode,
            reward_params=self.reward,
            action_space=self.action_space,
            carrier=self.carrier,
            record_trace=True,
        )

    def require_episodes(self) -> int:
        if self.training.episodes is None:
            raise ConfigError("missing required field", field="training.episodes")
        if self.training.episodes < 0:
            raise ConfigError("must be >= 0", field="training.episodes")
        return self.training.episodes

    def with_cell(
        self, topology: Tuple[int, int, int], rewards: Tuple[float, float]
    ) -> "ExperimentConfig":
        """Copy with one sweep cell's network widths and reward weights."""
        m, n, p = topology
        alpha, beta = rewards
        return replace(
            self,
            topology=replace(self.topology, m=m, n=n, p=p),
            reward=replace(self.reward, alpha=alpha, beta=beta),
        )

    def echo(self) -> Dict[str, Any]:
        """Parsed values as plain data, for manifests."""
        return {
            name: asdict(getattr(self, name))
            for name in (
                "circuit",
                "reward",
                "carrier",
                "action_space",
                "episode",
                "topology",
                "agent",
                "training",
                "pi",
                "metrics",
                "sweep",
            )
        }


class ConfigReader:
    """Parses one config text into section -> key -> value with line numbers."""

    def __init__(self, text: str, allowed_sections: Optional[Sequence[str]] = None) -> None:
        self.text = text
        self.allowed_sections = tuple(allowed_sections or SCHEMA)
        self.lines: Dict[str, int] = {}
        self.values: Dict[str, Dict[str, Any]] = {}

    def field_line(self, field_name: str) -> Optional[int]:
        return self.lines.get(field_name)

    def locate_lines(self) -> None:
        """Record the line of every ``section.key`` and every section header."""
        section = None
        for number, raw in enumerate(self.text.splitlines(), start=1):
            line = raw.strip()
            if not line or line[0] in "#;":
                continue
            if line.startswith("[") and line.endswith("]"):
                section = line[1:-1].strip()
                self.lines.setdefault(section, number)
            elif section is not None:
                for separator in ("=", ":"):
                    if separator in line:
                        key = line.split(separator, 1)[0].strip().lower()
                        self.lines.setdefault("{}.{}".format(section, key), number)
                        break

    def read(self) -> Dict[str, Dict[str, Any]]:
        self.locate_lines()
        parser = configparser.ConfigParser(
            interpolation=None, delimiters=("=",), comment_prefixes=("#", ";")
        )
        try:
            parser.read_string(self.text)
        except configparser.MissingSectionHeaderError as exc:
            raise ConfigError("key outside any [section]", line=exc.lineno) from exc
        except (configparser.DuplicateOptionError, configparser.DuplicateSectionError) as exc:
            raise ConfigError("duplicate entry: {}".format(exc.message), line=exc.lineno) from exc
        except configparser.ParsingError as exc:
            line = exc.errors[0][0] if exc.errors else None
            raise ConfigError("cannot parse line", line=line) from exc

        for section in parser.sections():
            if section not in self.allowed_sections:
                raise ConfigError(
                    "unknown section [{}]".format(section),
                    field=section,
                    line=self.field_line(section),
                )
            schema = SCHEMA[section]
            parsed = self.values.setdefault(section, {})
            for key, raw in parser.items(section):
                name = "{}.{}".format(section, key)
                if key not in schema:
                    raise ConfigError("unknown key", field=name, line=self.field_line(name))
                try:
                    parsed[key] = schema[key](raw)
                except (TypeError, ValueError) as exc:
                    raise ConfigError(
                        "cannot parse {!r}: {}".format(raw, exc),
                        field=name,
                        line=self.field_line(name),
                    ) from exc
        return self.values

    def build(self, factory: Callable[..., Any], **kwargs: Any) -> Any:
        """Construct a section object, attaching line numbers to its validation errors."""
        try:
            return factory(**kwargs)
        except ConfigError as exc:
            raise ConfigError(
                exc.reason, field=exc.field, line=self.field_line(exc.field or "")
            ) from exc


def parse_config(text: str) -> ExperimentConfig:
    """Build an ExperimentConfig from config text."""
    reader = ConfigReader(text, allowed_sections=[name for name in SCHEMA if name != "scenario"])
    values = reader.read()

    def section(name: str) -> Dict[str, Any]:
        return dict(values.get(name, {}))

    circuit = reader.build(ConverterParams, **section("circuit"))
    reward = reader.build(RewardParams, **section("reward"))

    carrier_values = section("carrier")
    d_level = carrier_values.pop("d_level", 0.005)
    d_amplitude = carrier_values.pop("d_amplitude", 0.005)
    carrier = reader.build(CarrierSettings, **carrier_values)
    action_space = reader.build(ActionSpace.grid, d_level=d_level, d_amplitude=d_amplitude)

    episode_values = section("episode")
    initial = {}
    if "initial_v_o_fraction" in episode_values:
        initial["v_o_fraction"] = episode_values.pop("initial_v_o_fraction")
    if "initial_i_l" in episode_values:
        initial["i_l"] = episode_values.pop("initial_i_l")
    episode = reader.build(
        EpisodeConfig,
        initial_state=reader.build(InitialStateSpec, **initial),
        **episode_values,
    )

    topology = reader.build(Topology, **section("network"))
    agent = reader.build(Hyperparams, **section("agent"))
    training = TrainingSettings(**section("training"))

    pi_values = section("pi")
    gains = reader.build(
        PiGains, **{key: pi_values.pop(key) for key in PI_GAIN_KEYS if key in pi_values}
    )
    pi = PiSettings(gains=gains, **pi_values)
    metrics = MetricsSettings(**section("metrics"))
    sweep = SweepSpec(**section("sweep"))

    for name, value in (
        ("pi.dt", pi.dt),
        ("pi.record_every", pi.record_every),
        ("metrics.settling_band", metrics.settling_band),
        ("metrics.steady_window", metrics.steady_window),
        ("sweep.seeds", sweep.seeds),
        ("sweep.workers", sweep.workers),
    ):
        if not value > 0:
            raise ConfigError("must be > 0", field=name, line=reader.field_line(name))

    return ExperimentConfig(
        circuit=circuit,
        reward=reward,
        carrier=carrier,
        action_space=action_space,
        episode=episode,
        topology=topology,
        agent=agent,
        training=training,
        pi=pi,
        metrics=metrics,
        sweep=sweep,
        source=text,
    )


def read_text(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ConfigError("cannot read config file {}: {}".format(path, exc)) from exc


def load_config(path: Optional[Union[str, Path]] = None) -> ExperimentConfig:
    """Config from a file, or all defaults when path is None."""
    if path is None:
        return ExperimentConfig()
    return parse_config(read_text(path))


def parse_scenario(text: str, circuit: Optional[ConverterParams] = None) -> Scenario:
    """Scenario from text with a [scenario] section and optionally a [circuit] section."""
    reader = ConfigReader(text, allowed_sections=("scenario", "circuit"))
    values = reader.read()
    scenario_values = dict(values.get("scenario", {}))
    if "schedule" not in scenario_values:
        raise ConfigError("missing required field", field="scenario.schedule")
    if circuit is None:
        circuit = reader.build(ConverterParams, **values.get("circuit", {}))
    return reader.build(
        Scenario,
        name=scenario_values.get("name", "custom"),
        circuit=circuit,
        cpl_schedule=scenario_values["schedule"],
        duration=scenario_values.get("duration", 0.2),
    )


def load_scenario(path: Union[str, Path]) -> Scenario:
    return parse_scenario(read_text(path))
