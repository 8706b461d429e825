"""Load-step scenarios the controllers are compared on."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from buckrl.converter import ConverterParams
from buckrl.exceptions import ConfigError

Schedule = Tuple[Tuple[float, float], ...]


@dataclass(frozen=True)
class Scenario:
    """A named CPL schedule on a circuit; schedule times strictly increase within [0, duration)."""

    name: str
    circuit: ConverterParams = field(default_factory=ConverterParams)
    cpl_schedule: Schedule = ((0.0, 300.0),)
    duration: float = 0.2

    def __post_init__(self) -> None:
        if not self.duration > 0:
            raise ConfigError("must be > 0", field="scenario.duration")
        times = [t for t, _ in self.cpl_schedule]
        if any(not 0.0 <= t < self.duration for t in times):
            raise ConfigError(
                "schedule times must lie in [0, duration)", field="scenario.schedule"
            )
        if any(later <= earlier for earlier, later in zip(times, times[1:])):
            raise ConfigError(
                "schedule times must be strictly increasing", field="scenario.schedule"
            )
        if any(watts < 0 for _, watts in self.cpl_schedule):
            raise ConfigError("loads must be >= 0", field="scenario.schedule")

    def edges(self) -> List[float]:
        """Times at which the load steps; the start time when it never does."""
        steps = [t for t, _ in self.cpl_schedule if t > 0.0]
        return steps or [0.0]

    def with_circuit(self, circuit: ConverterParams) -> "Scenario":
        return Scenario(self.name, circuit, self.cpl_schedule, self.duration)


SCENARIO_A = Scenario(
    name="A", cpl_schedule=((0.0, 300.0), (0.08, 500.0), (0.14, 300.0)), duration=0.2
)
SCENARIO_B = Scenario(
    name="B", cpl_schedule=((0.0, 300.0), (0.08, 900.0), (0.14, 300.0)), duration=0.2
)

BUILTIN_SCENARIOS: Dict[str, Scenario] = {"A": SCENARIO_A, "B": SCENARIO_B}


def get_scenario(name_or_path: str, circuit: Optional[ConverterParams] = None) -> Scenario:
    """Built-in scenario by letter, or a scenario file with a [scenario] section."""
    from buckrl.harness.config import load_scenario

    scenario = BUILTIN_SCENARIOS.get(name_or_path.upper())
    if scenario is None:
        path = Path(name_or_path)
        if not path.exists():
            raise ConfigError(
                "unknown scenario {!r}, expected A, B or a file".format(name_or_path),
                field="scenario",
            )
        scenario = load_scenario(path)
    if circuit is not None:
        scenario = scenario.with_circuit(circuit)
    return scenario
