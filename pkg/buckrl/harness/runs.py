"""Train, evaluate and baseline runs, each writing into its own output directory."""

import json
import platform
import subprocess

from dataclasses import dataclass
from importlib import metadata
from pathlib import Path
from typing import Any, Dict, Optional, TextIO, Tuple, Union

import numpy as np

from buckrl import __version__
from buckrl.agent import TrainingResult, select_action, train
from buckrl.baseline import PiGains, run_pi_closed_loop
from buckrl.environment import Trace
from buckrl.exceptions import MalformedCheckpoint
from buckrl.harness.config import ExperimentConfig
from buckrl.harness.metrics import MetricsReport, compute_metrics
from buckrl.harness.scenarios import Scenario
from buckrl.logging.debug import DebuggerMixin
from buckrl.network import QNetwork, load_checkpoint, save_checkpoint

CHECKPOINT_NAME = "checkpoint.qnet"
CURVE_NAME = "learning_curve.csv"
TRACE_NAME = "trace.csv"
METRICS_NAME = "metrics.json"
MANIFEST_NAME = "manifest.json"

TRACKED_PACKAGES = ("numpy", "Django", "matplotlib", "pytz")


@dataclass
class TrainOutputs:
    result: TrainingResult
    checkpoint: Path
    curve: Path
    manifest: Path


def git_version() -> str:
    """``git describe`` of the working tree, or the package version outside a checkout."""
    try:
        described = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            timeout=5,
        )
    except (OSError, subprocess.SubprocessError):
        return __version__
    return described.stdout.strip() or __version__


def package_versions() -> Dict[str, str]:
    versions = {"buckrl": __version__, "python": platform.python_version()}
    for name in TRACKED_PACKAGES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = "not installed"
    return versions


def write_manifest(
    out_dir: Path,
    command: str,
    config: ExperimentConfig,
    seed: Optional[int],
    extra: Optional[Dict[str, Any]] = None,
) -> Path:
    """Config echo, seed and versions, enough to redo the run."""
    manifest = {
        "command": command,
        "seed": seed,
        "created": DebuggerMixin().get_timestamp("%Y-%m-%dT%H:%M:%S%z"),
        "version": git_version(),
        "versions": package_versions(),
        "config_text": config.source,
        "config": config.echo(),
    }
    manifest.update(extra or {})
    path = out_dir / MANIFEST_NAME
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n")
    return path


def write_metrics(out_dir: Path, report: MetricsReport) -> Path:
    path = out_dir / METRICS_NAME
    path.write_text(json.dumps(report.as_dict(), indent=2) + "\n")
    return path


def prepare_out_dir(out_dir: Union[str, Path]) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return out_dir


def run_train(
    config: ExperimentConfig,
    seed: Optional[int],
    out_dir: Union[str, Path],
    verbosity: Optional[int] = None,
    log_stream: Optional[TextIO] = None,
) -> TrainOutputs:
    """Train on the configured environment and write checkpoint, curve and manifest."""
    episodes = config.require_episodes()
    if seed is None:
        seed = config.training.seed
    out_dir = prepare_out_dir(out_dir)

    result = train(
        config.make_env(),
        config.agent,
        seed=seed,
        episodes=episodes,
        topology=config.topology,
        verbosity=config.training.verbosity if verbosity is None else verbosity,
        log_stream=log_stream,
    )
    checkpoint = save_checkpoint(result.net, out_dir / CHECKPOINT_NAME)
    curve = result.write_curve(out_dir / CURVE_NAME)
    manifest = write_manifest(
        out_dir, "train", config, seed, {"episodes": episodes, "syncs": len(result.sync_steps)}
    )
    return TrainOutputs(result, checkpoint, curve, manifest)


def evaluate_network(
    net: QNetwork, scenario: Scenario, config: ExperimentConfig
) -> Tuple[Trace, MetricsReport]:
    """Play the greedy policy through the scenario."""
    if net.topology != config.topology:
        raise MalformedCheckpoint(
            "Checkpoint topology {} does not match configured {}.".format(
                net.topology.widths(), config.topology.widths()
            )
        )
    env = config.make_eval_env(scenario)
    rng = np.random.default_rng(0)
    observation = env.reset(seed=0)
    done, aborted = False, False
    while not done:
        action = select_action(
            net, env.encode_observation(observation), env.action_space, 0.0, rng
        )
        observation, _, done, info = env.step(action)
        aborted = info["aborted"]

    report = compute_metrics(
        env.trace,
        scenario.circuit.v_ref,
        scenario.edges(),
        band=config.metrics.settling_band,
        steady_window=config.metrics.steady_window,
        aborted=aborted,
    )
    return env.trace, report


def run_eval(
    checkpoint: Union[str, Path, QNetwork],
    scenario: Scenario,
    config: ExperimentConfig,
    out_dir: Optional[Union[str, Path]] = None,
) -> Tuple[Trace, MetricsReport]:
    """Evaluate a checkpoint on a scenario, optionally writing trace and metrics."""
    if isinstance(checkpoint, QNetwork):
        net, source = checkpoint, None
    else:
        net, source = load_checkpoint(checkpoint), str(checkpoint)
    trace, report = evaluate_network(net, scenario, config)
    if out_dir is not None:
        out_dir = prepare_out_dir(out_dir)
        trace.to_csv(out_dir / TRACE_NAME)
        write_metrics(out_dir, report)
        write_manifest(
            out_dir,
            "eval",
            config,
            None,
            {"scenario": scenario.name, "checkpoint": source},
        )
    return trace, report


def run_baseline(
    scenario: Scenario,
    gains: Optional[PiGains] = None,
    config: Optional[ExperimentConfig] = None,
    out_dir: Optional[Union[str, Path]] = None,
) -> Tuple[Trace, MetricsReport]:
    """Double-loop PI through the scenario, optionally writing trace and metrics."""
    config = config or ExperimentConfig()
    gains = gains or config.pi.gains
    trace = run_pi_closed_loop(
        scenario.circuit,
        gains,
        scenario.cpl_schedule,
        scenario.duration,
        dt=config.pi.dt,
        record_every=config.pi.record_every,
    )
    report = compute_metrics(
        trace,
        scenario.circuit.v_ref,
        scenario.edges(),
        band=config.metrics.settling_band,
        steady_window=config.metrics.steady_window,
    )
    if out_dir is not None:
        out_dir = prepare_out_dir(out_dir)
        trace.to_csv(out_dir / TRACE_NAME)
        write_metrics(out_dir, report)
        write_manifest(out_dir, "baseline", config, None, {"scenario": scenario.name})
    return trace, report
