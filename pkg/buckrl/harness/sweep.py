"""Parameter sweeps: train every (cell, seed), evaluate on one scenario, summarize.

Seeds come from the master seed by SeedSequence spawn keys (cell, replicate),
so any single job can be rerun alone. A failing job is recorded in the
summary and does not stop the others.
"""

import csv

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, TextIO, Tuple, Union

import numpy as np

from buckrl.harness.config import ExperimentConfig
from buckrl.harness.metrics import NOT_SETTLED
from buckrl.harness.runs import prepare_out_dir, run_eval, run_train, write_manifest
from buckrl.harness.scenarios import get_scenario
from buckrl.logging.logging import TerminalLoggingMixin

SUMMARY_COLUMNS = (
    "cell_id",
    "seed",
    "M",
    "N",
    "P",
    "alpha",
    "beta",
    "final_ss_error_v",
    "overshoot_v",
    "settling_ms",
    "aborted",
)
SUMMARY_NAME = "summary.csv"


@dataclass(frozen=True)
class SweepJob:
    cell_id: int
    replicate: int
    seed: int
    topology: Tuple[int, int, int]
    rewards: Tuple[float, float]
    config: ExperimentConfig
    out_dir: Path


def job_seed(master_seed: int, cell_id: int, replicate: int) -> int:
    """Independent seed for one (cell, replicate) from the master seed."""
    sequence = np.random.SeedSequence(master_seed, spawn_key=(cell_id, replicate))
    return int(sequence.generate_state(1)[0])


def plan_jobs(config: ExperimentConfig, out_dir: Path) -> List[SweepJob]:
    spec = config.sweep
    jobs = []
    for cell_id, (topology, rewards) in enumerate(spec.cells()):
        for replicate in range(spec.seeds):
            seed = job_seed(spec.master_seed, cell_id, replicate)
            jobs.append(
                SweepJob(
                    cell_id=cell_id,
                    replicate=replicate,
                    seed=seed,
                    topology=topology,
                    rewards=rewards,
                    config=config.with_cell(topology, rewards),
                    out_dir=out_dir / "cell-{:02d}-seed-{:02d}".format(cell_id, replicate),
                )
            )
    return jobs


def run_job(job: SweepJob) -> Dict[str, str]:
    """Train and evaluate one job; never raises, failures become an error row."""
    m, n, p = job.topology
    alpha, beta = job.rewards
    row = {
        "cell_id": str(job.cell_id),
        "seed": str(job.seed),
        "M": str(m),
        "N": str(n),
        "P": str(p),
        "alpha": repr(alpha),
        "beta": repr(beta),
        "final_ss_error_v": "",
        "overshoot_v": "",
        "settling_ms": "",
        "aborted": "error",
    }
    try:
        outputs = run_train(job.config, job.seed, job.out_dir, verbosity=0)
        scenario = get_scenario(job.config.sweep.scenario, job.config.circuit)
        _, report = run_eval(outputs.result.net, scenario, job.config, job.out_dir)
    except Exception as exc:
        (job.out_dir / "error.txt").write_text("{}: {}\n".format(type(exc).__name__, exc))
        return row

    settling = report.settling_time
    row.update(
        final_ss_error_v=repr(report.steady_state_error),
        overshoot_v=repr(report.max_overshoot),
        settling_ms=NOT_SETTLED if settling is None else repr(settling * 1e3),
        aborted="true" if report.aborted else "false",
    )
    return row


class SweepRunner(TerminalLoggingMixin):
    def __init__(
        self, config: ExperimentConfig, verbosity: int = 1, log_stream: Optional[TextIO] = None
    ) -> None:
        self.config = config
        self.verbosity = verbosity
        self.log_stream = log_stream

    def run(self, out_dir: Union[str, Path]) -> Path:
        """Run every job and write the summary CSV, rows in job order."""
        out_dir = prepare_out_dir(out_dir)
        jobs = plan_jobs(self.config, out_dir)
        for job in jobs:
            job.out_dir.mkdir(parents=True, exist_ok=True)
        self.pprint_mapping(
            {
                "cells": len(self.config.sweep.cells()),
                "seeds per cell": self.config.sweep.seeds,
                "workers": self.config.sweep.workers,
                "scenario": self.config.sweep.scenario,
            },
            label="SWEEP",
        )

        if self.config.sweep.workers > 1:
            with ProcessPoolExecutor(max_workers=self.config.sweep.workers) as pool:
                rows = list(pool.map(run_job, jobs))
        else:
            rows = [run_job(job) for job in jobs]

        for row in rows:
            self.write_line(
                "cell {cell_id} seed {seed}: ss {final_ss_error_v} V, overshoot {overshoot_v} V, settling {settling_ms} ms, aborted {aborted}".format(
                    **row
                )
            )

        summary = out_dir / SUMMARY_NAME
        with summary.open("w", newline="") as stream:
            writer = csv.DictWriter(stream, fieldnames=SUMMARY_COLUMNS, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        write_manifest(
            out_dir,
            "sweep",
            self.config,
            self.config.sweep.master_seed,
            {"jobs": len(jobs), "failed": sum(row["aborted"] == "error" for row in rows)},
        )
        return summary


def run_sweep(
    config: ExperimentConfig,
    out_dir: Union[str, Path],
    verbosity: int = 1,
    log_stream: Optional[TextIO] = None,
) -> Path:
    """Train and evaluate every sweep cell for every seed; returns the summary CSV path."""
    config.require_episodes()
    return SweepRunner(config, verbosity, log_stream).run(out_dir)
