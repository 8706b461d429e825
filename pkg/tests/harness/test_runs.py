import csv
import json
import tempfile

from pathlib import Path

import pytest

from buckrl.environment import Trace, TraceRow
from buckrl.exceptions import EmptyTrace, MalformedCheckpoint
from buckrl.harness.config import parse_config
from buckrl.harness.plotting import export_plot
from buckrl.harness.runs import (
    CHECKPOINT_NAME,
    CURVE_NAME,
    MANIFEST_NAME,
    METRICS_NAME,
    TRACE_NAME,
    run_baseline,
    run_eval,
    run_train,
)
from buckrl.harness.scenarios import Scenario
from buckrl.harness.sweep import SUMMARY_COLUMNS, job_seed, plan_jobs, run_sweep
from buckrl.network import Topology, init, save_checkpoint
from buckrl.testing.testcases import NonDBTestCase

TINY_CONFIG = """
[episode]
duration = 1e-3

[agent]
batch_size = 4
warmup_steps = 4
target_sync_period = 5

[training]
episodes = 2
seed = 1
verbosity = 0

[sweep]
topologies = 4x8x8, 2x4x4
rewards = 1e-2:1e-3
seeds = 1
"""

SHORT_SCENARIO = Scenario("short", cpl_schedule=((0.0, 300.0), (0.002, 500.0)), duration=0.004)


class RunsTest(NonDBTestCase):
    """run_train(), run_eval() and run_baseline() tests."""

    def setUp(self) -> None:
        """Run this setUp before each test."""
        super().setUp()
        self.config = parse_config(TINY_CONFIG)
        self.directory = tempfile.TemporaryDirectory()
        self.out = Path(self.directory.name)

    def tearDown(self) -> None:
        self.directory.cleanup()
        super().tearDown()

    def test_train_writes_outputs(self) -> None:
        """Training leaves checkpoint, curve and manifest behind."""
        outputs = run_train(self.config, None, self.out / "train")
        for name in (CHECKPOINT_NAME, CURVE_NAME, MANIFEST_NAME):
            self.assertTrue((self.out / "train" / name).exists())
        manifest = json.loads(outputs.manifest.read_text())
        self.assertEqual(manifest["seed"], 1)
        self.assertEqual(manifest["command"], "train")
        self.assertEqual(manifest["config_text"], TINY_CONFIG)
        self.assertEqual(len(outputs.curve.read_text().splitlines()), 3)

    def test_train_is_reproducible(self) -> None:
        """Same config and seed give byte-identical curves and checkpoints."""
        first = run_train(self.config, 7, self.out / "first")
        second = run_train(self.config, 7, self.out / "second")
        self.assertEqual(first.curve.read_bytes(), second.curve.read_bytes())
        self.assertEqual(first.checkpoint.read_bytes(), second.checkpoint.read_bytes())

    def test_eval_is_deterministic(self) -> None:
        """Evaluating one checkpoint twice gives the same report."""
        checkpoint = save_checkpoint(init(3), self.out / "net.qnet")
        first_trace, first = run_eval(checkpoint, SHORT_SCENARIO, self.config, self.out / "eval")
        _, second = run_eval(checkpoint, SHORT_SCENARIO, self.config)
        self.assertEqual(first, second)
        self.assertEqual(first.edges, (0.002,))
        self.assertGreater(len(first_trace), 1)
        self.assertTrue((self.out / "eval" / TRACE_NAME).exists())
        self.assertTrue((self.out / "eval" / METRICS_NAME).exists())

    def test_eval_rejects_other_topology(self) -> None:
        """A checkpoint of different widths than configured is refused."""
        checkpoint = save_checkpoint(init(3, Topology(m=2)), self.out / "net.qnet")
        with self.assertRaises(MalformedCheckpoint):
            run_eval(checkpoint, SHORT_SCENARIO, self.config)

    def test_baseline_writes_trace(self) -> None:
        """The PI baseline writes a trace CSV readable as a Trace."""
        _, report = run_baseline(SHORT_SCENARIO, config=self.config, out_dir=self.out / "pi")
        trace = Trace.from_csv(self.out / "pi" / TRACE_NAME)
        self.assertEqual(trace.rows[0].t, 0.0)
        self.assertEqual(report.edges, (0.002,))
        self.assertLess(report.max_overshoot, 50.0)


class SweepTest(NonDBTestCase):
    """Sweep tests."""

    def setUp(self) -> None:
        """Run this setUp before each test."""
        super().setUp()
        self.directory = tempfile.TemporaryDirectory()
        self.out = Path(self.directory.name)
        scenario = self.out / "short.cfg"
        scenario.write_text("[scenario]\nname = short\nduration = 0.004\nschedule = 0:300, 0.002:500\n")
        self.config = parse_config(TINY_CONFIG + "scenario = {}\n".format(scenario))

    def tearDown(self) -> None:
        self.directory.cleanup()
        super().tearDown()

    def read_summary(self, path: Path) -> list:
        with path.open(newline="") as stream:
            reader = csv.DictReader(stream)
            self.assertEqual(tuple(reader.fieldnames), SUMMARY_COLUMNS)
            return list(reader)

    def test_job_seeds_are_independent_of_order(self) -> None:
        """Seeds depend on (master, cell, replicate) only."""
        jobs = plan_jobs(self.config, self.out)
        self.assertEqual([job.seed for job in jobs], [job_seed(0, 0, 0), job_seed(0, 1, 0)])
        self.assertNotEqual(jobs[0].seed, jobs[1].seed)
        self.assertEqual(jobs[1].config.topology.m, 2)

    @pytest.mark.slow
    def test_one_row_per_cell_and_seed(self) -> None:
        """Two cells with one seed each give two summary rows."""
        rows = self.read_summary(run_sweep(self.config, self.out / "sweep", verbosity=0))
        self.assertEqual([row["cell_id"] for row in rows], ["0", "1"])
        self.assertEqual([row["M"] for row in rows], ["4", "2"])
        self.assertTrue(all(row["aborted"] in ("true", "false") for row in rows))
        self.assertTrue((self.out / "sweep" / MANIFEST_NAME).exists())

    def test_failed_jobs_become_error_rows(self) -> None:
        """A failing cell is recorded and the summary is still written."""
        config = parse_config(TINY_CONFIG + "scenario = Z\n")
        rows = self.read_summary(run_sweep(config, self.out / "sweep", verbosity=0))
        self.assertEqual(len(rows), 2)
        self.assertTrue(all(row["aborted"] == "error" for row in rows))
        self.assertTrue((self.out / "sweep" / "cell-00-seed-00" / "error.txt").exists())


class ExportPlotTest(NonDBTestCase):
    """export_plot() tests."""

    def setUp(self) -> None:
        """Run this setUp before each test."""
        super().setUp()
        self.directory = tempfile.TemporaryDirectory()
        self.out = Path(self.directory.name)
        self.trace = Trace([TraceRow(k * 1e-4, 100.0 - k * 0.1, 3.0, 0.5, 300.0, -k * 0.1) for k in range(50)])

    def tearDown(self) -> None:
        self.directory.cleanup()
        super().tearDown()

    def test_same_trace_same_file(self) -> None:
        """Plotting is byte-for-byte repeatable."""
        first = export_plot(self.trace, self.out / "first.svg", v_ref=100.0)
        second = export_plot(self.trace, self.out / "second.svg", v_ref=100.0)
        self.assertEqual(first.read_bytes(), second.read_bytes())
        self.assertIn(b"<svg", first.read_bytes())

    def test_empty_trace(self) -> None:
        """Nothing to plot raises EmptyTrace."""
        with self.assertRaises(EmptyTrace):
            export_plot(Trace(), self.out / "empty.svg")
