"""
Integration tests for the command-line interface.
"""

import json

import pytest
from click.testing import CliRunner

from timed_rv import __version__
from timed_rv.cli import cli
from timed_rv.core.monitor import Monitor
from timed_rv.core.parser import parse_btl
from timed_rv.core.props import PropTable
from timed_rv.trace import VerdictEvent, read_trace

RUNNING_EXAMPLE = "eventually[8] always[3] p2"
RUNNING_TRACE = "\n".join(
    [
        '{"t": "0", "props": ["p1"]}',
        '{"t": "4", "props": ["p1", "p2"]}',
        '{"t": "7", "props": ["p2"]}',
    ]
)
CONTRADICTION = "eventually[5] p1 & always[5] !p1"

RUN_EXAMPLE = ["run", "-f", RUNNING_EXAMPLE]
RUN_CONTRADICTION = ["run", "-f", CONTRADICTION]


@pytest.fixture
def runner():
    return CliRunner()


def verdicts(output):
    return [json.loads(line) for line in output.splitlines()]


def trace(*times, props=()):
    return "\n".join(
        json.dumps({"t": str(t), "props": list(props)}) for t in times
    )


class TestRunCommand:
    """Test cases for the run command."""

    def test_running_example(self, runner):
        """Test that the running example is fulfilled at 7."""
        result = runner.invoke(cli, RUN_EXAMPLE, input=RUNNING_TRACE)
        assert result.exit_code == 0
        assert verdicts(result.stdout) == [
            {"t": "0", "verdict": "undetermined", "source": "initial"},
            {"t": "4", "verdict": "undetermined", "source": "event"},
            {"t": "7", "verdict": "fulfilled", "source": "event"},
        ]

    def test_failed_initially(self, runner):
        """Test that a missing proposition fails at once."""
        result = runner.invoke(cli, ["run", "-f", "p1"], input=trace(0, 1))
        assert result.exit_code == 1
        assert verdicts(result.stdout) == [
            {"t": "0", "verdict": "failed", "source": "initial"}
        ]

    def test_timer(self, runner):
        """Test that --timer decides the contradiction when its window closes."""
        result = runner.invoke(cli, RUN_CONTRADICTION + ["--timer"], input=trace(0))
        assert result.exit_code == 1
        assert verdicts(result.stdout)[-1] == {
            "t": "5",
            "verdict": "failed",
            "source": "timer",
        }

    def test_without_timer(self, runner):
        """Test that without --timer the verdict stays open."""
        result = runner.invoke(cli, RUN_CONTRADICTION, input=trace(0, 1, 2, 3))
        assert result.exit_code == 2
        assert [v["verdict"] for v in verdicts(result.stdout)] == ["undetermined"] * 4

    def test_trace_file(self, runner, tmp_path):
        """Test reading the formula and the trace from files."""
        formula = tmp_path / "formula.btl"
        formula.write_text(RUNNING_EXAMPLE + "\n")
        events = tmp_path / "trace.jsonl"
        events.write_text(RUNNING_TRACE + "\n")
        result = runner.invoke(
            cli, ["run", "-f", str(formula), "--trace", str(events)]
        )
        assert result.exit_code == 0
        assert len(result.stdout.splitlines()) == 3

    def test_oracle_backend_from_env(self, runner):
        """Test that the backend can be chosen through the environment."""
        default = runner.invoke(cli, RUN_EXAMPLE, input=RUNNING_TRACE)
        oracle = runner.invoke(
            cli,
            RUN_EXAMPLE,
            input=RUNNING_TRACE,
            env={"TIMED_RV_BACKEND": "oracle"},
        )
        assert oracle.exit_code == 0
        assert oracle.stdout == default.stdout

    def test_dump_ddd(self, runner, tmp_path):
        """Test writing the final diagrams."""
        target = tmp_path / "final.ddd"
        result = runner.invoke(
            cli,
            ["run", "-f", "p1", "--dump-ddd", str(target)],
            input=trace(0, props=["p1"]),
        )
        assert result.exit_code == 0
        assert target.read_text() == "# phi0\n1\n# phi1\n1\n"

    def test_deterministic(self, runner):
        """Test that repeated runs print the same stream."""
        first = runner.invoke(cli, RUN_CONTRADICTION + ["--timer"], input=trace(0))
        second = runner.invoke(cli, RUN_CONTRADICTION + ["--timer"], input=trace(0))
        assert first.stdout == second.stdout

    def test_matches_library(self, runner):
        """Test that the command prints what the library monitor yields."""
        props = PropTable()
        psi = parse_btl(RUNNING_EXAMPLE, props)
        states = read_trace(RUNNING_TRACE.splitlines(), props)
        monitor = Monitor(psi, next(states).state)
        expected = [
            VerdictEvent.from_record(record).model_dump_json()
            for record in monitor.run(states)
        ]
        result = runner.invoke(cli, RUN_EXAMPLE, input=RUNNING_TRACE)
        assert result.stdout.splitlines() == expected


class TestInputErrors:
    """Test cases for rejected input."""

    @pytest.mark.parametrize(
        "args,stdin",
        [
            (["run", "-f", "p1"], "{not json"),
            (["run", "-f", "p1"], trace(0, 4, 3)),
            (["run", "-f", "p1"], trace(1)),
            (["run", "-f", "p1"], ""),
            (["run", "-f", "eventually[ p1"], trace(0)),
            (["run", "-f", "always[-1] p1"], trace(0)),
            (["run", "-f", "p1", "--max-timer-injections", "0"], trace(0)),
            (["--backend", "sat", "run", "-f", "p1"], trace(0)),
            (["run", "-f", "p1", "--trace", "/nonexistent/trace.jsonl"], ""),
        ],
    )
    def test_exit_code(self, runner, args, stdin):
        """Test that bad input exits with code 3."""
        result = runner.invoke(cli, args, input=stdin)
        assert result.exit_code == 3
        assert "Error" in result.output

    def test_bad_line_after_verdict(self, runner):
        """Test that the trace is checked to the end after a verdict."""
        result = runner.invoke(
            cli, ["run", "-f", "p1"], input=trace(0, 4, 3, props=["p1"])
        )
        assert result.exit_code == 3
        assert verdicts(result.stdout) == [
            {"t": "0", "verdict": "fulfilled", "source": "initial"}
        ]
        assert "does not follow" in result.output

    def test_verdict_printed_before_bad_line(self, runner):
        """Test that the initial verdict is out before line 2 is parsed."""
        result = runner.invoke(
            cli, ["run", "-f", "p1"], input=trace(0) + "\n{not json"
        )
        assert result.exit_code == 3
        assert verdicts(result.stdout) == [
            {"t": "0", "verdict": "failed", "source": "initial"}
        ]
        assert "line 2" in result.output


class TestOtherCommands:
    """Test cases for explain, check and ett."""

    def test_explain(self, runner):
        """Test the explain report."""
        formula = "always (p1 -> eventually[30] !p1)"
        result = runner.invoke(cli, ["explain", "-f", formula])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["pfp"] == []
        assert report["nfp"] == ["p1"]
        assert report["homogeneous"] is True

    def test_check_agrees(self, runner):
        """Test the cross-check on the running example."""
        result = runner.invoke(
            cli,
            ["check", "-f", RUNNING_EXAMPLE, "--horizon", "12"],
            input=RUNNING_TRACE,
        )
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["verdict"] == "fulfilled"
        assert report["t"] == "7"
        assert report["evaluation"] == "true"
        assert report["completion"] is True
        assert report["agrees"] is True

    def test_check_short_horizon(self, runner):
        """Test that the horizon must cover the trace."""
        result = runner.invoke(
            cli, ["check", "-f", RUNNING_EXAMPLE, "--horizon", "5"], input=RUNNING_TRACE
        )
        assert result.exit_code == 3

    def test_ett(self, runner):
        """Test expiry times of an invariant from a state where it holds."""
        result = runner.invoke(cli, ["ett", "-f", "always[10] p1", "--state", "p1"])
        assert result.exit_code == 0
        assert json.loads(result.stdout) == {
            "state": ["p1"],
            "t": "0",
            "ett": "10",
            "eut": "inf",
        }

    def test_ett_eventually(self, runner):
        """Test expiry times of an eventuality from the empty state."""
        result = runner.invoke(cli, ["ett", "-f", "eventually[10] p1"])
        assert json.loads(result.stdout)["ett"] == "inf"
        assert json.loads(result.stdout)["eut"] == "10"

    def test_version(self, runner):
        """Test the version option."""
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert f"timed-rv, version {__version__}" in result.output
