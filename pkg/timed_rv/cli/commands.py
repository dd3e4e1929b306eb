"""
CLI commands for monitoring timed traces
"""

import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

import click
from pydantic import ValidationError

from .. import __version__
from ..backends import DecisionBackend
from ..core.bounds import ZERO_VAR
from ..core.btl import BtlFormula
from ..core.models import RunPrefix, VerdictStatus
from ..core.monitor import Monitor, compute_ett, compute_eut
from ..core.parser import parse_btl
from ..core.props import PropTable
from ..core.quotient import anchor_initial
from ..core.rational import format_rational, parse_rational
from ..core.translate import translate_positive
from ..exceptions import TimedRVError, TraceError
from ..refsolver import ThreeValued, eval_btl, eval_mdl, monadic_sets
from ..trace import (
    CheckReport,
    ExplainReport,
    MonitorConfig,
    TimerReport,
    VerdictEvent,
    format_time,
    read_trace,
)

logger = logging.getLogger(__name__)

EXIT_CODES = {
    VerdictStatus.FULFILLED: 0,
    VerdictStatus.FAILED: 1,
    VerdictStatus.UNDETERMINED: 2,
}
EXIT_INPUT_ERROR = 3

INPUT_ERRORS = (TimedRVError, ValidationError, ValueError, OSError)

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


def load_formula(value: str) -> str:
    """Formula text, read from a file when ``value`` names one"""
    try:
        path = Path(value)
        if path.is_file():
            return path.read_text()
    except OSError:
        pass
    return value


def parse_formula(value: str, props: PropTable) -> Tuple[str, BtlFormula]:
    text = load_formula(value)
    return text, parse_btl(text, props)


@click.group()
@click.option(
    "--backend",
    envvar="TIMED_RV_BACKEND",
    default="ddd",
    show_default=True,
    help="Decision backend: ddd or oracle (can also use TIMED_RV_BACKEND env var)",
)
@click.option(
    "--log-level",
    envvar="TIMED_RV_LOG_LEVEL",
    default="WARNING",
    show_default=True,
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    help="Log level for stderr (can also use TIMED_RV_LOG_LEVEL env var)",
)
@click.version_option(__version__, prog_name="timed-rv")
@click.pass_context
def cli(ctx, backend: str, log_level: str):
    """Timed runtime verification CLI"""
    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.ensure_object(dict)
    ctx.obj["backend"] = backend


def write_diagrams(path: str, monitor: Monitor) -> None:
    low, high = monitor.diagrams()
    Path(path).write_text(f"# phi0\n{low}\n# phi1\n{high}\n")
    logger.debug("wrote diagrams to %s", path)


@cli.command()
@click.option("--formula", "-f", required=True, help="Formula text or a file with it")
@click.option(
    "--trace", "trace_path", default="-", help="JSON-lines trace file, - for stdin"
)
@click.option("--timer", is_flag=True, help="Inject timer events at ETT/EUT")
@click.option("--explain", is_flag=True, help="Print the explain report to stderr")
@click.option(
    "--dump-ddd",
    type=click.Path(dir_okay=False),
    help="Write the final 0- and 1-substitution diagrams to a file",
)
@click.option(
    "--max-timer-injections",
    default=16,
    show_default=True,
    type=int,
    help="Timer injections allowed between two events",
)
@click.pass_context
def run(
    ctx,
    formula: str,
    trace_path: str,
    timer: bool,
    explain: bool,
    dump_ddd: Optional[str],
    max_timer_injections: int,
):
    """Monitor a trace, printing one verdict per line"""
    try:
        config = MonitorConfig(
            timer=timer,
            backend=ctx.obj["backend"],
            max_timer_injections=max_timer_injections,
            explain=explain,
        )
        props = PropTable()
        text, psi = parse_formula(formula, props)
        if config.explain:
            click.echo(ExplainReport.of(psi, text, props).model_dump_json(), err=True)

        with click.open_file(trace_path) as stream:
            states = read_trace(stream, props)
            initial = next(states, None)
            if initial is None:
                raise TraceError("empty trace")
            monitor = Monitor(
                psi, initial.state, config.make_backend(), config.max_timer_injections
            )
            for record in monitor.run(states, timer=config.timer):
                click.echo(VerdictEvent.from_record(record).model_dump_json())
            # lines after the verdict are not monitored but must still be valid
            for _ in states:
                pass

        if dump_ddd:
            write_diagrams(dump_ddd, monitor)
    except INPUT_ERRORS as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_INPUT_ERROR)

    ctx.exit(EXIT_CODES[monitor.verdict.status])


@cli.command()
@click.option("--formula", "-f", required=True, help="Formula text or a file with it")
@click.pass_context
def explain(ctx, formula: str):
    """Show translation, positive form and predicate polarity"""
    try:
        props = PropTable()
        text, psi = parse_formula(formula, props)
        report = ExplainReport.of(psi, text, props)
    except INPUT_ERRORS as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_INPUT_ERROR)

    click.echo(report.model_dump_json(indent=2))


def cross_check(
    psi: BtlFormula,
    text: str,
    prefix: RunPrefix,
    horizon: Fraction,
    backend: DecisionBackend,
) -> CheckReport:
    """Run the monitor over a prefix and hold its verdict against the
    three-valued run evaluation and the MDL evaluation of one completion
    (the last state persisting up to the horizon).
    """
    sets = monadic_sets(prefix, horizon, psi.props())
    monitor = Monitor(psi, prefix[0].state, backend)
    for _ in monitor.run(prefix.events[1:]):
        pass
    verdict = monitor.verdict

    evaluation = eval_btl(prefix, horizon, Fraction(0), psi)
    completion = eval_mdl(translate_positive(psi), {ZERO_VAR: Fraction(0)}, sets)
    agrees = True
    if verdict.is_terminal:
        expected = verdict.status is VerdictStatus.FULFILLED
        agrees = completion == expected
        if evaluation.decisive:
            agrees = agrees and evaluation is ThreeValued.of(expected)
    if not agrees:
        logger.warning("monitor and reference evaluators disagree on %s", text)

    return CheckReport(
        formula=text.strip(),
        horizon=format_rational(horizon),
        verdict=verdict.status.value,
        t=format_rational(verdict.time),
        evaluation=evaluation.value,
        completion=completion,
        agrees=agrees,
    )


@cli.command()
@click.option("--formula", "-f", required=True, help="Formula text or a file with it")
@click.option(
    "--trace", "trace_path", default="-", help="JSON-lines trace file, - for stdin"
)
@click.option("--horizon", required=True, help="Time up to which the trace is known")
@click.pass_context
def check(ctx, formula: str, trace_path: str, horizon: str):
    """Cross-check the monitor against the reference evaluators"""
    try:
        config = MonitorConfig(backend=ctx.obj["backend"])
        props = PropTable()
        text, psi = parse_formula(formula, props)
        end = parse_rational(horizon)
        with click.open_file(trace_path) as stream:
            prefix = RunPrefix(list(read_trace(stream, props)))
        if not len(prefix):
            raise TraceError("empty trace")
        report = cross_check(psi, text, prefix, end, config.make_backend())
    except INPUT_ERRORS as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_INPUT_ERROR)

    click.echo(report.model_dump_json(indent=2))
    ctx.exit(0 if report.agrees else 1)


@cli.command()
@click.option("--formula", "-f", required=True, help="Formula text or a file with it")
@click.option(
    "--state", default="", help="Comma-separated propositions holding at time 0"
)
@click.pass_context
def ett(ctx, formula: str, state: str):
    """Print the earliest tautology and unsatisfiability times from time 0"""
    try:
        config = MonitorConfig(backend=ctx.obj["backend"])
        props = PropTable()
        _, psi = parse_formula(formula, props)
        names = [name.strip() for name in state.split(",") if name.strip()]
        initial = frozenset(props.declare_all(names))
        phi = anchor_initial(translate_positive(psi), initial)
        backend = config.make_backend()
        start = Fraction(0)
        report = TimerReport(
            state=props.names(initial),
            t=format_rational(start),
            ett=format_time(compute_ett(phi, initial, start, backend)),
            eut=format_time(compute_eut(phi, initial, start, backend)),
        )
    except INPUT_ERRORS as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_INPUT_ERROR)

    click.echo(report.model_dump_json())


def main() -> None:
    cli(prog_name="timed-rv")
