"""
Command-line front end.

Subcommands::

    flowkit validate <file.fm> [--json]
    flowkit sim <file.fm> --scenario <file.json> [--max-ticks N] [--trace <out.jsonl>] [--events <out.json>]
    flowkit render <file.fm> -o <out.dot> [--snapshot-tick N --trace <in.jsonl>]
    flowkit fmt <file.fm> [--write]
    flowkit examples [--list | --emit <name>]

Exit codes: 0 success, 1 when an error diagnostic was reported, 2 for
usage and I/O problems.
"""

import json
import logging
from typing import Optional, Sequence

import click

from cli.corpus import corpus, find_entry
from core.config import get_config
from core.constants import EXIT_DIAGNOSTICS, EXIT_OK, EXIT_USAGE
from core.exceptions import (
    ConfigurationError,
    FileHandlingError,
    RenderError,
    ScenarioError,
    SimulationError,
    ValidationError,
    handle_flowkit_error,
)
from framework import CheckReport, FlowkitFramework
from render.dot import RenderOptions
from simulation.trace_io import trace_to_jsonl, write_events, write_trace

logger = logging.getLogger(__name__)

PROG_NAME = "flowkit"

# Failures caused by the user's inputs rather than the model
_USAGE_ERRORS = (FileHandlingError, ScenarioError, RenderError, ValidationError, ConfigurationError)

_file_argument = click.argument("file", type=click.Path(dir_okay=False))


def _color() -> Optional[bool]:
    # None lets click strip styles when the stream is not a terminal
    return False if get_config().no_color else None


def _echo_err(message: str, fg: Optional[str] = None) -> None:
    click.echo(click.style(message, fg=fg) if fg else message, err=True, color=_color())


def _report(report: CheckReport, as_json: bool = False) -> int:
    """Print findings and the summary line; return the exit code they imply."""
    for finding in report.findings:
        if as_json:
            click.echo(json.dumps(finding.to_dict(), sort_keys=True))
        else:
            fg = "red" if finding.is_error else "yellow"
            click.echo(click.style(str(finding), fg=fg), color=_color())

    summary = f"{report.error_count} errors, {report.warning_count} warnings"
    if as_json:
        click.echo(summary, err=True)
    else:
        click.echo(summary)
    return EXIT_DIAGNOSTICS if report.error_count else EXIT_OK


@click.group(name=PROG_NAME)
@click.pass_context
def cli(ctx: click.Context) -> None:
    """Flowthings model toolchain."""
    ctx.obj = FlowkitFramework(get_config())


@cli.command()
@_file_argument
@click.option("--json", "as_json", is_flag=True, help="One JSON object per diagnostic.")
@click.pass_obj
def validate(framework: FlowkitFramework, file: str, as_json: bool) -> int:
    """Parse and validate a model."""
    return _report(framework.check(file), as_json)


@cli.command()
@_file_argument
@click.option("--scenario", required=True, type=click.Path(dir_okay=False), help="Scenario JSON file.")
@click.option("--max-ticks", type=click.IntRange(min=1), default=None, help="Override the tick horizon.")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), help="Write the trace here instead of stdout.")
@click.option("--events", "events_path", type=click.Path(dir_okay=False), help="Write extracted events as JSON.")
@click.pass_obj
def sim(
    framework: FlowkitFramework,
    file: str,
    scenario: str,
    max_ticks: Optional[int],
    trace_path: Optional[str],
    events_path: Optional[str],
) -> int:
    """Simulate a model against a scenario."""
    report = framework.check(file)
    if not report.ok:
        return _report(report)

    result = framework.simulate(file, scenario, max_ticks)
    if trace_path:
        write_trace(result.trace, trace_path, framework.file_handler)
    else:
        click.echo(trace_to_jsonl(result.trace), nl=False)
    if events_path:
        write_events(result.process, events_path, framework.file_handler)

    summary = f"{len(result.trace)} records, final tick {result.trace.final_tick}, {len(result.process)} events"
    if result.trace.truncated:
        _echo_err(summary + " (truncated)", fg="yellow")
    else:
        _echo_err(summary)
    return EXIT_OK


@cli.command()
@_file_argument
@click.option("-o", "output", required=True, type=click.Path(dir_okay=False), help="DOT output file.")
@click.option("--snapshot-tick", type=click.IntRange(min=0), default=None, help="Mark stages active at this tick.")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), help="Trace the snapshot is taken from.")
@click.pass_obj
def render(
    framework: FlowkitFramework, file: str, output: str, snapshot_tick: Optional[int], trace_path: Optional[str]
) -> int:
    """Write a Graphviz diagram of a model."""
    if (snapshot_tick is None) != (trace_path is None):
        raise click.UsageError("--snapshot-tick and --trace must be given together")

    report = framework.check(file)
    if not report.ok:
        return _report(report)

    dot = framework.render(file, RenderOptions(highlight_tick=snapshot_tick), trace_path)
    framework.file_handler.write_text(output, dot)
    return EXIT_OK


@cli.command()
@_file_argument
@click.option("--write", is_flag=True, help="Rewrite the file in place.")
@click.pass_obj
def fmt(framework: FlowkitFramework, file: str, write: bool) -> int:
    """Print (or write back) the canonical form of a model."""
    result = framework.load(file)
    if not result.ok:
        return _report(CheckReport(result))

    text = framework.format(file)
    if write:
        framework.file_handler.write_text(file, text)
    else:
        click.echo(text, nl=False)
    return EXIT_OK


@cli.command()
@click.option("--list", "list_entries", is_flag=True, help="List the bundled models.")
@click.option("--emit", "emit", metavar="NAME", default=None, help="Print a bundled model's source.")
def examples(list_entries: bool, emit: Optional[str]) -> int:
    """List or print the bundled example models."""
    if list_entries and emit:
        raise click.UsageError("--list and --emit are mutually exclusive")

    if emit:
        entry = find_entry(emit)
        if entry is None:
            names = ", ".join(entry.name for entry in corpus())
            raise click.BadParameter(f"unknown example '{emit}' (choose from {names})", param_hint="--emit")
        click.echo(entry.model_bytes, nl=False)
        return EXIT_OK

    for entry in corpus():
        scenarios = ", ".join(entry.scenarios) or "-"
        click.echo(f"{entry.name}\t{entry.model_path.name}\t{scenarios}\t{entry.description}")
    return EXIT_OK


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line and return its exit code.

    Args:
        argv: Arguments after the program name; defaults to sys.argv

    Returns:
        int: 0, 1 or 2
    """
    try:
        code = cli.main(args=list(argv) if argv is not None else None, prog_name=PROG_NAME, standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        _echo_err("Aborted!")
        return EXIT_USAGE
    except _USAGE_ERRORS as e:
        logger.debug(f"Command failed: {e!r}")
        _echo_err(f"error: {e.message}", fg="red")
        return EXIT_USAGE
    except SimulationError as e:
        _echo_err(f"error: {e.message}", fg="red")
        return EXIT_DIAGNOSTICS
    except OSError as e:
        error = handle_flowkit_error(e, operation="flowkit command")
        _echo_err(f"error: {error.message}", fg="red")
        return EXIT_USAGE

    return code if isinstance(code, int) else EXIT_OK
