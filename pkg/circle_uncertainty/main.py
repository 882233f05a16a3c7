import logging
import sys
from typing import Optional, Sequence

import click

from .config import settings
from .exceptions import CircleError, ConsistencyError
from .routers import demo_line, evolve, measure, minimize, sweep

logger = logging.getLogger(__name__)

description = """
Uncertainty measures for a quantum particle on a circle.

Contrasts the windowed variance of the angle, which depends on where the
2pi-wide integration window starts, with the origin-invariant measure
-1/4 ln|<U^2>|^2, and explores the sum rule Delta^2(phi) + Delta^2(J) >= 1.

\b
Verbs:
  measure    every measure on one state or packet (JSON report)
  sweep      origin sweep of a packet, or arc-width sweep (CSV table)
  minimize   multi-restart search for the smallest uncertainty sum
  evolve     free evolution under J^2/2 (CSV trajectory)
  demo-line  box and split-box variances on the real line

Angles are in radians; grids are START:STOP:COUNT with both endpoints
included; +infinity is written as "inf".
"""


@click.group(help=description)
@click.option("--verbose", "-v", count=True, help="-v for INFO, -vv for DEBUG logging.")
def cli(verbose):
    level = settings.LOG_LEVEL.upper()
    if verbose:
        level = "DEBUG" if verbose > 1 else "INFO"
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


# Include verbs
cli.add_command(measure.command)
cli.add_command(sweep.command)
cli.add_command(minimize.command)
cli.add_command(evolve.command)
cli.add_command(demo_line.command)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Dispatch one command; returns the process exit code."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        result = cli.main(args=args, prog_name="circle-uncertainty", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except ConsistencyError as exc:
        click.echo(f"Error: identity '{exc.identity}' failed: {exc.detail}", err=True)
        return exc.exit_code
    except CircleError as exc:
        click.echo(f"Error: {exc.detail}", err=True)
        return exc.exit_code
    return result if isinstance(result, int) else 0
