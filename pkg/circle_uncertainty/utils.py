import csv
import io
import logging
import math
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import click
from pydantic import BaseModel

logger = logging.getLogger(__name__)


def format_number(value: Any) -> str:
    """17 significant digits for floats; +inf as ``inf``; empty for None."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    return str(value)


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(value) for value in row])
    return buffer.getvalue()


def to_json(report: BaseModel) -> str:
    return report.model_dump_json(by_alias=True, indent=2) + "\n"


def write_output(text: str, output: Optional[str]) -> None:
    """Single writer for every artifact: a file when ``output`` is set, else stdout."""
    if output:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="")
        logger.info("wrote %d bytes to %s", len(text.encode("utf-8")), path)
    else:
        click.echo(text, nl=False)


def global_options(func):
    """Flags accepted by every verb."""
    options = [
        click.option("--output", "-o", "output", type=click.Path(dir_okay=False), default=None, help="Write the artifact here instead of stdout."),
        click.option("--seed", type=int, default=None, help="Random seed."),
        click.option("--n-range", "n_range", default=None, metavar="MIN:MAX", help="Angular-momentum lattice range."),
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None, help="Artifact format."),
        click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None, help="JSON or TOML experiment config."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def state_options(func):
    """Flags selecting a lattice state."""
    options = [
        click.option("--state", "state_kind", type=click.Choice(["coherent", "cat", "squeezed", "number", "random", "file"]), default=None),
        click.option("--l", "l", type=float, default=0.0, show_default=True, help="Angular-momentum centre."),
        click.option("--alpha", type=float, default=0.0, show_default=True, help="Angular centre in radians."),
        click.option("--s", "s", type=float, default=1.0, show_default=True, help="Squeezing parameter."),
        click.option("--phase", type=float, default=0.0, show_default=True, help="Relative cat phase in radians."),
        click.option("--n", "n", type=int, default=0, show_default=True, help="Eigenvalue for --state number."),
        click.option("--state-file", type=click.Path(exists=True, dir_okay=False), default=None, help="State dump for --state file."),
    ]
    for option in reversed(options):
        func = option(func)
    return func
