"""Command-line entry point: render a figure from a spec file or CSV paths."""

from __future__ import annotations

from pathlib import Path

import click

from .plots import MalformedCsvError, PlotSpec, render


@click.command()
@click.argument("csvs", nargs=-1, type=click.Path())
@click.option(
    "--spec", "spec_path", type=click.Path(exists=True, dir_okay=False),
    default=None, help="JSON plot spec (overrides positional CSVs).",
)
@click.option("--output", "-o", default="regret", show_default=True,
              help="Output base path (.svg and .png are appended).")
@click.option("--title", default="", help="Figure title.")
@click.option("--stride", default=10, show_default=True,
              help="Draw error bars every Nth checkpoint.")
def main(csvs, spec_path, output, title, stride):
    """Render log-x regret curves with error bars from aggregated CSVs."""
    try:
        if spec_path is not None:
            spec = PlotSpec.from_json(spec_path)
        elif csvs:
            spec = PlotSpec(
                inputs=tuple((c, Path(c).stem) for c in csvs),
                output=output,
                title=title,
                error_bar_stride=stride,
            )
        else:
            raise click.UsageError("provide CSV paths or --spec")
        for path in render(spec):
            click.echo(f"wrote {path}")
    except (MalformedCsvError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc


if __name__ == "__main__":
    main()
