"""Command-line interface: run experiments, generate presets, query bounds."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .config import ExperimentConfig, bounds_table, emit_csv, preset
from ._backend import available_backends, get_backend


@click.group()
def main():
    """Gaussian bandits with offline prior samples."""


@main.command()
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--runs", type=int, default=None, help="Override run count.")
@click.option("--horizon", type=int, default=None, help="Override horizon.")
@click.option("--seed", type=int, default=None, help="Override master seed.")
@click.option("--output", type=click.Path(), default=None, help="Override output CSV path.")
@click.option("--workers", type=int, default=1, show_default=True)
@click.option(
    "--backend",
    type=click.Choice(["cython", "python"]),
    default=None,
    help="Force a simulation backend (default: cython if built).",
)
def run(config_path, runs, horizon, seed, output, workers, backend):
    """Execute one experiment config and write its aggregated regret CSV."""
    config = ExperimentConfig.load(config_path)
    overrides = {}
    if runs is not None:
        overrides["runs"] = runs
    if horizon is not None:
        overrides["horizon"] = horizon
    if seed is not None:
        overrides["master_seed"] = seed
    if output is not None:
        overrides["output_path"] = str(output)
    if overrides:
        d = config.to_dict()
        d.update(overrides)
        config = ExperimentConfig.from_dict(d)
    out = config.output_path or Path(config_path).with_suffix(".csv").name
    curves = config.execute(workers=workers, backend_name=backend)
    emit_csv(curves, out)
    click.echo(f"wrote {out} [{get_backend(backend).BACKEND} backend]")


@main.command("preset")
@click.argument("name", type=click.Choice(["sim1", "sim2", "sim3"]))
@click.option(
    "--out-dir",
    type=click.Path(file_okay=False),
    default=".",
    show_default=True,
)
def preset_cmd(name, out_dir):
    """Write the config files for one of the bundled simulation studies."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for label, config in preset(name):
        path = out / f"{label}.json"
        config.save(path)
        click.echo(f"wrote {path}")


@main.command()
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(), default=None, help="Output CSV (default: stdout).")
def bounds(config_path, out):
    """Emit the pull-count lower-bound table for a config's instance."""
    config = ExperimentConfig.load(config_path)
    text = bounds_table(config, out)
    if out is None:
        sys.stdout.write(text)
    else:
        click.echo(f"wrote {out}")


@main.command()
def backends():
    """List available simulation backends."""
    for name in available_backends():
        click.echo(name)


if __name__ == "__main__":
    main()
