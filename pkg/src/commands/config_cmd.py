from __future__ import annotations

import click

from ..converters.jsonio import dumps
from ..utils.config import DEFAULTS, get_default_config_path, save_config
from ..utils.log import reports_errors, success, warn


@click.group(name="config")
def config_group():
    """Inspect and initialise configuration profiles."""
    pass


@config_group.command(name="show")
@click.pass_context
def show_config(ctx):
    """Print the merged profile (defaults overlaid with the file) as JSON."""
    cfg = ctx.obj.get("config", {})
    merged = {**DEFAULTS, **cfg}
    click.echo(dumps(merged), nl=False)


@config_group.command(name="init")
@click.option("--epsilon", type=float, help="Default transfer accuracy")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), help="Default selfcheck seed")
@click.option("--max-depth", type=click.IntRange(min=1), help="Default witness depth")
@click.option("--tol", type=float, help="Default fidelity tolerance")
@click.option("--workers", type=click.IntRange(min=1), help="Default selfcheck parallelism")
@click.pass_context
@reports_errors
def init_config(ctx, epsilon, seed, max_depth, tol, workers):
    """
    Write the active profile with defaults, overridden by any option given.
    Existing tables and comments in the file are kept.
    """
    path = ctx.obj.get("config_path") or get_default_config_path()
    profile = ctx.obj.get("profile", "default")
    overrides = {
        "epsilon": epsilon,
        "seed": seed,
        "max_depth": max_depth,
        "tol": tol,
        "workers": workers,
    }
    updates = {**DEFAULTS, **ctx.obj.get("config", {})}
    updates.update({k: v for k, v in overrides.items() if v is not None})
    if not 0 < updates["epsilon"] < 1 / 3:
        warn(ctx, f"epsilon={updates['epsilon']} is outside (0, 1/3); transfer will reject it")

    written = save_config(path, profile, updates)
    success(ctx, f"Saved profile [{profile}] to {written}")
