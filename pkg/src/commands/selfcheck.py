# src/commands/selfcheck.py
from __future__ import annotations

import click

from ..control.checks import CHECKS, run_checks
from ..converters.jsonio import dumps, write_json
from ..utils.config import resolve_option
from ..utils.log import error, info, reports_errors, success
from ..utils.render import render_checks


@click.command(name="selfcheck")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None,
              help="Run seed; fixes every randomized trial (config: seed)")
@click.option("--workers", type=click.IntRange(min=1), default=None,
              help="Worker processes for the checks (config: workers)")
@click.option("--quick", is_flag=True, default=False, help="Ten times fewer trials (config: quick)")
@click.option("--check", "only", multiple=True, type=click.Choice([name for name, _ in CHECKS]),
              help="Run only this check (repeatable)")
@click.option("--output", type=click.Path(dir_okay=False), help="Also write the report JSON here")
@click.pass_context
@reports_errors
def selfcheck(ctx, seed, workers, quick, only, output):
    """
    Run the invariant suite. Exit 0 iff every requested check passes.
    """
    cfg = ctx.obj.get("config", {})
    seed = resolve_option("seed", seed, cfg)
    workers = resolve_option("workers", workers, cfg)
    quick = quick or resolve_option("quick", None, cfg)

    info(ctx, f"selfcheck seed={seed} workers={workers}{' (quick)' if quick else ''}")
    results = run_checks(seed, quick=quick, workers=workers, only=tuple(only) or None)
    passed = all(r.passed for r in results)
    payload = {"seed": seed, "checks": [r.to_dict() for r in results], "passed": passed}

    if output:
        write_json(output, payload)
    if ctx.obj.get("json"):
        click.echo(dumps(payload), nl=False)
    elif not ctx.obj.get("quiet"):
        render_checks(payload["checks"])

    if not passed:
        failed = ", ".join(r.name for r in results if not r.passed)
        error(ctx, f"Failed: {failed}")
        raise SystemExit(1)
    success(ctx, f"All {len(results)} checks passed")
