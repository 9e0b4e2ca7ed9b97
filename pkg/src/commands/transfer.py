# src/commands/transfer.py
from __future__ import annotations

import click

from ..control.synthesis import synthesize_transfer
from ..converters.jsonio import plan_to_json, read_json, state_from_json
from ..utils.config import resolve_option
from ..utils.log import info, reports_errors, warn
from ..utils.render import publish, report


@click.command(name="transfer")
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False),
              help="Initial state a (state JSON)")
@click.option("--target", "target_path", required=True, type=click.Path(dir_okay=False),
              help="Target state b (state JSON)")
@click.option("--epsilon", type=float, default=None, help="Accuracy in (0, 1/3) (config: epsilon)")
@click.option("--output", type=click.Path(dir_okay=False),
              help="Transfer plan JSON (default: stdout)")
@click.option("--report", "report_path", type=click.Path(dir_okay=False),
              help="Also write the distance report as JSON")
@click.pass_context
@reports_errors
def transfer(ctx, input_path, target_path, epsilon, output, report_path):
    """
    Route a to within the certified bound of b through the pivot alpha*e0.
    """
    cfg = ctx.obj.get("config", {})
    epsilon = resolve_option("epsilon", epsilon, cfg)

    a = state_from_json(read_json(input_path))
    b = state_from_json(read_json(target_path))
    plan = synthesize_transfer(a, b, epsilon)
    info(ctx, f"Window N={plan.N}: alpha={plan.alpha:.6g}, beta={plan.beta:.6g}")

    simulated = plan.simulate_distance(a, b)
    if simulated > plan.certified_bound:
        warn(ctx, f"Simulated distance {simulated:.6g} exceeds the certified bound")

    publish(plan_to_json(plan), output)
    report(
        ctx,
        "transfer",
        {
            "epsilon": plan.epsilon,
            "N": plan.N,
            "certified_bound": plan.certified_bound,
            "distance": simulated,
            "primitives": len(plan.sequence),
        },
        output=output,
        report_path=report_path,
    )
    if simulated > plan.certified_bound:
        raise SystemExit(1)
