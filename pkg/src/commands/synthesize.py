# src/commands/synthesize.py
from __future__ import annotations

import click

from ..control.group import ControlSequence
from ..control.state_space import apply_sequence, basis_state, fidelity
from ..control.synthesis import plan_staircase
from ..converters.jsonio import read_json, sequence_to_json, state_from_json
from ..utils.config import resolve_option
from ..utils.log import debug, info, reports_errors, warn
from ..utils.render import publish, report


@click.command(name="synthesize")
@click.option("--target", "target_path", required=True, type=click.Path(dir_okay=False),
              help="Normalized terminating target state (state JSON)")
@click.option("--output", type=click.Path(dir_okay=False), help="Sequence JSON (default: stdout)")
@click.option("--report", "report_path", type=click.Path(dir_okay=False),
              help="Also write the fidelity report as JSON")
@click.option("--tol", type=float, default=None, help="Fidelity tolerance (config: tol)")
@click.pass_context
@reports_errors
def synthesize(ctx, target_path, output, report_path, tol):
    """
    Build a word that carries e0 to the target state.
    """
    cfg = ctx.obj.get("config", {})
    tol = resolve_option("tol", tol, cfg)

    target = state_from_json(read_json(target_path))
    info(ctx, f"Target: {len(target)} amplitudes on [{min(target.support, default=0)}, "
              f"{max(target.support, default=0)}]")

    steps = plan_staircase(target)
    for step in steps:
        debug(ctx, f"  place e{step.destination}: residual {step.residual:.3g}")
    seq = ControlSequence(tuple(op for step in steps for op in step.sequence()))

    reached = fidelity(target, apply_sequence(basis_state(0), seq))
    publish(sequence_to_json(seq), output)
    report(
        ctx,
        "synthesize",
        {
            "fidelity": reached,
            "composite_steps": len(steps),
            "primitives": len(seq),
            "kicks": seq.kick_count,
            "pair_blocks": seq.pair_count,
        },
        output=output,
        report_path=report_path,
    )
    if reached < 1 - tol:
        warn(ctx, f"Fidelity {reached:.17g} is below 1 - {tol:g}")
        raise SystemExit(1)
