# src/commands/simulate.py
from __future__ import annotations

import click

from ..control.state_space import apply_sequence, fidelity, norm
from ..converters.jsonio import read_json, sequence_from_json, state_from_json, state_to_json
from ..utils.log import debug, reports_errors
from ..utils.render import publish, report


@click.command(name="simulate")
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False),
              help="Initial state (state JSON)")
@click.option("--sequence", "sequence_path", required=True, type=click.Path(dir_okay=False),
              help="Sequence JSON, or a transfer plan carrying one")
@click.option("--target", "target_path", type=click.Path(dir_okay=False),
              help="Optional state to report the fidelity against")
@click.option("--output", type=click.Path(dir_okay=False),
              help="Final state JSON (default: stdout)")
@click.option("--report", "report_path", type=click.Path(dir_okay=False),
              help="Also write the drift report as JSON")
@click.pass_context
@reports_errors
def simulate(ctx, input_path, sequence_path, target_path, output, report_path):
    """Apply a control sequence to a state."""
    state = state_from_json(read_json(input_path))
    seq = sequence_from_json(read_json(sequence_path))
    debug(ctx, f"Applying {len(seq)} primitives ({seq.kick_count} kicks)")

    final = apply_sequence(state, seq)
    rows = {
        "norm_in": norm(state),
        "norm_out": norm(final),
        "norm_drift": abs(norm(final) - norm(state)),
    }
    if target_path:
        rows["fidelity"] = fidelity(state_from_json(read_json(target_path)), final)

    publish(state_to_json(final), output)
    report(ctx, "simulate", rows, output=output, report_path=report_path)
