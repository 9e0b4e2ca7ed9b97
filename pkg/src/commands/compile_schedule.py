# src/commands/compile_schedule.py
from __future__ import annotations

import click

from ..control.rotator import compile_pulses
from ..converters.jsonio import read_json, schedule_to_json, sequence_from_json
from ..utils.log import reports_errors, warn
from ..utils.render import publish, report


@click.command(name="compile")
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False),
              help="Sequence JSON, or a transfer plan carrying one")
@click.option("--strategy", type=click.Choice(["peephole", "frame"]), default="peephole",
              show_default=True, help="How Pair blocks are placed on level pairs")
@click.option("--output", type=click.Path(dir_okay=False), help="Schedule JSON (default: stdout)")
@click.option("--report", "report_path", type=click.Path(dir_okay=False),
              help="Also write pulse counts as JSON")
@click.pass_context
@reports_errors
def compile_schedule(ctx, input_path, strategy, output, report_path):
    """Lower a control sequence to kicks and resonant pulses on the rotator."""
    seq = sequence_from_json(read_json(input_path))
    schedule = compile_pulses(seq, strategy)

    for frequency, indices in schedule.frequency_collisions.items():
        pairs = ", ".join(f"({n}, {n + 1})" for n in indices)
        warn(ctx, f"Frequency {frequency:g} drives several level pairs: {pairs}")

    publish(schedule_to_json(schedule), output)
    report(
        ctx,
        "compile",
        {
            "strategy": strategy,
            "primitives": len(seq),
            "pulses": len(schedule),
            "kicks": schedule.kick_count,
            "resonant": len(schedule) - schedule.kick_count,
        },
        output=output,
        report_path=report_path,
    )
