# src/commands/witness.py
from __future__ import annotations

import click

from ..control.synthesis import density_witness
from ..converters.jsonio import read_json, state_from_json, witness_to_json
from ..utils.config import resolve_option
from ..utils.log import info, reports_errors
from ..utils.render import publish, report


@click.command(name="witness")
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False),
              help="State a (state JSON)")
@click.option("--target", "target_path", required=True, type=click.Path(dir_okay=False),
              help="State b (state JSON)")
@click.option("--max-depth", type=click.IntRange(min=1), default=None,
              help="Most transpositions to try (config: max_depth)")
@click.option("--output", type=click.Path(dir_okay=False), help="Witness JSON (default: stdout)")
@click.option("--report", "report_path", type=click.Path(dir_okay=False),
              help="Also write the overlap report as JSON")
@click.pass_context
@reports_errors
def witness(ctx, input_path, target_path, max_depth, output, report_path):
    """
    Find a shift/swap word g with (b, g a) != 0.

    Exits 5 when nothing is found within --max-depth.
    """
    cfg = ctx.obj.get("config", {})
    max_depth = resolve_option("max_depth", max_depth, cfg)

    a = state_from_json(read_json(input_path))
    b = state_from_json(read_json(target_path))
    found = density_witness(a, b, max_depth=max_depth)
    if not found.factors:
        info(ctx, "States already overlap; the empty word is a witness")

    publish(witness_to_json(found), output)
    report(
        ctx,
        "witness",
        {
            "transpositions": len(found.factors),
            "primitives": len(found.sequence),
            "inner_re": found.overlap.real,
            "inner_im": found.overlap.imag,
            "abs_inner": abs(found.overlap),
        },
        output=output,
        report_path=report_path,
    )
