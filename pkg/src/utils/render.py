# src/utils/render.py
from __future__ import annotations

from typing import Any, Mapping, Optional, Sequence

import click
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from ..converters.jsonio import dumps, write_json


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def render_report(
    title: str, rows: Mapping[str, Any], *, console: Optional[Console] = None
) -> None:
    """Key/value summary of one run (fidelity, distance, counts...) on stderr."""
    console = console or Console(stderr=True)
    table = Table.grid(padding=(0, 2))
    table.add_column(style="bold")
    table.add_column()
    for key, value in rows.items():
        table.add_row(key, _fmt(value))
    console.print(Panel.fit(table, title=f"[bold]{title}[/bold]"))


def render_checks(
    results: Sequence[Mapping[str, Any]], *, console: Optional[Console] = None
) -> None:
    """Pass/fail table for the invariant suite."""
    console = console or Console()
    table = Table(title="selfcheck")
    table.add_column("check")
    table.add_column("trials", justify="right")
    table.add_column("worst", justify="right")
    table.add_column("limit", justify="right")
    table.add_column("result")
    for r in results:
        verdict = "[green]pass[/green]" if r["passed"] else "[red]FAIL[/red]"
        table.add_row(r["name"], str(r["trials"]), _fmt(r["worst"]), _fmt(r["limit"]), verdict)
    console.print(table)


def publish(artifact: Any, output: Optional[str]) -> None:
    """Artifact JSON to --output, or to stdout when no path was given."""
    if output:
        write_json(output, artifact)
    else:
        click.echo(dumps(artifact), nl=False)


def report(
    ctx,
    title: str,
    rows: Mapping[str, Any],
    *,
    output: Optional[str] = None,
    report_path: Optional[str] = None,
) -> None:
    """Run figures: panel on stderr, optional JSON file, JSON on stdout with --json."""
    obj = ctx.obj if ctx and ctx.obj else {}
    if report_path:
        write_json(report_path, dict(rows))
    if obj.get("json") and output:
        click.echo(dumps(dict(rows)), nl=False)
    if not obj.get("quiet"):
        render_report(title, rows)
