from __future__ import annotations

import functools
import json

import click

from ..control.errors import ControlError, error_payload

# stdout carries JSON artifacts; every human-facing message goes to stderr


def _should_print(ctx, level: str) -> bool:
    obj = ctx.obj if ctx and ctx.obj else {}
    if obj.get("quiet"):
        return False
    if level == "debug":
        return bool(obj.get("verbose"))
    return True


def debug(ctx, msg: str):
    if _should_print(ctx, "debug"):
        click.secho(msg, fg="bright_black", err=True)


def info(ctx, msg: str):
    if _should_print(ctx, "info"):
        click.secho(msg, fg="cyan", err=True)


def warn(ctx, msg: str):
    if _should_print(ctx, "warn"):
        click.secho(msg, fg="yellow", err=True)


def error(ctx, msg: str):
    click.secho(msg, fg="red", err=True)


def success(ctx, msg: str):
    if _should_print(ctx, "success"):
        click.secho(msg, fg="green", err=True)


def reports_errors(fn):
    """Turn a ControlError into error JSON on stdout plus its exit code."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ControlError as exc:
            ctx = click.get_current_context(silent=True)
            click.echo(json.dumps(error_payload(exc)))
            error(ctx, f"{exc.code}: {exc}")
            raise SystemExit(exc.exit_code)

    return wrapper
