from __future__ import annotations


class ControlError(Exception):
    """Base exception for control-sequence errors."""

    code = "control_error"
    exit_code = 1


class ParseError(ControlError):
    """Input file does not follow the artifact's JSON format."""

    code = "parse_error"
    exit_code = 2


class ConfigError(ControlError):
    """Profile value has the wrong type or range."""

    code = "config_error"
    exit_code = 2


class InvalidOperation(ControlError):
    """Malformed control or derived operation (e.g. SwapRange with l < 1)."""

    code = "invalid_operation"
    exit_code = 3


class NonUnitary(ControlError):
    """2x2 block violates M†M = I."""

    code = "non_unitary"
    exit_code = 3


class NotNormalized(ControlError):
    """State norm differs from 1 by more than the tolerance."""

    code = "not_normalized"
    exit_code = 3


class EpsilonOutOfRange(ControlError):
    """Transfer accuracy outside (0, 1/3)."""

    code = "epsilon_out_of_range"
    exit_code = 3


class DegenerateInput(ControlError):
    """Zero state where a nonzero one is required."""

    code = "degenerate_input"
    exit_code = 3


class BudgetExceeded(ControlError):
    """Rotation asked to place more amplitude than the staging slot holds."""

    code = "budget_exceeded"
    exit_code = 4


class NotAPermutation(ControlError):
    """Sequence contains a Pair block that is not a permutation matrix."""

    code = "not_a_permutation"
    exit_code = 4


class NotFound(ControlError):
    """Witness search exhausted its depth."""

    code = "not_found"
    exit_code = 5


def error_payload(exc: Exception) -> dict:
    if isinstance(exc, ControlError):
        return {"error": exc.code, "message": str(exc)}
    return {"error": "internal_error", "message": f"{type(exc).__name__}: {exc}"}


def exit_code_for(exc: Exception) -> int:
    if isinstance(exc, ControlError):
        return exc.exit_code
    return 1
