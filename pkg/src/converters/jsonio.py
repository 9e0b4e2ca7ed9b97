"""
JSON formats for states, sequences, transfer plans and pulse schedules.

Floats are always written with 17 significant digits so that reruns with the
same inputs produce byte-identical files.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from ..control.errors import ControlError, ParseError
from ..control.group import (
    SHIFT_DOWN,
    SHIFT_UP,
    ControlOp,
    ControlSequence,
    Pair,
    PairUnitary,
    ShiftDown,
    ShiftUp,
    SwapRange,
)
from ..control.rotator import Kick, Pulse, PulseSchedule, ResonantPair
from ..control.state_space import SparseState
from ..control.synthesis import TransferPlan, Witness

# ---------------- emitter ----------------


def _float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite float {x!r}")
    text = format(x + 0.0, ".17g")  # no "-0"
    if "." not in text and "e" not in text:
        text += ".0"
    return text


def _scalar(obj: Any) -> str:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _emit(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {_emit(v, indent, level + 1)}" for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_scalar(v) for v in obj) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    return _scalar(obj)


def dumps(obj: Any, indent: int = 2) -> str:
    return _emit(obj, indent, 0) + "\n"


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e})") from e
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror or e}") from e


def write_json(path: str | Path, obj: Any) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(dumps(obj), encoding="utf-8")
    return out


def _number(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{what} must be a number, got {value!r}")
    try:
        x = float(value)
    except OverflowError:
        x = math.inf
    if not math.isfinite(x):
        raise ParseError(f"{what} must be finite, got {value!r}")
    return x


def _integer(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer, got {value!r}")
    return value


def _complex(pair: Any, what: str) -> complex:
    if not isinstance(pair, list) or len(pair) != 2:
        raise ParseError(f"{what} must be a [re, im] pair, got {pair!r}")
    return complex(_number(pair[0], what), _number(pair[1], what))


# ---------------- states ----------------


def state_to_json(state: SparseState) -> dict:
    return {"entries": [{"k": k, "re": v.real, "im": v.imag} for k, v in state]}


def state_from_json(obj: Any) -> SparseState:
    if not isinstance(obj, dict) or not isinstance(obj.get("entries"), list):
        raise ParseError('state must be an object with an "entries" list')
    entries: dict[int, complex] = {}
    for i, item in enumerate(obj["entries"]):
        if not isinstance(item, dict):
            raise ParseError(f"entries[{i}] must be an object")
        k = _integer(item.get("k"), f"entries[{i}].k")
        if k in entries:
            raise ParseError(f"duplicate index k={k} in state entries")
        entries[k] = complex(
            _number(item.get("re", 0.0), f"entries[{i}].re"),
            _number(item.get("im", 0.0), f"entries[{i}].im"),
        )
    return SparseState(entries)


# ---------------- sequences ----------------


def op_to_json(op: ControlOp) -> dict:
    match op:
        case ShiftUp():
            return {"op": "shift_up"}
        case ShiftDown():
            return {"op": "shift_down"}
        case Pair(u=u):
            return {"op": "pair", "u": [[z.real, z.imag] for z in (u.m00, u.m01, u.m10, u.m11)]}
    raise TypeError(f"Not a control operation: {op!r}")


def sequence_to_json(seq: ControlSequence) -> list:
    return [op_to_json(op) for op in seq]


def op_from_json(obj: Any, where: str = "op") -> ControlOp:
    if not isinstance(obj, dict):
        raise ParseError(f"{where} must be an object")
    kind = obj.get("op")
    if kind == "shift_up":
        return SHIFT_UP
    if kind == "shift_down":
        return SHIFT_DOWN
    if kind == "pair":
        u = obj.get("u")
        if not isinstance(u, list) or len(u) != 4:
            raise ParseError(f'{where}.u must list four [re, im] entries in row-major order')
        try:
            return Pair(PairUnitary(*(_complex(z, f"{where}.u") for z in u)))
        except ControlError as e:
            raise ParseError(f"{where}: {e}") from e
    raise ParseError(f"{where}: unknown op {kind!r}")


def sequence_from_json(obj: Any) -> ControlSequence:
    """Accept a bare sequence list, or any object carrying one under "sequence"."""
    if isinstance(obj, dict) and "sequence" in obj:
        obj = obj["sequence"]
    if not isinstance(obj, list):
        raise ParseError("sequence must be a JSON list of operations")
    ops = (op_from_json(item, f"sequence[{i}]") for i, item in enumerate(obj))
    return ControlSequence(tuple(ops))


# ---------------- transfer plans ----------------


def plan_to_json(plan: TransferPlan) -> dict:
    return {
        "epsilon": plan.epsilon,
        "N": plan.N,
        "alpha": plan.alpha,
        "beta": plan.beta,
        "certified_bound": plan.certified_bound,
        "sequence": sequence_to_json(plan.sequence),
    }


def plan_from_json(obj: Any) -> TransferPlan:
    if not isinstance(obj, dict):
        raise ParseError("transfer plan must be a JSON object")
    required = ("epsilon", "N", "alpha", "beta", "certified_bound", "sequence")
    missing = [k for k in required if k not in obj]
    if missing:
        raise ParseError(f"transfer plan missing keys: {', '.join(missing)}")
    return TransferPlan(
        epsilon=_number(obj["epsilon"], "epsilon"),
        N=_integer(obj["N"], "N"),
        alpha=_number(obj["alpha"], "alpha"),
        beta=_number(obj["beta"], "beta"),
        sequence=sequence_from_json(obj["sequence"]),
        certified_bound=_number(obj["certified_bound"], "certified_bound"),
    )


# ---------------- pulse schedules ----------------


def pulse_to_json(p: Pulse) -> dict:
    if isinstance(p, Kick):
        return {"kind": "kick", "direction": p.direction}
    return {
        "kind": "resonant_pair",
        "pair_index": p.pair_index,
        "frequency": p.frequency,
        "angles": list(p.angles),
    }


def schedule_to_json(schedule: PulseSchedule) -> dict:
    return {"pulses": [pulse_to_json(p) for p in schedule]}


def schedule_from_json(obj: Any) -> PulseSchedule:
    if not isinstance(obj, dict) or not isinstance(obj.get("pulses"), list):
        raise ParseError('schedule must be an object with a "pulses" list')
    pulses: list[Pulse] = []
    for i, item in enumerate(obj["pulses"]):
        where = f"pulses[{i}]"
        if not isinstance(item, dict):
            raise ParseError(f"{where} must be an object")
        try:
            if item.get("kind") == "kick":
                pulses.append(Kick(_integer(item.get("direction"), f"{where}.direction")))
            elif item.get("kind") == "resonant_pair":
                angles = item.get("angles")
                if not isinstance(angles, list):
                    raise ParseError(f"{where}.angles must be a list")
                pulse = ResonantPair(
                    _integer(item.get("pair_index"), f"{where}.pair_index"),
                    tuple(_number(x, f"{where}.angles") for x in angles),
                )
                if "frequency" in item and _number(item["frequency"], where) != pulse.frequency:
                    raise ParseError(f"{where}: frequency does not match |2n+1|")
                pulses.append(pulse)
            else:
                raise ParseError(f"{where}: unknown kind {item.get('kind')!r}")
        except ParseError:
            raise
        except ControlError as e:
            raise ParseError(f"{where}: {e}") from e
    return PulseSchedule(tuple(pulses))


# ---------------- witnesses ----------------


def witness_to_json(witness: Witness) -> dict:
    """Only the expanded word is authoritative; transpositions are informational."""
    return {
        "transpositions": [
            [f.k, f.k + f.l] for f in witness.factors if isinstance(f, SwapRange)
        ],
        "inner": {"re": witness.overlap.real, "im": witness.overlap.imag},
        "sequence": sequence_to_json(witness.sequence),
    }
