"""
Charged plane rotator: level bookkeeping and pulse compilation.

H0 = -d^2/dphi^2 has eigenstates e^{ik phi} with energies k^2. A magnetic
kick realizes U+ = e^{i phi}; a resonant pulse at the transition (n, n+1)
realizes a U(2) block on that pair. Pulses are logical records only.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import ClassVar, Iterable, Iterator, Literal

from .errors import InvalidOperation
from .group import (
    SHIFT_DOWN,
    SHIFT_UP,
    ControlOp,
    ControlSequence,
    Pair,
    PairAt,
    PairUnitary,
    ShiftDown,
    ShiftUp,
    expand_derived,
    zyz_compose,
    zyz_decompose,
)

Strategy = Literal["peephole", "frame"]


def level_energy(k: int) -> float:
    return float(k * k)


def transition_frequency(n: int) -> float:
    """|E_{n+1} - E_n| = |2n + 1| (hbar = 1)."""
    return float(abs((n + 1) ** 2 - n**2))


@dataclass(frozen=True)
class Kick:
    direction: int
    kind: ClassVar[str] = "kick"

    def __post_init__(self):
        if self.direction not in (1, -1):
            raise InvalidOperation(f"kick direction must be +1 or -1, got {self.direction}")


@dataclass(frozen=True)
class ResonantPair:
    pair_index: int
    angles: tuple[float, float, float, float]
    frequency: float = field(init=False)
    kind: ClassVar[str] = "resonant_pair"

    def __post_init__(self):
        angles = tuple(float(x) for x in self.angles)
        if len(angles) != 4:
            raise InvalidOperation(f"resonant pulse needs 4 angles, got {len(angles)}")
        if not 0.0 <= angles[2] <= math.pi:
            raise InvalidOperation(f"theta must lie in [0, pi], got {angles[2]}")
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "frequency", transition_frequency(self.pair_index))

    @classmethod
    def from_unitary(cls, pair_index: int, u: PairUnitary) -> ResonantPair:
        return cls(pair_index, zyz_decompose(u))

    def unitary(self) -> PairUnitary:
        return zyz_compose(*self.angles)


Pulse = Kick | ResonantPair


@dataclass(frozen=True)
class PulseSchedule:
    pulses: tuple[Pulse, ...]

    def __len__(self) -> int:
        return len(self.pulses)

    def __iter__(self) -> Iterator[Pulse]:
        return iter(self.pulses)

    @property
    def kick_count(self) -> int:
        return sum(1 for p in self.pulses if isinstance(p, Kick))

    @property
    def frequency_collisions(self) -> dict[float, tuple[int, ...]]:
        """Frequencies driven at more than one level pair (the E_k = E_-k degeneracy)."""
        by_frequency: dict[float, set[int]] = defaultdict(set)
        for p in self.pulses:
            if isinstance(p, ResonantPair):
                by_frequency[p.frequency].add(p.pair_index)
        return {
            f: tuple(sorted(indices))
            for f, indices in sorted(by_frequency.items())
            if len(indices) > 1
        }


def _direction(op: ControlOp) -> int:
    return 1 if isinstance(op, ShiftUp) else -1


def _run_length(ops: tuple[ControlOp, ...], start: int, kind: type) -> int:
    end = start
    while end < len(ops) and isinstance(ops[end], kind):
        end += 1
    return end - start


def _compile_peephole(ops: tuple[ControlOp, ...]) -> list[Pulse]:
    out: list[Pulse] = []
    i = 0
    while i < len(ops):
        op = ops[i]
        if isinstance(op, Pair):
            out.append(ResonantPair.from_unitary(0, op.u))
            i += 1
            continue
        direction = _direction(op)
        run = _run_length(ops, i, type(op))
        j = i + run
        if j < len(ops) and isinstance(ops[j], Pair):
            opposite = ShiftDown if direction > 0 else ShiftUp
            matched = min(run, _run_length(ops, j + 1, opposite))
            if matched:
                out.extend(Kick(direction) for _ in range(run - matched))
                # [Down*n, Pair, Up*n] acts on levels (n, n+1)
                out.append(ResonantPair.from_unitary(-direction * matched, ops[j].u))
                i = j + 1 + matched
                continue
        out.extend(Kick(direction) for _ in range(run))
        i = j
    return out


def _compile_frame(ops: tuple[ControlOp, ...]) -> list[Pulse]:
    out: list[Pulse] = []
    offset = 0
    for op in ops:
        match op:
            case ShiftUp():
                offset += 1
            case ShiftDown():
                offset -= 1
            case Pair(u=u):
                out.append(ResonantPair.from_unitary(-offset, u))
    direction = 1 if offset > 0 else -1
    out.extend(Kick(direction) for _ in range(abs(offset)))
    return out


def compile_pulses(seq: ControlSequence, strategy: Strategy = "peephole") -> PulseSchedule:
    """
    "peephole" keeps kicks in place and folds each local conjugation pattern
    into one resonant pulse; "frame" tracks the accumulated shift, emits every
    block as a lab-frame resonant pulse and the net kicks at the end.
    """
    if strategy == "peephole":
        pulses = _compile_peephole(seq.ops)
    elif strategy == "frame":
        pulses = _compile_frame(seq.ops)
    else:
        raise InvalidOperation(f"unknown compile strategy: {strategy!r}")
    return PulseSchedule(tuple(pulses))


def expand_pulses(pulses: Iterable[Pulse]) -> ControlSequence:
    """Re-expand a schedule into primitives."""
    ops: list[ControlOp] = []
    for p in pulses:
        if isinstance(p, Kick):
            ops.append(SHIFT_UP if p.direction > 0 else SHIFT_DOWN)
        else:
            ops.extend(expand_derived(PairAt(p.pair_index, p.unitary()), telescoped=False))
    return ControlSequence(tuple(ops))
