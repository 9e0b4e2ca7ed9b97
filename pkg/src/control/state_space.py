"""
Exact sparse vectors of l2(Z) and the action of control words on them.

States are immutable; every operation returns a new state. Amplitudes below
PRUNE_THRESHOLD are never stored.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterator, Mapping

from .errors import DegenerateInput
from .group import ControlOp, ControlSequence, Pair, ShiftDown, ShiftUp

PRUNE_THRESHOLD = 1e-15
NORMALIZED_TOL = 1e-12


@dataclass(frozen=True)
class SparseState:
    entries: Mapping[int, complex]

    def __post_init__(self):
        pruned = {
            int(k): complex(v)
            for k, v in self.entries.items()
            if abs(v) >= PRUNE_THRESHOLD
        }
        object.__setattr__(self, "entries", MappingProxyType(pruned))

    def __hash__(self) -> int:
        return hash(frozenset(self.entries.items()))

    def __getitem__(self, k: int) -> complex:
        return self.entries.get(k, 0j)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[int, complex]]:
        return iter(sorted(self.entries.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v:.6g}" for k, v in self)
        return f"SparseState({{{body}}})"

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.entries)

    def is_normalized(self, tol: float = NORMALIZED_TOL) -> bool:
        return abs(norm(self) - 1.0) <= tol


def empty_state() -> SparseState:
    return SparseState({})


def basis_state(k: int) -> SparseState:
    return SparseState({k: 1.0})


def inner(a: SparseState, b: SparseState) -> complex:
    """(a, b) = sum_k conj(a_k) b_k, conjugate-linear in the first argument."""
    small, large = (a.entries, b.entries) if len(a) <= len(b) else (b.entries, a.entries)
    total = 0j
    for k in small:
        if k in large:
            total += a.entries[k].conjugate() * b.entries[k]
    return total


def norm(a: SparseState) -> float:
    return math.sqrt(math.fsum(abs(v) ** 2 for v in a.entries.values()))


def scale(a: SparseState, c: complex) -> SparseState:
    return SparseState({k: c * v for k, v in a.entries.items()})


def add(a: SparseState, b: SparseState) -> SparseState:
    out = dict(a.entries)
    for k, v in b.entries.items():
        out[k] = out.get(k, 0j) + v
    return SparseState(out)


def subtract(a: SparseState, b: SparseState) -> SparseState:
    return add(a, scale(b, -1.0))


def distance(a: SparseState, b: SparseState) -> float:
    return norm(subtract(a, b))


def fidelity(target: SparseState, state: SparseState) -> float:
    return abs(inner(target, state))


def normalize(a: SparseState) -> SparseState:
    n = norm(a)
    if n == 0.0:
        raise DegenerateInput("Cannot normalize the zero state")
    return scale(a, 1.0 / n)


def truncate(a: SparseState, n: int) -> tuple[SparseState, float]:
    """Restriction of a to [-n, n] and the norm of that restriction."""
    if n < 0:
        raise ValueError(f"window half-width must be nonnegative, got {n}")
    window = SparseState({k: v for k, v in a.entries.items() if -n <= k <= n})
    return window, norm(window)


def tail_norm(a: SparseState, n: int) -> float:
    """Norm of the part of a outside [-n, n]."""
    return math.sqrt(math.fsum(abs(v) ** 2 for k, v in a.entries.items() if abs(k) > n))


def apply_op(a: SparseState, op: ControlOp) -> SparseState:
    match op:
        case ShiftUp():
            return SparseState({k + 1: v for k, v in a.entries.items()})
        case ShiftDown():
            return SparseState({k - 1: v for k, v in a.entries.items()})
        case Pair(u=u):
            out = dict(a.entries)
            d0, d1 = u.apply(out.pop(0, 0j), out.pop(1, 0j))
            out[0], out[1] = d0, d1
            return SparseState(out)
    raise TypeError(f"Not a control operation: {op!r}")


def apply_sequence(a: SparseState, seq: ControlSequence) -> SparseState:
    """
    Fold apply_op over seq, first element first.

    Shifts only move the frame: amplitudes are stored relative to the
    accumulated shift and a Pair acts on the slots that currently sit at 0, 1.
    """
    stored = dict(a.entries)
    offset = 0
    for op in seq:
        match op:
            case ShiftUp():
                offset += 1
            case ShiftDown():
                offset -= 1
            case Pair(u=u):
                slot0, slot1 = -offset, 1 - offset
                d0, d1 = u.apply(stored.pop(slot0, 0j), stored.pop(slot1, 0j))
                if abs(d0) >= PRUNE_THRESHOLD:
                    stored[slot0] = d0
                if abs(d1) >= PRUNE_THRESHOLD:
                    stored[slot1] = d1
            case _:
                raise TypeError(f"Not a control operation: {op!r}")
    return SparseState({k + offset: v for k, v in stored.items()})
