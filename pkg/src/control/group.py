"""
Elements of the group generated by the bilateral shift and one U(2) block.

Sequences are applied left to right: ``ops[0]`` acts on the state first. An
operator product written right-to-left, such as ``U+^n Π U+^-n``, therefore
becomes the word ``[ShiftDown]*n + [Pair(Π)] + [ShiftUp]*n``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import InvalidOperation, NonUnitary, NotAPermutation

UNITARY_TOL = 1e-12
# |W10| or |W00| at or below this is treated as an exact zero of the ZYZ gauge
_GAUGE_TOL = 1e-14


@dataclass(frozen=True)
class PairUnitary:
    """2x2 unitary acting on the coefficients of (e0, e1), identity elsewhere."""

    m00: complex
    m01: complex
    m10: complex
    m11: complex

    def __post_init__(self):
        for name in ("m00", "m01", "m10", "m11"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        deviation = unitarity_deviation(self.matrix())
        if not deviation <= UNITARY_TOL:
            raise NonUnitary(f"Pair block deviates from unitarity by {deviation:.3e}")

    # ---------------- constructors ----------------
    @classmethod
    def identity(cls) -> PairUnitary:
        return cls(1, 0, 0, 1)

    @classmethod
    def swap(cls) -> PairUnitary:
        """The Π block: e0 <-> e1."""
        return cls(0, 1, 1, 0)

    @classmethod
    def phase(cls, z: complex) -> PairUnitary:
        """diag(z, 1) for |z| = 1."""
        return cls(z, 0, 0, 1)

    @classmethod
    def from_matrix(cls, m) -> PairUnitary:
        arr = np.asarray(m, dtype=complex)
        if arr.shape != (2, 2):
            raise NonUnitary(f"Pair block must be 2x2, got shape {arr.shape}")
        return cls(arr[0, 0], arr[0, 1], arr[1, 0], arr[1, 1])

    # ---------------- algebra ----------------
    def matrix(self) -> np.ndarray:
        return np.array([[self.m00, self.m01], [self.m10, self.m11]], dtype=complex)

    def dagger(self) -> PairUnitary:
        return PairUnitary(
            self.m00.conjugate(), self.m10.conjugate(),
            self.m01.conjugate(), self.m11.conjugate(),
        )

    def compose(self, other: PairUnitary) -> PairUnitary:
        """Matrix product self @ other (other acts first)."""
        return PairUnitary.from_matrix(self.matrix() @ other.matrix())

    def apply(self, c0: complex, c1: complex) -> tuple[complex, complex]:
        return (self.m00 * c0 + self.m01 * c1, self.m10 * c0 + self.m11 * c1)

    def permutation(self) -> tuple[int, int] | None:
        """(0, 1) for the identity, (1, 0) for Π, None for anything else."""
        entries = (self.m00, self.m01, self.m10, self.m11)
        for pattern, image in (((1, 0, 0, 1), (0, 1)), ((0, 1, 1, 0), (1, 0))):
            if all(abs(v - p) <= UNITARY_TOL for v, p in zip(entries, pattern)):
                return image
        return None


def unitarity_deviation(m: np.ndarray) -> float:
    """Max entrywise deviation of M†M from the identity."""
    return float(np.max(np.abs(m.conj().T @ m - np.eye(2))))


PI = PairUnitary.swap()


# ---------------- primitive control operations ----------------

@dataclass(frozen=True)
class ShiftUp:
    """U+: e_k -> e_{k+1} (a magnetic kick)."""

    def inverse(self) -> ShiftDown:
        return SHIFT_DOWN


@dataclass(frozen=True)
class ShiftDown:
    """U+^-1: e_k -> e_{k-1}."""

    def inverse(self) -> ShiftUp:
        return SHIFT_UP


@dataclass(frozen=True)
class Pair:
    u: PairUnitary

    def inverse(self) -> Pair:
        return Pair(self.u.dagger())


ControlOp = ShiftUp | ShiftDown | Pair

SHIFT_UP = ShiftUp()
SHIFT_DOWN = ShiftDown()


@dataclass(frozen=True)
class ControlSequence:
    """Word in G(U+, U(2)); index 0 acts first."""

    ops: tuple[ControlOp, ...] = ()

    def __post_init__(self):
        ops = tuple(self.ops)
        for op in ops:
            if not isinstance(op, (ShiftUp, ShiftDown, Pair)):
                raise InvalidOperation(f"Not a control operation: {op!r}")
        object.__setattr__(self, "ops", ops)

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self) -> Iterator[ControlOp]:
        return iter(self.ops)

    def __getitem__(self, i):
        return self.ops[i]

    def __add__(self, other: ControlSequence) -> ControlSequence:
        return ControlSequence(self.ops + tuple(other))

    @property
    def kick_count(self) -> int:
        return sum(1 for op in self.ops if not isinstance(op, Pair))

    @property
    def pair_count(self) -> int:
        return sum(1 for op in self.ops if isinstance(op, Pair))


# ---------------- derived operations ----------------

@dataclass(frozen=True)
class Swap:
    """Π_n: exchanges the coefficients of e_n and e_{n+1}."""

    n: int


@dataclass(frozen=True)
class SwapRange:
    """Π_{k,k+l}: exchanges the coefficients of e_k and e_{k+l}."""

    k: int
    l: int

    def __post_init__(self):
        if self.l < 1:
            raise InvalidOperation(f"SwapRange needs l >= 1, got l={self.l}")


@dataclass(frozen=True)
class PairAt:
    """U(2) block moved to the level pair (n, n+1) by shift conjugation."""

    n: int
    u: PairUnitary


DerivedOp = Swap | SwapRange | PairAt


def shift_run(m: int) -> list[ControlOp]:
    """Net shift by m: m ShiftUp for m > 0, |m| ShiftDown for m < 0."""
    return [SHIFT_UP] * m if m >= 0 else [SHIFT_DOWN] * (-m)


def conjugate_by_shift(n: int, u: PairUnitary) -> list[ControlOp]:
    """U+^n · Pair(u) · U+^-n as a word: the block then acts on levels (n, n+1)."""
    return shift_run(-n) + [Pair(u)] + shift_run(n)


def telescope(ops: Iterable[ControlOp]) -> list[ControlOp]:
    """Merge every maximal run of shifts into its net shift."""
    out: list[ControlOp] = []
    net = 0
    for op in ops:
        match op:
            case ShiftUp():
                net += 1
            case ShiftDown():
                net -= 1
            case Pair():
                out.extend(shift_run(net))
                net = 0
                out.append(op)
    out.extend(shift_run(net))
    return out


def swap_ladder(k: int, l: int) -> list[int]:
    """Indices n of the Π_n factors of Π_{k,k+l}: k, ..., k+l-1, ..., k."""
    return list(range(k, k + l)) + list(range(k + l - 2, k - 1, -1))


def expand_derived(d: DerivedOp, *, telescoped: bool = True) -> ControlSequence:
    match d:
        case Swap(n=n):
            ops = conjugate_by_shift(n, PI)
        case PairAt(n=n, u=u):
            ops = conjugate_by_shift(n, u)
        case SwapRange(k=k, l=l):
            if l < 1:
                raise InvalidOperation(f"SwapRange needs l >= 1, got l={l}")
            ops = [op for n in swap_ladder(k, l) for op in conjugate_by_shift(n, PI)]
        case _:
            raise InvalidOperation(f"Not a derived operation: {d!r}")
    if telescoped:
        ops = telescope(ops)
    return ControlSequence(tuple(ops))


def expand_word(factors: Iterable[DerivedOp]) -> ControlSequence:
    """Concatenate derived ops (first factor acts first) and telescope the seams."""
    ops = [op for d in factors for op in expand_derived(d, telescoped=False)]
    return ControlSequence(tuple(telescope(ops)))


def primitive_count(d: DerivedOp, *, telescoped: bool = True) -> int:
    return len(expand_derived(d, telescoped=telescoped))


def invert_sequence(seq: ControlSequence) -> ControlSequence:
    return ControlSequence(tuple(op.inverse() for op in reversed(seq.ops)))


# ---------------- permutation oracle ----------------

def as_permutation(seq: ControlSequence, window: tuple[int, int]) -> dict[int, int]:
    """
    Index map induced on the window [lo, hi] by a shift/swap word.

    Images may leave the window (a bare ShiftUp maps hi to hi+1). Raises
    NotAPermutation when a Pair block is neither the identity nor Π.
    """
    lo, hi = window
    images = []
    for op in seq:
        if isinstance(op, Pair):
            image = op.u.permutation()
            if image is None:
                raise NotAPermutation(f"Pair block is not a permutation: {op.u.matrix().tolist()}")
            images.append(image)
        else:
            images.append(None)

    # positions are stored relative to the accumulated shift
    offset = 0
    relative = {k: k for k in range(lo, hi + 1)}
    for op, image in zip(seq, images):
        match op:
            case ShiftUp():
                offset += 1
            case ShiftDown():
                offset -= 1
            case Pair():
                if image == (0, 1):
                    continue
                slot0, slot1 = -offset, 1 - offset
                for k, r in relative.items():
                    if r == slot0:
                        relative[k] = slot1
                    elif r == slot1:
                        relative[k] = slot0
    return {k: r + offset for k, r in relative.items()}


def transposition_oracle(k: int, l: int, window: tuple[int, int]) -> dict[int, int]:
    """Compose the adjacent transpositions of Π_{k,k+l} directly on window points."""
    lo, hi = window
    position = {p: p for p in range(lo, hi + 1)}
    for n in swap_ladder(k, l):
        for p, q in position.items():
            if q == n:
                position[p] = n + 1
            elif q == n + 1:
                position[p] = n
    return position


# ---------------- Euler angles ----------------

def rz(phi: float) -> np.ndarray:
    return np.array([[cmath.exp(-0.5j * phi), 0], [0, cmath.exp(0.5j * phi)]], dtype=complex)


def ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _wrap(x: float) -> tuple[float, int]:
    """Reduce x into (-pi, pi]; also return how many 2pi were removed."""
    turns = math.ceil((x - math.pi) / (2 * math.pi))
    return x - 2 * math.pi * turns + 0.0, turns


def zyz_decompose(u: PairUnitary) -> tuple[float, float, float, float]:
    """
    Angles (delta, alpha, theta, beta) with u = e^{i delta} Rz(alpha) Ry(theta) Rz(beta).

    theta is in [0, pi]; alpha, beta, delta in (-pi, pi]. When theta is 0 or pi
    the gauge is fixed by beta = 0.
    """
    if not isinstance(u, PairUnitary):
        u = PairUnitary.from_matrix(u)
    det = u.m00 * u.m11 - u.m01 * u.m10
    delta = cmath.phase(det) / 2
    rot = cmath.exp(-1j * delta)
    w00, w10 = u.m00 * rot, u.m10 * rot
    a, b = abs(w00), abs(w10)

    if b <= _GAUGE_TOL:
        theta, alpha, beta = 0.0, -2 * cmath.phase(w00), 0.0
    elif a <= _GAUGE_TOL:
        theta, alpha, beta = math.pi, 2 * cmath.phase(w10), 0.0
    else:
        theta = 2 * math.atan2(b, a)
        half_sum, half_diff = -cmath.phase(w00), cmath.phase(w10)
        alpha, beta = half_sum + half_diff, half_sum - half_diff

    # Rz(x - 2pi t) = (-1)^t Rz(x): an odd number of turns flips the sign
    alpha, turns_a = _wrap(alpha)
    beta, turns_b = _wrap(beta)
    if (turns_a + turns_b) % 2:
        delta += math.pi
    delta, _ = _wrap(delta)
    return delta, alpha, theta, beta


def zyz_compose(delta: float, alpha: float, theta: float, beta: float) -> PairUnitary:
    return PairUnitary.from_matrix(cmath.exp(1j * delta) * (rz(alpha) @ ry(theta) @ rz(beta)))
