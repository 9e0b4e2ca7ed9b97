"""Seeded random states, unitaries and words for the invariant suite and tests."""
from __future__ import annotations

import numpy as np

from .group import SHIFT_DOWN, SHIFT_UP, PI, ControlOp, ControlSequence, Pair, PairUnitary
from .state_space import SparseState, inner, normalize, scale, subtract


def random_unitary(rng: np.random.Generator) -> PairUnitary:
    """Haar-distributed U(2) element (QR of a complex Gaussian, phases fixed)."""
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return PairUnitary.from_matrix(q * (d / np.abs(d)))


def random_state(
    rng: np.random.Generator, half_width: int, *, density: float = 1.0
) -> SparseState:
    """Normalized state with support in [-half_width, half_width] and random phases."""
    indices = np.arange(-half_width, half_width + 1)
    while True:
        keep = rng.random(indices.size) < density
        if keep.any():
            break
    moduli = rng.random(indices.size) + 0.05
    phases = np.exp(2j * np.pi * rng.random(indices.size))
    entries = {int(k): complex(m * p) for k, m, p, on in zip(indices, moduli, phases, keep) if on}
    return normalize(SparseState(entries))


def geometric_state(
    rng: np.random.Generator, ratio: float = 0.5, *, span: int = 40, center: int = 0
) -> SparseState:
    """Amplitudes proportional to ratio^|k - center| with random phases, cut at span."""
    entries = {}
    for k in range(center - span, center + span + 1):
        phase = np.exp(2j * np.pi * rng.random())
        entries[k] = complex(ratio ** abs(k - center) * phase)
    return normalize(SparseState(entries))


def orthogonal_partner(rng: np.random.Generator, a: SparseState, half_width: int) -> SparseState:
    """Random normalized b with (b, a) = 0 (one Gram-Schmidt step)."""
    while True:
        b = random_state(rng, half_width, density=rng.uniform(0.3, 1.0))
        b = subtract(b, scale(a, inner(a, b)))
        if len(b) and sum(abs(v) ** 2 for v in b.entries.values()) > 1e-6:
            return normalize(b)


def random_sequence(
    rng: np.random.Generator, length: int, *, permutation_only: bool = False
) -> ControlSequence:
    ops: list[ControlOp] = []
    for choice in rng.integers(0, 3, size=length):
        if choice == 0:
            ops.append(SHIFT_UP)
        elif choice == 1:
            ops.append(SHIFT_DOWN)
        else:
            ops.append(Pair(PI if permutation_only else random_unitary(rng)))
    return ControlSequence(tuple(ops))
