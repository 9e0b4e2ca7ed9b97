"""
Constructive synthesis over G(U+, U(2)).

- plan_staircase / synthesize_from_e0: load a terminating normalized target
  from e0 one amplitude at a time (rotation on {e0, e1}, then a swap network).
- synthesize_transfer: route any state to any other through the pivot
  alpha * e0, with a certified distance.
- density_witness: a permutation word g with (b, g a) != 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    BudgetExceeded,
    DegenerateInput,
    EpsilonOutOfRange,
    InvalidOperation,
    NotFound,
    NotNormalized,
)
from .group import (
    ControlSequence,
    DerivedOp,
    Pair,
    PairUnitary,
    SwapRange,
    expand_derived,
    expand_word,
    invert_sequence,
)
from .state_space import (
    PRUNE_THRESHOLD,
    SparseState,
    apply_sequence,
    distance,
    inner,
    norm,
    scale,
    tail_norm,
    truncate,
)

BUDGET_TOL = 1e-12
NORMALIZATION_TOL = 1e-10
WITNESS_TOL = 1e-12
DEFAULT_MAX_DEPTH = 3


@dataclass(frozen=True)
class StaircaseStep:
    """One composite g_i: rotate on {e0, e1}, then route e1 to the destination."""

    destination: int
    rotation: PairUnitary
    swap: DerivedOp | None
    residual: float

    def sequence(self) -> ControlSequence:
        seq = ControlSequence((Pair(self.rotation),))
        if self.swap is not None:
            seq = seq + expand_derived(self.swap)
        return seq


@dataclass(frozen=True)
class TransferPlan:
    epsilon: float
    N: int
    alpha: float
    beta: float
    sequence: ControlSequence
    certified_bound: float

    def simulate_distance(self, a: SparseState, b: SparseState) -> float:
        return distance(b, apply_sequence(a, self.sequence))


@dataclass(frozen=True)
class Witness:
    factors: tuple[DerivedOp, ...]
    sequence: ControlSequence
    overlap: complex


def place_rotation(x: complex, target: complex) -> PairUnitary:
    """
    V with V (x, 0)^T = (x', target)^T, x' = sqrt(|x|^2 - |target|^2) >= 0.

    Returns the identity for a zero target on a real nonnegative x, otherwise
    the reflection [[c0, conj(c1)], [c1, -conj(c0)]], which is exactly Π for
    x = target = 1.
    """
    x, target = complex(x), complex(target)
    budget = abs(x)
    if abs(target) > budget + BUDGET_TOL:
        raise BudgetExceeded(
            f"cannot place |{abs(target):.6g}| from a staging amplitude of |{budget:.6g}|"
        )
    if target == 0 and x.imag == 0 and x.real >= 0:
        return PairUnitary.identity()
    if budget == 0:
        return PairUnitary.identity()
    x_prime = math.sqrt(max(0.0, budget**2 - abs(target) ** 2))
    r = math.hypot(x_prime, abs(target))
    unit = x / budget
    c0, c1 = x_prime / (r * unit), target / (r * unit)
    return PairUnitary(c0, c1.conjugate(), c1, -c0.conjugate())


def staging_route(destination: int) -> DerivedOp | None:
    """Swap network taking the e1 coefficient to the destination."""
    if destination >= 2:
        return SwapRange(1, destination - 1)
    if destination <= -1:
        return SwapRange(destination, 1 - destination)
    return None


def placement_order(n: int) -> list[int]:
    # e1 is the staging slot, so it is filled last
    return [*range(-n, 0), *range(n, 1, -1), 1]


def _require_normalized(a: SparseState, label: str) -> float:
    n = norm(a)
    if n == 0.0:
        raise DegenerateInput(f"{label} is the zero state")
    if abs(n - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"{label} has norm {n:.12g}")
    return n


def plan_staircase(target: SparseState) -> tuple[StaircaseStep, ...]:
    n = _require_normalized(target, "target")
    target = scale(target, 1.0 / n)
    half_width = max(abs(k) for k in target.support)

    steps: list[StaircaseStep] = []
    x = 1.0
    for d in placement_order(half_width):
        amplitude = target[d]
        if amplitude == 0:
            continue
        rotation = place_rotation(x, amplitude)
        x = math.sqrt(max(0.0, x * x - abs(amplitude) ** 2))
        steps.append(StaircaseStep(d, rotation, staging_route(d), x))

    a0 = target[0]
    if a0 != 0:
        phase = a0 / abs(a0)
        if abs(phase - 1) > PRUNE_THRESHOLD:
            steps.append(StaircaseStep(0, PairUnitary.phase(phase), None, x))
    return tuple(steps)


def synthesize_from_e0(target: SparseState) -> ControlSequence:
    return ControlSequence(tuple(op for step in plan_staircase(target) for op in step.sequence()))


def choose_window(a: SparseState, b: SparseState, epsilon: float) -> tuple[int, float, float]:
    """
    Smallest N whose retained norms exceed 1 - epsilon and whose discarded
    tails are at most epsilon. Returns (N, alpha, beta).
    """
    limit = max(abs(k) for k in a.support | b.support)
    for n in range(limit + 1):
        if tail_norm(a, n) > epsilon or tail_norm(b, n) > epsilon:
            continue
        _, alpha = truncate(a, n)
        _, beta = truncate(b, n)
        if alpha > 1 - epsilon and beta > 1 - epsilon:
            return n, alpha, beta
    _, alpha = truncate(a, limit)
    _, beta = truncate(b, limit)
    return limit, alpha, beta


def synthesize_transfer(a: SparseState, b: SparseState, epsilon: float) -> TransferPlan:
    if not 0 < epsilon < 1 / 3:
        raise EpsilonOutOfRange(f"epsilon must lie in (0, 1/3), got {epsilon}")
    _require_normalized(a, "initial state")
    _require_normalized(b, "target state")

    n, alpha, beta = choose_window(a, b, epsilon)
    a_window, _ = truncate(a, n)
    b_window, _ = truncate(b, n)

    # g sends the window of a to alpha e0; g' sends alpha e0 to (alpha/beta) b_window
    g = invert_sequence(synthesize_from_e0(scale(a_window, 1.0 / alpha)))
    g_prime = synthesize_from_e0(scale(b_window, 1.0 / beta))
    return TransferPlan(
        epsilon=epsilon,
        N=n,
        alpha=alpha,
        beta=beta,
        sequence=g + g_prime,
        certified_bound=2 * epsilon + abs(1 - alpha / beta),
    )


# ---------------- density witnesses ----------------

def paired_exchanges(
    k: int, l: int, m: int, n: int
) -> tuple[tuple[SwapRange, ...], tuple[SwapRange, ...]]:
    """
    The words g = (k m)(l n) and g' = (k n)(l m) on four distinct indices.

    For any a, b: (b, g a) - (b, g' a)
      = conj(b_m - b_n) (a_k - a_l) + conj(b_k - b_l) (a_m - a_n).
    """
    if len({k, l, m, n}) != 4:
        raise InvalidOperation(f"paired exchange needs four distinct indices, got {(k, l, m, n)}")
    g = (_transposition(k, m), _transposition(l, n))
    g_prime = (_transposition(k, n), _transposition(l, m))
    return g, g_prime


def _transposition(i: int, j: int) -> SwapRange:
    lo, hi = min(i, j), max(i, j)
    return SwapRange(lo, hi - lo)


def _witness(a: SparseState, b: SparseState, factors: tuple[DerivedOp, ...]) -> Witness:
    seq = expand_word(factors)
    return Witness(factors, seq, inner(b, apply_sequence(a, seq)))


def _basis_witness(a: SparseState, b: SparseState) -> Witness | None:
    (k,) = b.support
    weight = abs(b[k])
    reach = max(abs(j - k) for j in a.support)
    for l in range(reach + 1):
        if abs(a[k + l]) * weight > WITNESS_TOL:
            return _witness(a, b, (SwapRange(k, l),) if l else ())
        if abs(a[k - l]) * weight > WITNESS_TOL:
            return _witness(a, b, (SwapRange(k - l, l),) if l else ())
    return None


def _overlap(b: SparseState, amplitudes: dict[int, complex]) -> complex:
    return sum((v.conjugate() * amplitudes.get(k, 0j) for k, v in b.entries.items()), 0j)


def density_witness(a: SparseState, b: SparseState, max_depth: int = DEFAULT_MAX_DEPTH) -> Witness:
    """
    A word over {ShiftUp, ShiftDown, Pair(Π)} with |(b, g a)| > WITNESS_TOL.

    Breadth-first over products of transpositions on the hull of both supports
    widened by one empty slot on each side. NotFound at small depth means the
    depth should be raised, not that no witness exists.
    """
    if not a.support or not b.support:
        raise DegenerateInput("density witness needs nonzero a and b")
    if max_depth < 1:
        raise InvalidOperation(f"max_depth must be positive, got {max_depth}")

    if len(b) == 1:
        found = _basis_witness(a, b)
        if found is not None:
            return found
    if abs(inner(b, a)) > WITNESS_TOL:
        return Witness((), ControlSequence(), inner(b, a))

    points = a.support | b.support
    slots = range(min(points) - 1, max(points) + 2)
    moves = [(i, j) for i, j in combinations(slots, 2)]

    start = dict(a.entries)
    seen = {frozenset(start.items())}
    frontier: list[tuple[tuple[tuple[int, int], ...], dict[int, complex]]] = [((), start)]
    for _depth in range(max_depth):
        next_frontier = []
        for word, amplitudes in frontier:
            for i, j in moves:
                moved = dict(amplitudes)
                vi, vj = moved.pop(i, None), moved.pop(j, None)
                if vi is not None:
                    moved[j] = vi
                if vj is not None:
                    moved[i] = vj
                key = frozenset(moved.items())
                if key in seen:
                    continue
                seen.add(key)
                if abs(_overlap(b, moved)) > WITNESS_TOL:
                    return _witness(a, b, tuple(_transposition(p, q) for p, q in (*word, (i, j))))
                next_frontier.append(((*word, (i, j)), moved))
        frontier = next_frontier
    raise NotFound(f"no witness within depth {max_depth}; raise --max-depth")
