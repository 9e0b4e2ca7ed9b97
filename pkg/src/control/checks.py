"""
Property suite behind ``rotctl selfcheck``.

Each check draws from its own child of the run seed, so reports are
identical whatever the worker count and completion order.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .group import (
    SwapRange,
    as_permutation,
    expand_derived,
    expand_word,
    invert_sequence,
    transposition_oracle,
    zyz_compose,
    zyz_decompose,
)
from .rotator import (
    ResonantPair,
    compile_pulses,
    expand_pulses,
    level_energy,
    transition_frequency,
)
from .sampling import (
    geometric_state,
    orthogonal_partner,
    random_sequence,
    random_state,
    random_unitary,
)
from .state_space import apply_sequence, basis_state, distance, fidelity, inner, norm
from .synthesis import (
    WITNESS_TOL,
    density_witness,
    paired_exchanges,
    plan_staircase,
    synthesize_from_e0,
    synthesize_transfer,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    trials: int
    passed: bool
    worst: float
    limit: float

    def to_dict(self) -> dict:
        return asdict(self)


CheckFn = Callable[[np.random.Generator, bool], CheckResult]


def _trials(full: int, quick: bool) -> int:
    return max(1, full // 10) if quick else full


def check_swap_range_oracle(rng: np.random.Generator, quick: bool) -> CheckResult:
    window = (-20, 20)
    mismatches = 0
    trials = 0
    for k in range(-6, 7):
        for l in range(1, 13):
            trials += 1
            induced = as_permutation(expand_derived(SwapRange(k, l)), window)
            expected = {p: p for p in range(window[0], window[1] + 1)}
            expected[k], expected[k + l] = k + l, k
            if induced != transposition_oracle(k, l, window) or induced != expected:
                mismatches += 1
    return CheckResult("swap_range_oracle", trials, mismatches == 0, float(mismatches), 0.0)


def check_staircase_exactness(rng: np.random.Generator, quick: bool) -> CheckResult:
    trials = _trials(1000, quick)
    worst = 0.0
    ok = True
    for _ in range(trials):
        half_width = int(rng.integers(1, 9))
        target = random_state(rng, half_width, density=rng.uniform(0.2, 1.0))
        steps = plan_staircase(target)
        reached = apply_sequence(basis_state(0), synthesize_from_e0(target))
        worst = max(worst, 1.0 - fidelity(target, reached))
        ok &= len(steps) <= 2 * half_width + 1
    return CheckResult("staircase_exactness", trials, ok and worst <= 1e-10, worst, 1e-10)


def check_transfer_bound(rng: np.random.Generator, quick: bool) -> CheckResult:
    trials = _trials(200, quick)
    worst = -math.inf
    ok = True
    count = 0
    for _ in range(trials):
        a = geometric_state(rng, float(rng.uniform(0.3, 0.8)), span=30)
        b = geometric_state(rng, float(rng.uniform(0.3, 0.8)), span=30)
        for epsilon in (0.3, 0.1, 0.03, 0.01):
            count += 1
            plan = synthesize_transfer(a, b, epsilon)
            gap = plan.simulate_distance(a, b) - plan.certified_bound
            worst = max(worst, gap)
            ok &= gap <= 0 and plan.certified_bound <= 3 * epsilon
    return CheckResult("transfer_bound", count, ok, worst, 0.0)


def check_unitarity(rng: np.random.Generator, quick: bool) -> CheckResult:
    trials = 50 if not quick else 5
    length = 10_000 if not quick else 1_000
    worst = 0.0
    for _ in range(trials):
        a = random_state(rng, 4)
        drift = abs(norm(apply_sequence(a, random_sequence(rng, length))) - norm(a))
        worst = max(worst, drift)
    limit = 1e-12 * max(1.0, length / 10_000)
    return CheckResult("unitarity", trials, worst <= limit, worst, limit)


def check_inverse_round_trip(rng: np.random.Generator, quick: bool) -> CheckResult:
    trials = _trials(100, quick)
    worst = 0.0
    for _ in range(trials):
        a = random_state(rng, 3)
        seq = random_sequence(rng, 100)
        back = apply_sequence(apply_sequence(a, seq), invert_sequence(seq))
        worst = max(worst, distance(a, back))
    return CheckResult("inverse_round_trip", trials, worst <= 1e-12, worst, 1e-12)


def check_density_witness(rng: np.random.Generator, quick: bool) -> CheckResult:
    trials = _trials(500, quick)
    ok = True
    worst = math.inf
    for t in range(trials):
        a = random_state(rng, 4, density=rng.uniform(0.2, 1.0))
        if t % 3 == 0:
            k = int(rng.integers(-4, 5))
            b = basis_state(k)
            found = density_witness(a, b, max_depth=3)
            expected = next(
                (a[k + s] for l in range(9) for s in (l, -l) if abs(a[k + s]) > WITNESS_TOL),
                0j,
            )
            ok &= abs(found.overlap - expected) <= 1e-13
        else:
            b = orthogonal_partner(rng, a, 4) if t % 3 == 1 else random_state(rng, 4)
            found = density_witness(a, b, max_depth=3)
        ok &= len(found.factors) <= 3
        worst = min(worst, abs(inner(b, apply_sequence(a, found.sequence))))
    return CheckResult("density_witness", trials, ok and worst > WITNESS_TOL, worst, WITNESS_TOL)


def check_paired_exchanges(rng: np.random.Generator, quick: bool) -> CheckResult:
    trials = _trials(100, quick)
    worst = 0.0
    for _ in range(trials):
        a, b = random_state(rng, 4), random_state(rng, 4)
        k, l, m, n = (int(x) for x in rng.choice(np.arange(-4, 5), size=4, replace=False))
        g, g_prime = paired_exchanges(k, l, m, n)
        lhs = inner(b, apply_sequence(a, expand_word(g))) - inner(
            b, apply_sequence(a, expand_word(g_prime))
        )
        rhs = (b[m] - b[n]).conjugate() * (a[k] - a[l]) + (b[k] - b[l]).conjugate() * (
            a[m] - a[n]
        )
        worst = max(worst, abs(lhs - rhs))
    return CheckResult("paired_exchanges", trials, worst <= 1e-13, worst, 1e-13)


def check_zyz_reconstruction(rng: np.random.Generator, quick: bool) -> CheckResult:
    trials = _trials(1000, quick)
    worst = 0.0
    for _ in range(trials):
        u = random_unitary(rng)
        rebuilt = zyz_compose(*zyz_decompose(u))
        worst = max(worst, float(np.max(np.abs(rebuilt.matrix() - u.matrix()))))
    return CheckResult("zyz_reconstruction", trials, worst <= 1e-12, worst, 1e-12)


def check_pulse_compilation(rng: np.random.Generator, quick: bool) -> CheckResult:
    trials = _trials(100, quick)
    probes = [random_state(rng, 3) for _ in range(10)]
    worst = 0.0
    ok = level_energy(3) == 9.0 and transition_frequency(0) == 1.0
    for _ in range(trials):
        seq = random_sequence(rng, int(rng.integers(1, 201)))
        for strategy in ("peephole", "frame"):
            schedule = compile_pulses(seq, strategy)
            ok &= len(schedule) <= len(seq) and schedule.kick_count <= seq.kick_count
            ok &= all(
                p.frequency == abs(2 * p.pair_index + 1)
                for p in schedule
                if isinstance(p, ResonantPair)
            )
            rebuilt = expand_pulses(schedule)
            for probe in probes:
                worst = max(
                    worst, distance(apply_sequence(probe, seq), apply_sequence(probe, rebuilt))
                )
    return CheckResult("pulse_compilation", trials, ok and worst <= 1e-10, worst, 1e-10)


CHECKS: tuple[tuple[str, CheckFn], ...] = (
    ("swap_range_oracle", check_swap_range_oracle),
    ("staircase_exactness", check_staircase_exactness),
    ("transfer_bound", check_transfer_bound),
    ("unitarity", check_unitarity),
    ("inverse_round_trip", check_inverse_round_trip),
    ("density_witness", check_density_witness),
    ("paired_exchanges", check_paired_exchanges),
    ("zyz_reconstruction", check_zyz_reconstruction),
    ("pulse_compilation", check_pulse_compilation),
)


def _run_check(job: tuple[int, np.random.SeedSequence, bool]) -> CheckResult:
    index, child, quick = job
    return CHECKS[index][1](np.random.default_rng(child), quick)


def run_checks(
    seed: int,
    *,
    quick: bool = False,
    workers: int = 1,
    only: tuple[str, ...] | None = None,
) -> list[CheckResult]:
    children = np.random.SeedSequence(seed).spawn(len(CHECKS))
    jobs = [
        (i, children[i], quick) for i, (name, _fn) in enumerate(CHECKS) if not only or name in only
    ]
    if workers <= 1:
        return [_run_check(job) for job in jobs]
    # map() yields in submission order
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_check, jobs))
