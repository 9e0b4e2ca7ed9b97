import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.control.errors import (
    BudgetExceeded,
    DegenerateInput,
    EpsilonOutOfRange,
    InvalidOperation,
    NotFound,
    NotNormalized,
)
from src.control.group import (
    PI,
    ControlSequence,
    Pair,
    SwapRange,
    expand_derived,
    expand_word,
    invert_sequence,
)
from src.control.sampling import geometric_state, orthogonal_partner, random_state
from src.control.state_space import (
    SparseState,
    apply_sequence,
    basis_state,
    empty_state,
    fidelity,
    inner,
    normalize,
)
from src.control.synthesis import (
    WITNESS_TOL,
    choose_window,
    density_witness,
    paired_exchanges,
    place_rotation,
    placement_order,
    plan_staircase,
    synthesize_from_e0,
    synthesize_transfer,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
SQRT_HALF = 1 / math.sqrt(2)


# ---------------- place_rotation ----------------


def test_place_rotation_zero_target_is_identity():
    v = place_rotation(1.0, 0.0)
    assert v.apply(1.0, 0.0) == (1.0, 0.0)


def test_place_rotation_full_transfer_is_pi():
    assert place_rotation(1.0, 1.0) == PI


def test_place_rotation_half():
    v = place_rotation(1.0, SQRT_HALF)
    x_prime, placed = v.apply(1.0, 0.0)
    assert x_prime == pytest.approx(SQRT_HALF, abs=1e-15)
    assert placed == pytest.approx(SQRT_HALF, abs=1e-15)


def test_place_rotation_complex_staging():
    x, target = 0.8 * np.exp(0.7j), 0.6j
    x_prime, placed = place_rotation(x, target).apply(x, 0.0)
    assert abs(placed - target) <= 1e-15
    assert x_prime.imag == pytest.approx(0.0, abs=1e-15)
    assert x_prime.real == pytest.approx(math.sqrt(0.64 - 0.36))


def test_place_rotation_budget():
    with pytest.raises(BudgetExceeded):
        place_rotation(0.5, 0.6)


# ---------------- staircase ----------------


def test_placement_order_fills_staging_slot_last():
    assert placement_order(2) == [-2, -1, 2, 1]
    assert placement_order(0) == [1]


def test_synthesize_e0_is_empty():
    assert synthesize_from_e0(basis_state(0)) == ControlSequence()


def test_synthesize_e5():
    seq = synthesize_from_e0(basis_state(5))
    assert seq == ControlSequence((Pair(PI),)) + expand_derived(SwapRange(1, 4))
    assert apply_sequence(basis_state(0), seq) == basis_state(5)


def test_synthesize_negative_basis_state():
    seq = synthesize_from_e0(basis_state(-3))
    assert fidelity(basis_state(-3), apply_sequence(basis_state(0), seq)) == pytest.approx(1.0)


def test_synthesize_equal_superposition():
    target = SparseState({0: SQRT_HALF, 1: SQRT_HALF})
    seq = synthesize_from_e0(target)
    assert len(seq) == 1 and seq.pair_count == 1
    assert seq[0].u.apply(1.0, 0.0) == pytest.approx((SQRT_HALF, SQRT_HALF))
    assert fidelity(target, apply_sequence(basis_state(0), seq)) >= 1 - 1e-12


def test_staircase_ends_with_diagonal_phase():
    target = normalize(SparseState({-1: 1, 0: 1j, 1: -1}))
    steps = plan_staircase(target)
    assert [s.destination for s in steps] == [-1, 1, 0]
    assert len(steps) == 2 * 1 + 1
    assert steps[-1].rotation.permutation() is None and steps[-1].swap is None
    assert steps[-1].rotation.m00 == pytest.approx(1j) and steps[-1].rotation.m11 == 1
    assert [s.residual for s in steps] == sorted((s.residual for s in steps), reverse=True)
    reached = apply_sequence(basis_state(0), synthesize_from_e0(target))
    assert max(abs(reached[k] - target[k]) for k in (-1, 0, 1)) <= 1e-12


def test_staircase_residual_law():
    rng = np.random.default_rng(5)
    target = random_state(rng, 5)
    placed = 0.0
    for step in plan_staircase(target):
        if step.destination:
            placed += abs(target[step.destination]) ** 2
        assert step.residual**2 == pytest.approx(1 - placed, abs=1e-12)


def test_synthesize_requires_normalized_input():
    with pytest.raises(NotNormalized):
        synthesize_from_e0(SparseState({0: 0.5, 1: 0.5}))
    with pytest.raises(DegenerateInput):
        synthesize_from_e0(empty_state())


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=8))
def test_staircase_exactness(seed, half_width):
    rng = np.random.default_rng(seed)
    target = random_state(rng, half_width, density=rng.uniform(0.2, 1.0))
    steps = plan_staircase(target)
    assert len(steps) <= 2 * half_width + 1
    reached = apply_sequence(basis_state(0), synthesize_from_e0(target))
    assert fidelity(target, reached) >= 1 - 1e-10


# ---------------- transfer ----------------


def test_transfer_between_basis_states_is_exact():
    plan = synthesize_transfer(basis_state(0), basis_state(3), 0.1)
    assert plan.alpha == 1.0 and plan.beta == 1.0
    assert plan.simulate_distance(basis_state(0), basis_state(3)) <= 1e-12


def test_transfer_identical_states():
    plan = synthesize_transfer(basis_state(0), basis_state(0), 0.1)
    assert plan.certified_bound <= 0.3
    assert plan.simulate_distance(basis_state(0), basis_state(0)) <= 1e-12


def _two_sided_geometric(span=40):
    return normalize(SparseState({k: 2.0 ** -abs(k) for k in range(-span, span + 1)}))


def test_transfer_geometric_within_three_epsilon():
    a = _two_sided_geometric()
    b = SparseState({k + 2: v for k, v in a.entries.items()})
    plan = synthesize_transfer(a, b, 0.01)
    distance = plan.simulate_distance(a, b)
    assert distance <= plan.certified_bound <= 0.03


def test_transfer_same_state_within_two_epsilon():
    a = _two_sided_geometric()
    plan = synthesize_transfer(a, a, 0.01)
    assert plan.simulate_distance(a, a) <= 0.02


def test_choose_window_tails_within_epsilon():
    a = _two_sided_geometric()
    n, alpha, beta = choose_window(a, a, 0.01)
    assert alpha == beta and alpha > 0.99
    assert math.sqrt(max(0.0, 1 - alpha**2)) <= 0.01
    _, smaller, _ = choose_window(a, a, 0.1)
    assert smaller <= alpha


@pytest.mark.parametrize("epsilon", [0.0, 1 / 3, 0.5, -0.1])
def test_transfer_rejects_epsilon(epsilon):
    with pytest.raises(EpsilonOutOfRange):
        synthesize_transfer(basis_state(0), basis_state(1), epsilon)


def test_transfer_rejects_unnormalized():
    with pytest.raises(NotNormalized):
        synthesize_transfer(SparseState({0: 2}), basis_state(1), 0.1)


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from([0.3, 0.1, 0.03, 0.01]))
def test_transfer_certified_bound(seed, epsilon):
    rng = np.random.default_rng(seed)
    a = geometric_state(rng, float(rng.uniform(0.3, 0.8)), span=30)
    b = geometric_state(rng, float(rng.uniform(0.3, 0.8)), span=30)
    plan = synthesize_transfer(a, b, epsilon)
    assert plan.simulate_distance(a, b) <= plan.certified_bound <= 3 * epsilon


# ---------------- density witnesses ----------------


def test_witness_basis_target():
    found = density_witness(basis_state(2), basis_state(0))
    assert found.factors == (SwapRange(0, 2),)
    assert found.overlap == 1


def test_witness_already_overlapping():
    a = SparseState({0: SQRT_HALF, 1: SQRT_HALF})
    found = density_witness(a, basis_state(0))
    assert found.factors == () and len(found.sequence) == 0
    assert found.overlap == pytest.approx(SQRT_HALF)


def test_witness_basis_branch_reads_coefficient():
    a = SparseState({-3: 0.6, 4: 0.8j})
    found = density_witness(a, basis_state(1))
    assert found.factors == (SwapRange(1, 3),)
    assert found.overlap == 0.8j


def test_witness_orthogonal_pair():
    a = SparseState({0: SQRT_HALF, 1: SQRT_HALF})
    b = SparseState({0: SQRT_HALF, 1: -SQRT_HALF})
    found = density_witness(a, b)
    assert 1 <= len(found.factors) <= 3
    assert abs(inner(b, apply_sequence(a, found.sequence))) > WITNESS_TOL
    assert found.overlap == inner(b, apply_sequence(a, expand_word(found.factors)))


def test_witness_errors():
    with pytest.raises(DegenerateInput):
        density_witness(empty_state(), basis_state(0))
    with pytest.raises(InvalidOperation):
        density_witness(basis_state(0), basis_state(0), max_depth=0)


def test_witness_not_found_reports_depth(monkeypatch):
    a = SparseState({0: SQRT_HALF, 1: SQRT_HALF})
    b = SparseState({0: SQRT_HALF, 1: -SQRT_HALF})
    # with an unreachable threshold no word qualifies
    monkeypatch.setattr("src.control.synthesis.WITNESS_TOL", 10.0)
    with pytest.raises(NotFound):
        density_witness(a, b, max_depth=1)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_witness_for_orthogonal_pairs(seed):
    rng = np.random.default_rng(seed)
    a = random_state(rng, 4, density=rng.uniform(0.2, 1.0))
    b = orthogonal_partner(rng, a, 4)
    found = density_witness(a, b, max_depth=3)
    assert len(found.factors) <= 3
    assert abs(inner(b, apply_sequence(a, found.sequence))) > WITNESS_TOL


def test_paired_exchange_identity(rng):
    a, b = random_state(rng, 4), random_state(rng, 4)
    k, l, m, n = -2, 1, 3, 0
    g, g_prime = paired_exchanges(k, l, m, n)
    lhs = inner(b, apply_sequence(a, expand_word(g))) - inner(
        b, apply_sequence(a, expand_word(g_prime))
    )
    rhs = (b[m] - b[n]).conjugate() * (a[k] - a[l]) + (b[k] - b[l]).conjugate() * (a[m] - a[n])
    assert abs(lhs - rhs) <= 1e-13


def test_paired_exchanges_need_distinct_indices():
    with pytest.raises(InvalidOperation):
        paired_exchanges(0, 1, 1, 2)


def test_staging_slot_is_empty_before_each_step(rng):
    target = random_state(rng, 4)
    state = basis_state(0)
    for step in plan_staircase(target):
        if step.destination:
            assert abs(state[1]) <= 1e-13
        state = apply_sequence(state, step.sequence())
    assert fidelity(target, state) >= 1 - 1e-12


def test_transfer_passes_through_pivot(rng):
    a = geometric_state(rng, 0.5, span=20)
    b = geometric_state(rng, 0.7, span=20)
    plan = synthesize_transfer(a, b, 0.03)
    window = SparseState({k: v for k, v in a.entries.items() if abs(k) <= plan.N})
    first_half = invert_sequence(synthesize_from_e0(normalize(window)))
    pivot = apply_sequence(window, first_half)
    assert abs(pivot[0]) == pytest.approx(plan.alpha, abs=1e-10)
    assert plan.sequence[: len(first_half)] == first_half.ops
