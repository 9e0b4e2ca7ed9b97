import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.control.errors import DegenerateInput
from src.control.group import (
    PI,
    SHIFT_DOWN,
    SHIFT_UP,
    ControlSequence,
    Pair,
    SwapRange,
    expand_derived,
)
from src.control.sampling import geometric_state, random_sequence, random_state, random_unitary
from src.control.state_space import (
    SparseState,
    apply_op,
    apply_sequence,
    basis_state,
    distance,
    empty_state,
    inner,
    norm,
    normalize,
    scale,
    tail_norm,
    truncate,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_basis_states():
    assert dict(basis_state(0).entries) == {0: 1}
    assert dict(basis_state(-3).entries) == {-3: 1}
    assert norm(basis_state(7)) == 1.0


def test_tiny_amplitudes_are_pruned():
    s = SparseState({0: 1e-16, 1: 0.5})
    assert s.support == frozenset({1})
    assert s[0] == 0j
    assert s[42] == 0j


def test_states_are_values():
    a = SparseState({1: 0.6, -2: 0.8j})
    b = SparseState({-2: 0.8j, 1: 0.6})
    assert a == b
    assert hash(a) == hash(b)
    assert [k for k, _ in a] == [-2, 1]


def test_inner_orthonormal_basis():
    assert inner(basis_state(0), basis_state(0)) == 1
    assert inner(basis_state(0), basis_state(1)) == 0


def test_inner_is_conjugate_linear_in_first_argument():
    a = SparseState({0: 0.6, 2: 0.8j})
    b = SparseState({0: 1j, 2: 0.5})
    assert inner(scale(a, 1j), b) == pytest.approx(-1j * inner(a, b))
    assert inner(a, scale(b, 1j)) == pytest.approx(1j * inner(a, b))


def test_norm_examples():
    assert norm(basis_state(5)) == 1.0
    assert norm(SparseState({0: 3 / 5, 2: 0.8j})) == pytest.approx(1.0, abs=1e-15)
    assert norm(empty_state()) == 0.0


def test_truncate_examples():
    window, alpha = truncate(basis_state(0), 0)
    assert window == basis_state(0) and alpha == 1.0

    a = SparseState({-2: 0.6, 0: 0.8})
    window, alpha = truncate(a, 1)
    assert dict(window.entries) == {0: 0.8}
    assert alpha == pytest.approx(0.8)
    assert tail_norm(a, 1) == pytest.approx(0.6)


def test_truncate_minimal_window_on_geometric_state():
    entries = {k: 2.0 ** -abs(k) for k in range(-40, 41)}
    total = math.sqrt(sum(v * v for v in entries.values()))
    a = SparseState({k: v / total for k, v in entries.items()})

    # direct summation oracle
    expected = next(
        n for n in range(41)
        if math.sqrt(sum((v / total) ** 2 for k, v in entries.items() if abs(k) <= n)) > 0.99
    )
    chosen = next(n for n in range(41) if truncate(a, n)[1] > 0.99)
    assert chosen == expected
    assert truncate(a, chosen - 1)[1] <= 0.99


def test_truncate_rejects_negative_window():
    with pytest.raises(ValueError):
        truncate(basis_state(0), -1)


def test_normalize_zero_state():
    with pytest.raises(DegenerateInput):
        normalize(empty_state())


def test_apply_op_examples():
    assert apply_op(basis_state(4), SHIFT_UP) == basis_state(5)
    assert apply_op(basis_state(4), SHIFT_DOWN) == basis_state(3)
    assert apply_op(basis_state(0), Pair(PI)) == basis_state(1)
    u = random_unitary(np.random.default_rng(7))
    assert apply_op(basis_state(5), Pair(u)) == basis_state(5)


def test_apply_sequence_examples():
    assert apply_sequence(basis_state(0), ControlSequence((SHIFT_UP, SHIFT_UP))) == basis_state(2)
    assert apply_sequence(basis_state(0), ControlSequence((SHIFT_UP, SHIFT_DOWN))) == basis_state(0)
    assert apply_sequence(basis_state(3), ControlSequence()) == basis_state(3)


@pytest.mark.parametrize("k,l", [(0, 1), (0, 2), (-3, 5), (2, 4), (-6, 12)])
def test_swap_range_exchanges_two_coefficients(k, l):
    a = SparseState({k: 0.6, k + l: 0.8j, k + 1 if l > 1 else k - 1: 0.1})
    out = apply_sequence(a, expand_derived(SwapRange(k, l)))
    assert out[k] == a[k + l]
    assert out[k + l] == a[k]
    assert inner(basis_state(k), out) == a[k + l]
    others = a.support - {k, k + l}
    assert all(out[j] == a[j] for j in others)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_lazy_frame_matches_step_by_step(seed):
    rng = np.random.default_rng(seed)
    a = random_state(rng, 3)
    seq = random_sequence(rng, 60)
    folded = a
    for op in seq:
        folded = apply_op(folded, op)
    assert distance(folded, apply_sequence(a, seq)) <= 1e-13


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=10_000))
def test_norm_preserved(seed, length):
    rng = np.random.default_rng(seed)
    a = random_state(rng, 4)
    out = apply_sequence(a, random_sequence(rng, length))
    assert abs(norm(out) - norm(a)) <= 1e-12 * max(1.0, length / 10_000)


def test_geometric_state_is_normalized(rng):
    a = geometric_state(rng, 0.5, span=10)
    assert a.is_normalized()
    assert max(a.support) == 10 and min(a.support) == -10


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_inner_and_norm_agree(seed):
    a = random_state(np.random.default_rng(seed), 6)
    scaled = scale(a, 3.0)
    for s in (a, scaled):
        value = inner(s, s)
        assert abs(value.imag) <= 1e-14 * max(1.0, norm(s) ** 2)
        assert abs(norm(s) ** 2 - value.real) <= 1e-14 * max(1.0, norm(s) ** 2)
